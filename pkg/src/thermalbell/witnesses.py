"""Bell (CHSH), concurrence and entropic-disorder witnesses for two qubits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import NoSettingsError, ParameterError
from .linalg import symmetric_eigendecomposition, symmetric_eigvals_3x3
from .reduced import (
    PAULIS,
    SIGMA_Y,
    XStateElements,
    correlation_matrix,
    single_qubit_reduction,
    von_neumann_entropy,
)

SQRT_CLAMP = 1e-10
WOOTTERS_DPS = 40
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class WitnessReport:
    violation_m: float
    concurrence: float
    disorder_d: float
    chsh_max: float
    u: float
    u_tilde: float
    eof_lower: float


@dataclass(frozen=True)
class OptimalSettings:
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray


def horodecki_violation(t) -> tuple[float, float, float]:
    """Maximal CHSH value ``2 sqrt(u + u~)`` from the correlation matrix.

    ``u >= u~`` are the two largest eigenvalues of ``T T^T``.
    """
    t = np.asarray(t, dtype=float)
    lam = symmetric_eigvals_3x3(t @ t.T)
    u, u_tilde = max(lam[0], 0.0), max(lam[1], 0.0)
    return 2.0 * math.sqrt(u + u_tilde), float(u), float(u_tilde)


def violation_measure_from_x(x: XStateElements) -> float:
    """``M = u + u~ - 1`` for the symmetric X-state, positive iff CHSH is violated.

    When ``4y^2 == (1-4w)^2`` both branches of the ``min`` coincide.
    ``(1-4w)^2 - 1`` is expanded to ``8w(2w - 1)`` so that a nearly polarised
    state keeps its small negative value instead of rounding to zero.
    """
    transverse = 4.0 * x.y * x.y
    longitudinal = (1.0 - 4.0 * x.w) ** 2
    if transverse <= longitudinal:
        return transverse + 8.0 * x.w * (2.0 * x.w - 1.0)
    return 2.0 * transverse - 1.0


def concurrence_from_x(x: XStateElements) -> float:
    return 2.0 * max(0.0, abs(x.y) - math.sqrt(max(x.v_plus * x.v_minus, 0.0)))


def concurrence_wootters(rho) -> float:
    """Wootters concurrence via the spectrum of ``rho (Y x Y) rho* (Y x Y)``.

    The eigenvalues are square-rooted, so a double-precision solver turns
    ``1e-16`` round-off on a vanishing eigenvalue into ``1e-8`` on the result.
    The 4x4 product is therefore formed and diagonalised with
    ``WOOTTERS_DPS`` decimal digits, taking the entries of ``rho`` as exact.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ParameterError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    with mpmath.workdps(WOOTTERS_DPS):
        r = mpmath.matrix([[mpmath.mpc(v.real, v.imag) for v in row] for row in rho])
        yy = mpmath.matrix(_YY.real.tolist())
        flipped = yy * r.conjugate() * yy
        ev = [float(mpmath.re(e)) for e in mpmath.eig(r * flipped, left=False, right=False)]
    if min(ev) < -SQRT_CLAMP:
        raise ParameterError(f"spin-flip product has negative eigenvalue {min(ev)!r}")
    lam = sorted((math.sqrt(max(e, 0.0)) for e in ev), reverse=True)
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def concurrence_pure(psi) -> float:
    """``|<psi| Y x Y |psi*>| = 2 |ad - bc|`` for ``psi = (a, b, c, d)``."""
    a, b, c, d = np.asarray(psi, dtype=complex).reshape(4)
    return float(2.0 * abs(a * d - b * c))


def _plog(p: float) -> float:
    return p * math.log2(p) if p > 0.0 else 0.0


def _plog_drop(v: float, w: float) -> float:
    """``plog(v) - plog(v + w)`` without cancellation when ``w << v``."""
    if v <= 0.0:
        return -_plog(w)
    if w <= 0.0:
        return 0.0
    return -(v * math.log1p(w / v) / math.log(2.0)) - w * math.log2(v + w)


def disorder_measure(x: XStateElements) -> float:
    """``D = S(A) - S(AB)`` in bits, from the X-state populations.

    ``D > 0`` is impossible for separable states.  Each joint population is
    paired with the marginal it feeds so that nearly polarised states do not
    leave round-off of the large entropies behind.
    """
    return (
        _plog_drop(x.v_plus, x.w)
        + _plog_drop(x.v_minus, x.w)
        + (_plog(x.w - x.y) + _plog(x.w + x.y))
    )


def disorder_measure_generic(rho) -> float:
    """``S(A) - S(AB)`` by diagonalising the matrices directly."""
    return von_neumann_entropy(single_qubit_reduction(rho)) - von_neumann_entropy(rho)


def binary_entropy(p: float) -> float:
    return -_plog(p) - _plog(1.0 - p)


def entanglement_of_formation(concurrence: float) -> float:
    c = min(max(concurrence, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def eof_lower_check(x: XStateElements) -> tuple[float, float]:
    """Return ``(E_f, D)``; the disorder measure never exceeds ``E_f``."""
    return entanglement_of_formation(concurrence_from_x(x)), disorder_measure(x)


def optimal_settings(t) -> OptimalSettings:
    """Unit vectors reaching the Horodecki bound ``a.T(b+b') + a'.T(b-b')``.

    With ``T^T T v_i = s_i^2 v_i`` (``s_1 >= s_2``) take
    ``b, b' = cos(th) v_1 +- sin(th) v_2`` with ``tan(th) = s_2 / s_1`` and
    ``a, a'`` along ``T v_1`` and ``T v_2``.
    """
    t = np.asarray(t, dtype=float)
    vals, vecs = symmetric_eigendecomposition(t.T @ t)
    order = np.argsort(vals)[::-1]
    vals, vecs = np.clip(vals[order], 0.0, None), vecs[:, order]
    s1, s2 = math.sqrt(vals[0]), math.sqrt(vals[1])
    if s1 <= 1e-14:
        raise NoSettingsError("correlation matrix vanishes; no Bell violation is possible")
    v1, v2 = vecs[:, 0], vecs[:, 1]
    theta = math.atan2(s2, s1)
    b = math.cos(theta) * v1 + math.sin(theta) * v2
    b_prime = math.cos(theta) * v1 - math.sin(theta) * v2
    a = t @ v1 / s1
    if s2 > 1e-14:
        a_prime = t @ v2 / s2
    else:
        # any unit vector works since b == b'
        a_prime = np.cross(a, v1) if np.linalg.norm(np.cross(a, v1)) > 1e-8 else np.cross(a, v2)
    unit = lambda v: v / np.linalg.norm(v)
    return OptimalSettings(unit(a), unit(a_prime), unit(b), unit(b_prime))


def spin_observable(direction) -> np.ndarray:
    return sum(c * s for c, s in zip(direction, PAULIS))


def chsh_operator(settings: OptimalSettings) -> np.ndarray:
    sa, sap = spin_observable(settings.a), spin_observable(settings.a_prime)
    sb, sbp = spin_observable(settings.b), spin_observable(settings.b_prime)
    return np.kron(sa, sb + sbp) + np.kron(sap, sb - sbp)


def chsh_value(rho, settings: OptimalSettings) -> float:
    return float(np.trace(np.asarray(rho) @ chsh_operator(settings)).real)


def pure_state_relation(psi) -> tuple[float, float]:
    """Return ``(chsh_max, 2 sqrt(1 + C^2))`` computed independently for ``|psi>``."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise ParameterError(f"expected a two-qubit state vector, got shape {psi.shape}")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-10:
        raise ParameterError("state vector is not normalized")
    chsh, _, _ = horodecki_violation(correlation_matrix(np.outer(psi, psi.conj())))
    c = concurrence_pure(psi)
    return chsh, 2.0 * math.sqrt(1.0 + c * c)


def witness_report(x: XStateElements) -> WitnessReport:
    """All witnesses for one symmetric X-state, closed forms throughout."""
    transverse = 4.0 * x.y * x.y
    longitudinal = (1.0 - 4.0 * x.w) ** 2
    u, u_tilde = sorted((transverse, transverse, longitudinal), reverse=True)[:2]
    m = violation_measure_from_x(x)
    c = concurrence_from_x(x)
    return WitnessReport(
        violation_m=m,
        concurrence=c,
        disorder_d=disorder_measure(x),
        chsh_max=2.0 * math.sqrt(u + u_tilde),
        u=u,
        u_tilde=u_tilde,
        eof_lower=entanglement_of_formation(c),
    )


def witness_report_generic(rho) -> WitnessReport:
    """Same report computed from a full 4x4 matrix by the generic routes."""
    chsh, u, u_tilde = horodecki_violation(correlation_matrix(rho))
    c = concurrence_wootters(rho)
    return WitnessReport(
        violation_m=u + u_tilde - 1.0,
        concurrence=c,
        disorder_d=disorder_measure_generic(rho),
        chsh_max=chsh,
        u=u,
        u_tilde=u_tilde,
        eof_lower=entanglement_of_formation(c),
    )
