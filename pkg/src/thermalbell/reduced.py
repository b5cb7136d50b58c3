"""Two-qubit reduced states and generic density-matrix utilities.

Qubit ordering follows the product basis ``|00>, |01>, |10>, |11>`` with
``sigma_z |0> = +|0>``, so ``|00>`` carries magnetization ``+1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentStateError, ParameterError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

PROB_TOL = 1e-9
TRACE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class XStateElements:
    """Populations ``v_plus``, ``v_minus``, ``w`` and coherence ``y``.

    The state is ``diag(v+, w, w, v-)`` with ``y`` linking ``|01>`` and ``|10>``.
    """

    v_plus: float
    v_minus: float
    w: float
    y: float

    def validate(self) -> "XStateElements":
        total = self.v_plus + self.v_minus + 2 * self.w
        if abs(total - 1.0) > TRACE_TOL:
            raise InconsistentStateError(f"trace {total!r} != 1")
        for name in ("v_plus", "v_minus", "w"):
            if getattr(self, name) < -PROB_TOL:
                raise InconsistentStateError(f"{name}={getattr(self, name)!r} is negative")
        if self.w < abs(self.y) - PROB_TOL:
            raise InconsistentStateError(f"w={self.w!r} < |y|={abs(self.y)!r}")
        return self

    def eigenvalues(self) -> np.ndarray:
        """Spectrum ``{v+, v-, w + y, w - y}`` read off the block structure."""
        return np.array([self.v_plus, self.v_minus, self.w + self.y, self.w - self.y])


def x_state_from_expectations(n_qubits, mean_sz, mean_sz_squared, mean_transverse):
    """Reduced pair state of a permutation-symmetric ``N``-qubit state."""
    n = n_qubits
    if n < 2:
        raise ParameterError(f"n_qubits must be >= 2, got {n}")
    denom = 4.0 * n * (n - 1)
    base = n * n - 2 * n + 4 * mean_sz_squared
    shift = 4 * mean_sz * (n - 1)
    x = XStateElements(
        v_plus=(base + shift) / denom,
        v_minus=(base - shift) / denom,
        w=(n * n - 4 * mean_sz_squared) / denom,
        y=(2 * mean_transverse - n) / (2.0 * n * (n - 1)),
    )
    return x.validate()


def x_state_from_table(table, beta: float) -> XStateElements:
    """Same state as :func:`x_state_from_expectations`, without its cancellation.

    The populations are thermal averages of the per-level pair probabilities
    ``n_up (n_up - 1)``, ``n_down (n_down - 1)`` and ``n_up n_down`` over
    ``N (N - 1)``, all non-negative.  Summing those directly keeps tiny
    populations accurate to relative precision, which the concurrence needs
    because it takes ``sqrt(v+ v-)``.
    """
    from .collective import boltzmann_weights

    n = table.n_qubits
    weights = boltzmann_weights(table, beta)
    norm = math.fsum(weights) * n * (n - 1)
    m = table._mz
    up, down = n / 2 + m, n / 2 - m
    s = table._spin

    def avg(values):
        return math.fsum(weights * values) / norm

    x = XStateElements(
        v_plus=avg(up * (up - 1)),
        v_minus=avg(down * (down - 1)),
        w=avg(up * down),
        y=avg(s * (s + 1) - m * m - n / 2),
    )
    return x.validate()


def to_density_matrix(x: XStateElements) -> np.ndarray:
    rho = np.diag([x.v_plus, x.w, x.w, x.v_minus]).astype(complex)
    rho[1, 2] = rho[2, 1] = x.y
    return rho


def check_density_matrix(rho, *, tol=HERMITIAN_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return ``rho`` as an array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ParameterError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InconsistentStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InconsistentStateError(f"trace {np.trace(rho).real!r} != 1")
    if np.linalg.eigvalsh(rho).min() < -CLAMP_TOL:
        raise InconsistentStateError("density matrix has a negative eigenvalue")
    return rho


def correlation_matrix(rho) -> np.ndarray:
    """``t[n, m] = tr(rho sigma_n (x) sigma_m)`` as a real 3x3 array."""
    rho = np.asarray(rho, dtype=complex)
    t = np.empty((3, 3))
    for a, sa in enumerate(PAULIS):
        for b, sb in enumerate(PAULIS):
            t[a, b] = np.trace(rho @ np.kron(sa, sb)).real
    return t


def x_state_correlation_matrix(x: XStateElements) -> np.ndarray:
    return np.diag([2 * x.y, 2 * x.y, 1 - 4 * x.w])


def entropy_from_eigenvalues(eigenvalues) -> float:
    """Shannon entropy in bits of a spectrum, ``0 log 0 = 0``.

    Values in ``[-1e-9, 0)`` are treated as zero; anything more negative raises.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.min(initial=0.0) < -CLAMP_TOL:
        raise InconsistentStateError(f"negative eigenvalue {lam.min()!r}")
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho) -> float:
    """``-tr(rho log2 rho)`` for any small density matrix."""
    rho = np.asarray(rho, dtype=complex)
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho))


def single_qubit_reduction(rho, keep: int = 0) -> np.ndarray:
    """Trace a two-qubit state down to qubit ``keep`` (0 = first, 1 = second)."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ajbj->ab", r)
    if keep == 1:
        return np.einsum("jajb->ab", r)
    raise ParameterError(f"keep must be 0 or 1, got {keep}")
