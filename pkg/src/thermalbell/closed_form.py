"""Analytic two-qubit expressions, used as oracles for the general-N pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError, RangeError

MAX_EXPONENT = 700.0


def _scaled_hyperbolics(J, delta, beta, B):
    """Return ``cosh(bB) e^{-b D J}``, ``cosh(bJ)``, ``sinh(b|J|)``, ``e^{-b D J}``.

    All four are divided by ``e^L`` with ``L`` the largest exponent involved,
    which leaves every ratio used below unchanged but keeps each term <= 1.
    """
    if not (math.isfinite(beta) and beta > 0):
        raise ParameterError(f"beta must be positive and finite, got {beta!r}")
    largest = beta * max(abs(J), abs(B), abs(delta * J))
    if not largest <= MAX_EXPONENT:
        raise RangeError(f"beta*|J|, beta*|B| or beta*|Delta J| exceeds {MAX_EXPONENT}")
    exps = (beta * (B - delta * J), beta * (-B - delta * J), beta * abs(J), -beta * abs(J))
    lead = max(exps)
    e_bp, e_bm, e_jp, e_jm = (math.exp(e - lead) for e in exps)
    a = 0.5 * (e_bp + e_bm)
    c = 0.5 * (e_jp + e_jm)
    s = 0.5 * (e_jp - e_jm)
    return a, c, s, math.exp(-beta * delta * J - lead)


def m_closed(J: float, delta: float, beta: float, B: float) -> float:
    """Two-qubit CHSH violation measure in closed form."""
    a, c, s, _ = _scaled_hyperbolics(J, delta, beta, B)
    diff2 = (a - c) ** 2
    return (2 * s * s + diff2 - min(s * s, diff2)) / (a + c) ** 2 - 1.0


def c_closed(J: float, delta: float, beta: float, B: float) -> float:
    """Two-qubit concurrence in closed form."""
    a, c, s, e_d = _scaled_hyperbolics(J, delta, beta, B)
    return max(0.0, s - e_d) / (a + c)


@dataclass
class SymmetryReport:
    """Worst-case deviations for each symmetry identity."""

    tolerance: float
    n2_sign_flip: float = 0.0
    n2_field_flip: float = 0.0
    general_field_flip: float = 0.0
    # (J, Delta) -> (-J, -Delta) beyond N = 2 is reported, not asserted
    general_sign_flip: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        worst = max(self.n2_sign_flip, self.n2_field_flip, self.general_field_flip)
        return worst <= self.tolerance


def symmetry_suite(J, delta, beta, B, *, max_n=8, tol=1e-12, report=None):
    """Check the sign-flip and field-flip identities at one parameter point.

    The two-qubit identities use the closed forms.  The ``B -> -B`` identity
    is also run through the general pipeline for ``2 <= N <= max_n``; the
    ``(J, Delta) -> (-J, -Delta)`` identity for ``N >= 3`` is only recorded.
    Pass an existing ``report`` to accumulate worst cases over many points.
    """
    from .collective import ModelParams
    from .sweep import evaluate_point

    if report is None:
        report = SymmetryReport(tolerance=tol)
    m0, c0 = m_closed(J, delta, beta, B), c_closed(J, delta, beta, B)
    report.n2_sign_flip = max(
        report.n2_sign_flip,
        abs(m0 - m_closed(-J, -delta, beta, B)),
        abs(c0 - c_closed(-J, -delta, beta, B)),
    )
    report.n2_field_flip = max(
        report.n2_field_flip,
        abs(m0 - m_closed(J, delta, beta, -B)),
        abs(c0 - c_closed(J, delta, beta, -B)),
    )
    for n in range(2, max_n + 1):
        base = evaluate_point(ModelParams(n, J, delta, B, beta))
        flipped = evaluate_point(ModelParams(n, J, delta, -B, beta))
        report.general_field_flip = max(
            report.general_field_flip,
            abs(base.violation_m - flipped.violation_m),
            abs(base.concurrence - flipped.concurrence),
            abs(base.disorder_d - flipped.disorder_d),
        )
        sign = evaluate_point(ModelParams(n, -J, -delta, B, beta))
        dev = max(abs(base.violation_m - sign.violation_m), abs(base.concurrence - sign.concurrence))
        report.general_sign_flip[n] = max(report.general_sign_flip.get(n, 0.0), dev)
    return report
