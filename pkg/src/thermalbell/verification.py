"""Cross-checks between the collective-spin pipeline and independent routes.

Each suite returns a :class:`SuiteResult`; the CLI ``verify`` command and
the acceptance tests both drive these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import SymmetryReport, symmetry_suite
from .collective import ModelParams
from .collective import build_sector_table, expectation_sz_moments, expectation_transverse
from .oracle import build_full_hamiltonian, partial_trace_to_pair, spin_squared, thermal_state
from .reduced import to_density_matrix
from .sweep import ThresholdQuery, find_threshold, reduced_pair_state
from .witnesses import witness_report, witness_report_generic

ORACLE_TOL = 1e-10
SYMMETRY_TOL = 1e-12
TRIANGLE_TOL_M = 1e-12
TRIANGLE_TOL_C = 1e-10
TRIANGLE_TOL_D = 1e-12
EOF_SLACK = 1e-12
FIELD_FLOOR = 1e-10


@dataclass
class SuiteResult:
    name: str
    passed: bool
    worst: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<22} {status}  worst={self.worst:.3e}"


def random_params(rng, n_qubits, beta_range=(0.1, 30.0)) -> ModelParams:
    return ModelParams(
        n_qubits,
        coupling=rng.uniform(-3.0, 3.0),
        anisotropy=rng.uniform(-2.0, 2.0),
        field=rng.uniform(-3.0, 3.0),
        inverse_temperature=rng.uniform(*beta_range),
    )


def oracle_equivalence(max_n=10, draws=30, seed=0, min_n=2) -> SuiteResult:
    """Full-Hilbert-space oracle against the collective pipeline.

    Asserted at ``1e-10``: spin moments, the reduced matrix entrywise, and
    M, C, D from closed forms against the generic Horodecki, Wootters and
    entropy routes.  The generic concurrence of the oracle matrix itself is
    only recorded: it takes square roots of eigenvalues that the oracle
    resolves to ``~1e-16`` absolute, so its error can reach ``~1e-8``.
    """
    rng = np.random.default_rng(seed)
    worst = dict(moments=0.0, matrix=0.0, m=0.0, c=0.0, d=0.0, oracle_m=0.0, oracle_d=0.0,
                 oracle_c_info=0.0)
    for n in range(min_n, max_n + 1):
        for _ in range(draws):
            p = random_params(rng, n)
            x = reduced_pair_state(p)
            closed = witness_report(x)
            rho_x = to_density_matrix(x)

            h = build_full_hamiltonian(p)
            rho_full = thermal_state(h, p.inverse_temperature)
            rho_o = partial_trace_to_pair(rho_full, 0, 1)
            worst["matrix"] = max(worst["matrix"], float(np.abs(rho_x - rho_o).max()))

            table_moments = _collective_moments(p)
            sz = 0.5 * h.magnetization()
            diag = np.diag(rho_full)
            mean_sz2 = float(diag @ sz ** 2)
            transverse = float(np.sum(rho_full * spin_squared(n))) - mean_sz2
            oracle_moments = (float(diag @ sz), mean_sz2, transverse)
            worst["moments"] = max(
                worst["moments"], max(abs(a - b) for a, b in zip(table_moments, oracle_moments))
            )

            generic = witness_report_generic(rho_x)
            worst["m"] = max(worst["m"], abs(closed.violation_m - generic.violation_m))
            worst["c"] = max(worst["c"], abs(closed.concurrence - generic.concurrence))
            worst["d"] = max(worst["d"], abs(closed.disorder_d - generic.disorder_d))

            on_oracle = witness_report_generic(rho_o)
            worst["oracle_m"] = max(worst["oracle_m"], abs(closed.violation_m - on_oracle.violation_m))
            worst["oracle_d"] = max(worst["oracle_d"], abs(closed.disorder_d - on_oracle.disorder_d))
            worst["oracle_c_info"] = max(worst["oracle_c_info"], abs(closed.concurrence - on_oracle.concurrence))
    asserted = max(v for k, v in worst.items() if k != "oracle_c_info")
    return SuiteResult("oracle-equivalence", asserted <= ORACLE_TOL, asserted, worst)


def _collective_moments(p):
    table = build_sector_table(p)
    mz, mz2 = expectation_sz_moments(table, p.inverse_temperature)
    return mz, mz2, expectation_transverse(table, p.inverse_temperature)


def symmetry(draws=1000, seed=0, max_n=8) -> SuiteResult:
    rng = np.random.default_rng(seed)
    report = SymmetryReport(tolerance=SYMMETRY_TOL)
    for _ in range(draws):
        p = random_params(rng, 2)
        symmetry_suite(p.coupling, p.anisotropy, p.inverse_temperature, p.field,
                       max_n=max_n, report=report)
    worst = max(report.n2_sign_flip, report.n2_field_flip, report.general_field_flip)
    details = dict(
        n2_sign_flip=report.n2_sign_flip,
        n2_field_flip=report.n2_field_flip,
        general_field_flip=report.general_field_flip,
        general_sign_flip_info=dict(report.general_sign_flip),
    )
    return SuiteResult("symmetry", report.passed, worst, details)


def consistency_triangle(max_n=8, draws=30, seed=0) -> SuiteResult:
    """Closed forms against generic routes on the same matrix, plus the witness implications."""
    rng = np.random.default_rng(seed)
    worst = dict(m=0.0, chsh=0.0, c=0.0, d=0.0)
    violations = []
    for n in range(2, max_n + 1):
        for _ in range(draws):
            p = random_params(rng, n)
            x = reduced_pair_state(p)
            closed = witness_report(x)
            generic = witness_report_generic(to_density_matrix(x))
            worst["m"] = max(worst["m"], abs(closed.violation_m - ((generic.chsh_max / 2) ** 2 - 1)))
            worst["chsh"] = max(worst["chsh"], abs(closed.chsh_max - generic.chsh_max))
            worst["c"] = max(worst["c"], abs(closed.concurrence - generic.concurrence))
            worst["d"] = max(worst["d"], abs(closed.disorder_d - generic.disorder_d))
            violations.extend(witness_implication_failures([(p, closed)]))
    passed = (
        worst["m"] <= TRIANGLE_TOL_M
        and worst["chsh"] <= TRIANGLE_TOL_M
        and worst["c"] <= TRIANGLE_TOL_C
        and worst["d"] <= TRIANGLE_TOL_D
        and not violations
    )
    return SuiteResult("consistency-triangle", passed, max(worst.values()),
                       dict(worst, implication_failures=violations))


def witness_implication_failures(points):
    """Points where M > 0 or D > 0 without C > 0, where E_f < D, or out-of-range values."""
    bad = []
    for where, r in points:
        if r.violation_m > 0 and not r.concurrence > 0:
            bad.append((where, "M>0 but C=0"))
        if r.disorder_d > 0 and not r.concurrence > 0:
            bad.append((where, "D>0 but C=0"))
        if r.eof_lower < r.disorder_d - EOF_SLACK:
            bad.append((where, "E_f < D"))
        if not (-1 - 1e-12 <= r.violation_m <= 1 + 1e-12 and -1e-12 <= r.concurrence <= 1 + 1e-12
                and 0 <= r.chsh_max <= 2 * math.sqrt(2) + 1e-12):
            bad.append((where, "out of range"))
    return bad


def threshold(quantity, axis, params, bracket, floor=0.0) -> float | None:
    return find_threshold(ThresholdQuery(quantity, axis, tuple(bracket), params, floor=floor)).value


def violation_threshold(quantity, axis, params, bracket, floor=0.0) -> float:
    """Threshold, with an empty violation region reported as ``0.0``.

    A quantity that is never positive anywhere in the bracket has no region
    to lose; the lower end of its (empty) range is taken as zero.  Any other
    failure to cross is an error.
    """
    res = find_threshold(ThresholdQuery(quantity, axis, tuple(bracket), params, floor=floor))
    if res.found:
        return res.value
    if res.reason == "quantity never positive in the bracket":
        return 0.0
    raise ValueError(f"{quantity} threshold on {axis}: {res.reason}")


def figure_thresholds() -> dict:
    """Threshold temperatures and fields at the parameter points of the figures."""
    t_bracket = (0.01, 5.0)
    out = {}
    for b in (0.0, 1.0, 2.0, 2.5):
        base = ModelParams(2, 1.0, 1.0, b, 1.0)
        out[("T_C", b)] = violation_threshold("C", "temperature", base, t_bracket)
        out[("T_M", b)] = violation_threshold("M", "temperature", base, t_bracket)
    xx = ModelParams(2, -1.0, 0.0, 0.0, 1.0)
    for q in "MCD":
        out[(f"T_{q}", "xx")] = violation_threshold(q, "temperature", xx, t_bracket)
    for n in (2, 3, 6):
        base = ModelParams(n, -1.0, 0.0, 0.0, 20.0)
        out[("B_C", n)] = violation_threshold("C", "field", base, (0.0, 10.0), floor=FIELD_FLOOR)
        out[("B_M", n)] = violation_threshold("M", "field", base, (0.0, 10.0))
    return out


def threshold_ordering() -> SuiteResult:
    th = figure_thresholds()
    checks = {
        "T_C = 2/ln3": abs(th[("T_C", 0.0)] - 2 / math.log(3)) < 1e-4,
        "T_C independent of B": max(abs(th[("T_C", b)] - th[("T_C", 0.0)]) for b in (1.0, 2.0, 2.5)) < 1e-5,
        "T_M < T_C": all(th[("T_M", b)] < th[("T_C", b)] for b in (0.0, 1.0, 2.0)),
        "T_M decreasing in B": th[("T_M", 0.0)] > th[("T_M", 1.0)] > th[("T_M", 2.0)],
        "T_D < T_M < T_C": th[("T_D", "xx")] < th[("T_M", "xx")] < th[("T_C", "xx")],
        "B_M < B_C (N=2)": th[("B_M", 2)] < th[("B_C", 2)],
        "B_C increasing in N": th[("B_C", 2)] < th[("B_C", 3)] < th[("B_C", 6)],
    }
    worst = abs(th[("T_C", 0.0)] - 2 / math.log(3))
    return SuiteResult("threshold-ordering", all(checks.values()), worst,
                       dict(checks=checks, thresholds=th))


def run_all(max_n=8, seed=42, draws=10, symmetry_draws=200):
    return [
        oracle_equivalence(max_n=max_n, draws=draws, seed=seed),
        symmetry(draws=symmetry_draws, seed=seed, max_n=min(max_n, 8)),
        consistency_triangle(max_n=max_n, draws=draws, seed=seed),
        threshold_ordering(),
    ]
