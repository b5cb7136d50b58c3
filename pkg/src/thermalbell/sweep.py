"""Parameter sweeps, threshold location and the cavity-QED mapping."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .collective import ModelParams, build_sector_table
from .errors import DegenerateModelError, ParameterError
from .reduced import XStateElements, x_state_from_table
from .witnesses import WitnessReport, witness_report

AXES = ("temperature", "field", "lambda_over_t")
QUANTITIES = ("M", "C", "D", "chsh_max")
MIN_TEMPERATURE = 1e-3
PREGRID_POINTS = 64
THREADS_ENV = "THERMAL_BELL_THREADS"


def reduced_pair_state(params: ModelParams) -> XStateElements:
    return x_state_from_table(build_sector_table(params), params.inverse_temperature)


def evaluate_point(params: ModelParams) -> WitnessReport:
    """Witnesses of the two-qubit reduced Gibbs state at one parameter point."""
    return witness_report(reduced_pair_state(params))


def quantity_value(report: WitnessReport, quantity: str) -> float:
    try:
        attr = {"M": "violation_m", "C": "concurrence", "D": "disorder_d", "chsh_max": "chsh_max"}[quantity]
    except KeyError:
        raise ParameterError(f"unknown quantity {quantity!r}") from None
    return getattr(report, attr)


def _check_axis(axis):
    if axis not in AXES:
        raise ParameterError(f"axis must be one of {AXES}, got {axis!r}")


def params_at(base: ModelParams, axis: str, value: float) -> ModelParams:
    """Place ``value`` on ``axis``, keeping every other field of ``base``.

    For ``lambda_over_t`` the coupling of ``base`` plays the role of
    ``lambda`` and the field is tied to it (``Delta = 0``, ``B = J``);
    ``value`` is ``|lambda| / T`` so that ``beta = value / |lambda|``.
    """
    _check_axis(axis)
    if axis == "temperature":
        if not value >= MIN_TEMPERATURE:
            raise ParameterError(f"temperature {value!r} below minimum {MIN_TEMPERATURE}")
        return replace(base, inverse_temperature=1.0 / value)
    if axis == "field":
        return replace(base, field=value)
    lam = base.coupling
    if lam == 0:
        raise DegenerateModelError("lambda = 0 gives a trivial Hamiltonian")
    if not value > 0:
        raise ParameterError(f"lambda/T must be positive, got {value!r}")
    return replace(base, anisotropy=0.0, field=lam, inverse_temperature=value / abs(lam))


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional sweep.

    ``fixed`` supplies every model parameter; the swept one is overwritten
    point by point (its value in ``fixed`` is ignored).
    """

    axis: str
    grid: tuple
    fixed: ModelParams
    quantities: tuple = ("M", "C", "D")

    def __post_init__(self):
        _check_axis(self.axis)
        grid = tuple(float(g) for g in self.grid)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "quantities", tuple(self.quantities))
        if not grid:
            raise ParameterError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterError("sweep grid must be strictly increasing")
        if self.axis == "temperature" and grid[0] < MIN_TEMPERATURE:
            raise ParameterError(f"temperatures must be >= {MIN_TEMPERATURE}")
        for q in self.quantities:
            if q not in QUANTITIES:
                raise ParameterError(f"unknown quantity {q!r}")


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[tuple[float, WitnessReport]]:
    """Evaluate every grid point; rows come back in grid order."""
    points = [params_at(spec.fixed, spec.axis, v) for v in spec.grid]
    threads = thread_count() if threads is None else threads
    if threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(evaluate_point, points))
    else:
        reports = [evaluate_point(p) for p in points]
    return list(zip(spec.grid, reports))


@dataclass(frozen=True)
class ThresholdQuery:
    quantity: str
    axis: str
    bracket: tuple
    fixed: ModelParams
    tolerance: float = 1e-6
    floor: float = 0.0

    def __post_init__(self):
        _check_axis(self.axis)
        if not (math.isfinite(self.floor) and self.floor >= 0):
            raise ParameterError("floor must be a non-negative number")
        if self.quantity not in ("M", "C", "D"):
            raise ParameterError(f"threshold quantity must be M, C or D, got {self.quantity!r}")
        lo, hi = self.bracket
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ParameterError(f"invalid bracket {self.bracket!r}")
        if not self.tolerance > 0:
            raise ParameterError("tolerance must be positive")
        if self.axis == "temperature" and lo < MIN_TEMPERATURE:
            raise ParameterError(f"temperature bracket must start at >= {MIN_TEMPERATURE}")
        if self.axis == "lambda_over_t" and lo <= 0:
            raise ParameterError("lambda/T bracket must be positive")


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of a threshold search; ``value`` is ``None`` when nothing crosses."""

    quantity: str
    axis: str
    value: float | None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.value is not None


def find_threshold(query: ThresholdQuery) -> ThresholdResult:
    """Largest axis value in the bracket where the quantity stops being positive.

    A 64-point scan picks the last cell whose left end is positive and whose
    right end is not; bisection then narrows that cell to ``tolerance``.
    Curves with several dips therefore report their final crossing.

    "Positive" means above ``query.floor``.  The default of zero is exact for
    curves that vanish identically past their threshold; curves that only
    decay exponentially (the concurrence against field at low temperature)
    need a resolution floor well above round-off to give a meaningful value.
    """
    lo, hi = query.bracket

    def f(x):
        return quantity_value(evaluate_point(params_at(query.fixed, query.axis, x)), query.quantity)

    floor = query.floor
    xs = np.linspace(lo, hi, PREGRID_POINTS)
    positive = [f(x) > floor for x in xs]
    cell = None
    for i in range(len(xs) - 2, -1, -1):
        if positive[i] and not positive[i + 1]:
            cell = i
            break
    if cell is None:
        if all(positive):
            reason = "quantity positive across the whole bracket"
        elif not any(positive):
            reason = "quantity never positive in the bracket"
        else:
            reason = "quantity still positive at the upper end of the bracket"
        return ThresholdResult(query.quantity, query.axis, None, reason)
    a, b = float(xs[cell]), float(xs[cell + 1])
    while b - a >= query.tolerance:
        mid = 0.5 * (a + b)
        if f(mid) > floor:
            a = mid
        else:
            b = mid
    return ThresholdResult(query.quantity, query.axis, 0.5 * (a + b))


@dataclass(frozen=True)
class CavityParams:
    """Dispersive cavity coupling ``lambda = g^2 / delta`` (or ``lambda`` directly)."""

    coupling_g: float | None = None
    detuning_delta: float | None = None
    lam: float | None = None

    def __post_init__(self):
        if self.lam is None:
            if self.coupling_g is None or self.detuning_delta is None:
                raise ParameterError("give either lam or both coupling_g and detuning_delta")
            if self.detuning_delta == 0:
                raise ParameterError("detuning must be nonzero")
            object.__setattr__(self, "lam", self.coupling_g ** 2 / self.detuning_delta)
        if self.lam == 0:
            raise DegenerateModelError("lambda = 0 gives a trivial Hamiltonian")


def cavity_params(cp: CavityParams, n_qubits: int, lambda_over_t: float) -> ModelParams:
    """``lambda (Sx^2 + Sy^2 + Sz)`` as the Heisenberg model with ``Delta = 0``, ``J = B = lambda``."""
    base = ModelParams(n_qubits, cp.lam, 0.0, cp.lam, 1.0)
    return params_at(base, "lambda_over_t", lambda_over_t)


def cavity_sweep(cp: CavityParams, n_qubits: int, grid, threads=None):
    spec = SweepSpec(
        axis="lambda_over_t",
        grid=tuple(grid),
        fixed=ModelParams(n_qubits, cp.lam, 0.0, cp.lam, 1.0),
    )
    return run_sweep(spec, threads)
