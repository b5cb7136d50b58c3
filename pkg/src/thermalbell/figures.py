"""Built-in parameter sets for the five reproduced figures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collective import ModelParams
from .errors import ParameterError
from .sweep import SweepSpec, run_sweep

GRID_POINTS = 200
FIELD_RANGE = (0.0, 8.0)
LAMBDA_OVER_T_MAX = 10.0
CAVITY_LAMBDA = 1.0
FIG3_TEMPERATURE = 0.05


def temperature_grid(coupling: float, points: int = GRID_POINTS) -> tuple:
    """Log-spaced from ``1e-3 max(1, |J|)`` to ``5 |J|``."""
    scale = abs(coupling)
    return tuple(np.geomspace(1e-3 * max(1.0, scale), 5.0 * scale, points))


def field_grid(points: int = GRID_POINTS) -> tuple:
    return tuple(np.linspace(*FIELD_RANGE, points))


def lambda_over_t_grid(points: int = GRID_POINTS) -> tuple:
    # lambda/T = 0 is the infinite-temperature limit and is excluded (beta > 0)
    return tuple(np.linspace(LAMBDA_OVER_T_MAX / points, LAMBDA_OVER_T_MAX, points))


@dataclass(frozen=True)
class Curve:
    label: str
    spec: SweepSpec


@dataclass(frozen=True)
class FigurePreset:
    figure_id: int
    axis: str
    curves: tuple
    plotted: tuple
    title: str


def _fmt(v):
    return format(v, "g")


def figure_preset(figure_id: int) -> FigurePreset:
    if figure_id == 1:
        grid = temperature_grid(1.0)
        curves = tuple(
            Curve(f"B={_fmt(b)}", SweepSpec("temperature", grid, ModelParams(2, 1.0, 1.0, b, 1.0)))
            for b in (0.0, 1.0, 2.0, 2.5)
        )
        return FigurePreset(1, "temperature", curves, ("M", "C"), "N=2, J=Delta=1")
    if figure_id == 2:
        grid = temperature_grid(-1.0)
        curves = tuple(
            Curve(f"N={n}", SweepSpec("temperature", grid, ModelParams(n, -1.0, 0.0, 0.0, 1.0)))
            for n in (2, 3, 5)
        )
        return FigurePreset(2, "temperature", curves, ("M", "C"), "J=-1, B=Delta=0")
    if figure_id == 3:
        grid = field_grid()
        beta = 1.0 / FIG3_TEMPERATURE
        curves = tuple(
            Curve(f"N={n}", SweepSpec("field", grid, ModelParams(n, -1.0, 0.0, 0.0, beta)))
            for n in (2, 3, 6)
        )
        return FigurePreset(3, "field", curves, ("M", "C"), "J=-1, T=0.05, Delta=0")
    if figure_id == 4:
        grid = temperature_grid(-1.0)
        curves = tuple(
            Curve(f"N={n}", SweepSpec("temperature", grid, ModelParams(n, -1.0, 0.0, 0.0, 1.0)))
            for n in (2, 3)
        )
        return FigurePreset(4, "temperature", curves, ("M", "C", "D"), "J=-1, B=Delta=0")
    if figure_id == 5:
        grid = lambda_over_t_grid()
        lam = CAVITY_LAMBDA
        curves = tuple(
            Curve(f"N={n}", SweepSpec("lambda_over_t", grid, ModelParams(n, lam, 0.0, lam, 1.0)))
            for n in (2, 3)
        )
        return FigurePreset(5, "lambda_over_t", curves, ("M", "C", "D"), "cavity QED, Delta=0, J=B=lambda")
    raise ParameterError(f"figure id must be 1..5, got {figure_id!r}")


def run_figure(figure_id: int, threads=None):
    """Return ``(preset, rows)`` with rows ``(axis, value, curve_label, report)``."""
    preset = figure_preset(figure_id)
    rows = []
    for curve in preset.curves:
        for value, report in run_sweep(curve.spec, threads):
            rows.append((preset.axis, value, curve.label, report))
    return preset, rows
