"""CSV output and optional PNG rendering of sweep results."""

from __future__ import annotations

import io
from collections import OrderedDict

from .sweep import QUANTITIES, quantity_value

CSV_HEADER = ("axis", "value", "curve", "M", "C", "D", "chsh_max")
AXIS_LABELS = {"temperature": "T", "field": "B", "lambda_over_t": r"$\lambda/T$"}


def format_value(v: float) -> str:
    return format(float(v), ".12g")


def csv_text(rows, quantities=QUANTITIES) -> str:
    """Render ``(axis, value, curve, report)`` rows; unrequested columns stay empty."""
    out = io.StringIO()
    out.write(",".join(CSV_HEADER) + "\n")
    for axis, value, curve, report in rows:
        fields = [axis, format_value(value), curve]
        for q in CSV_HEADER[3:]:
            fields.append(format_value(quantity_value(report, q)) if q in quantities else "")
        out.write(",".join(fields) + "\n")
    return out.getvalue()


def emit_csv(rows, path, quantities=QUANTITIES) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(csv_text(rows, quantities))


def render_png(rows, path, quantities=("M", "C", "D"), title=None) -> None:
    """Plot each quantity against the axis, one line style per quantity and one colour per curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    curves = OrderedDict()
    for axis, value, curve, report in rows:
        curves.setdefault(curve, []).append((value, report))
    axis = rows[0][0] if rows else "temperature"

    styles = {"M": dict(ls="--", marker="o", ms=2.5), "C": dict(ls="-"), "D": dict(ls=":"),
              "chsh_max": dict(ls="-.")}
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, (label, points) in enumerate(curves.items()):
        xs = [p[0] for p in points]
        for q in quantities:
            ys = [quantity_value(p[1], q) for p in points]
            ax.plot(xs, ys, color=colors[i % len(colors)], label=f"{q}, {label}", lw=1.0, **styles[q])
    ax.axhline(0.0, color="0.6", lw=0.6)
    ax.set_xlabel(AXIS_LABELS.get(axis, axis))
    if axis == "temperature":
        ax.set_xscale("log")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=7, ncol=2, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
