"""Deterministic CSV and SVG renderers for bound curves.

Floats are printed with 17 significant digits so values round-trip exactly
and identical runs emit byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .bounds import BoundCurve


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def render_csv(curve: BoundCurve, metadata: list[tuple[str, str]]) -> str:
    """CSV text: '#' metadata lines, a header row, one row per grid point.

    warnings_count per row counts excluded samples with time <= T.
    """
    lines = [f"# {key}: {value}" for key, value in metadata]
    lines.append("T,mean_value,t_qslo,t_sqslo,r_bar,warnings_count")
    warn_times = np.sort(np.array([t for t, _ in curve.warnings]))
    counts = np.searchsorted(warn_times, curve.grid.points, side="right")
    for k, t in enumerate(curve.grid.points):
        lines.append(
            ",".join(
                (
                    fmt(t),
                    fmt(curve.mean_values[k]),
                    fmt(curve.t_qslo[k]),
                    fmt(curve.t_sqslo[k]),
                    fmt(curve.r_bar[k]),
                    str(int(counts[k])),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_svg(curve: BoundCurve, title: str) -> str:
    """Minimal self-contained line chart with a dotted diagonal reference."""
    width, height, margin = 640, 480, 60
    ts = curve.grid.points
    t_hi = float(ts[-1])
    y_hi = max(float(curve.t_sqslo.max()), float(curve.t_qslo.max()), t_hi, 1e-12)

    def sx(t):
        return margin + (width - 2 * margin) * t / t_hi

    def sy(y):
        return height - margin - (height - 2 * margin) * y / y_hi

    def polyline(values, color, dash=""):
        pts = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in zip(ts, values))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
            f'{extra} points="{pts}"/>'
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}"'
        f' height="{height - 2 * margin}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{width / 2:.0f}" y="{height - 16}" text-anchor="middle" font-size="12">T</text>',
        f'<text x="16" y="{height / 2:.0f}" font-size="12" transform="rotate(-90 16 {height / 2:.0f})">bound</text>',
        polyline(ts, "#999999", dash="4 4"),
        polyline(curve.t_qslo, "#1f77b4"),
        polyline(curve.t_sqslo, "#d62728"),
        f'<text x="{width - margin - 4}" y="{margin + 16}" text-anchor="end" font-size="11" fill="#1f77b4">t_qslo</text>',
        f'<text x="{width - margin - 4}" y="{margin + 32}" text-anchor="end" font-size="11" fill="#d62728">t_sqslo</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
