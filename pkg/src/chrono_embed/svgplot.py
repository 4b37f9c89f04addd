"""Minimal dependency-free SVG line charts.

CSV is the authoritative output everywhere; these charts are a convenience
rendering of the same series. Output is deterministic for identical data.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

_W, _H = 920, 420
_ML, _MR, _MT, _MB = 70, 30, 40, 70


def line_chart(
    path: str | Path,
    title: str,
    series: list[tuple[str, list[tuple[float, float]]]],
    x_ticks: list[tuple[float, str]] | None = None,
    y_label: str = "",
    zero_line: bool = False,
) -> None:
    """Render one polyline per (label, [(x, y), ...]) series."""
    xs = [x for _, pts in series for x, _ in pts]
    ys = [y for _, pts in series for _, y in pts]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if zero_line:
        y_lo, y_hi = min(y_lo, 0.0), max(y_hi, 0.0)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def sx(x: float) -> float:
        return _ML + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return _MT + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="22" text-anchor="middle" font-size="15">'
        f"{escape(title)}</text>",
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333"/>',
    ]

    if zero_line and y_lo < 0.0 < y_hi:
        zy = sy(0.0)
        parts.append(
            f'<line x1="{_ML}" y1="{zy:.2f}" x2="{_ML + plot_w}" y2="{zy:.2f}" '
            f'stroke="#999" stroke-dasharray="4 3"/>'
        )

    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y_val = y_lo + frac * (y_hi - y_lo)
        yy = sy(y_val)
        parts.append(
            f'<text x="{_ML - 6}" y="{yy + 4:.2f}" text-anchor="end">{y_val:.4g}</text>'
        )
        parts.append(
            f'<line x1="{_ML - 4}" y1="{yy:.2f}" x2="{_ML}" y2="{yy:.2f}" stroke="#333"/>'
        )

    if x_ticks:
        step = max(1, len(x_ticks) // 10)
        for x_val, label in x_ticks[::step]:
            xx = sx(x_val)
            parts.append(
                f'<line x1="{xx:.2f}" y1="{_MT + plot_h}" x2="{xx:.2f}" '
                f'y2="{_MT + plot_h + 4}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{xx:.2f}" y="{_MT + plot_h + 16}" text-anchor="middle" '
                f'font-size="10" transform="rotate(35 {xx:.2f} {_MT + plot_h + 16})">'
                f"{escape(label)}</text>"
            )

    if y_label:
        parts.append(
            f'<text x="16" y="{_MT + plot_h / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {_MT + plot_h / 2:.1f})">{escape(y_label)}</text>'
        )

    for i, (label, pts) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        if pts:
            coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.8"/>'
            )
            for x, y in pts:
                parts.append(
                    f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.4" fill="{color}"/>'
                )
        ly = _MT + 14 + 16 * i
        parts.append(
            f'<line x1="{_ML + plot_w - 130}" y1="{ly - 4}" x2="{_ML + plot_w - 110}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_ML + plot_w - 104}" y="{ly}">{escape(label)}</text>'
        )

    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
