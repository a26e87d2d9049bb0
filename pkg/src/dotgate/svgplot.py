"""Minimal static SVG line charts, no plotting dependency.

Output is deterministic: fixed canvas, fixed palette, fixed number
formatting, so identical data produces byte-identical files.
"""

from __future__ import annotations

import math

_WIDTH, _HEIGHT = 720, 540
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 80, 24, 48, 64
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def line_chart(
    series: list[tuple[str, list[float], list[float]]],
    *,
    xlabel: str,
    ylabel: str,
    title: str,
    log_y: bool = False,
) -> str:
    """Render labelled (x, y) series as a standalone SVG document string."""
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)]
    if not pts:
        xs_lo, xs_hi, ys_lo, ys_hi = 0.0, 1.0, 0.0, 1.0
    else:
        xs_lo = min(x for x, _ in pts)
        xs_hi = max(x for x, _ in pts)
        yvals = [math.log10(y) if log_y else y for _, y in pts]
        ys_lo, ys_hi = min(yvals), max(yvals)
    if xs_hi <= xs_lo:
        xs_hi = xs_lo + 1.0
    if ys_hi <= ys_lo:
        ys_hi = ys_lo + 1.0

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - xs_lo) / (xs_hi - xs_lo) * plot_w

    def py(y: float) -> float:
        yv = math.log10(y) if log_y else y
        return _MARGIN_T + plot_h - (yv - ys_lo) / (ys_hi - ys_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}" '
        f'width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]
    axis_style = 'stroke="black" stroke-width="1"'
    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" {axis_style}/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_MARGIN_T}" {axis_style}/>')
    for tx in _ticks(xs_lo, xs_hi):
        out.append(
            f'<line x1="{px(tx):.2f}" y1="{y0}" x2="{px(tx):.2f}" y2="{y0 + 6}" {axis_style}/>'
        )
        out.append(
            f'<text x="{px(tx):.2f}" y="{y0 + 22}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{tx:.3g}</text>'
        )
    for ty in _ticks(ys_lo, ys_hi):
        yy = _MARGIN_T + plot_h - (ty - ys_lo) / (ys_hi - ys_lo) * plot_h
        label = 10.0**ty if log_y else ty
        out.append(f'<line x1="{x0 - 6}" y1="{yy:.2f}" x2="{x0}" y2="{yy:.2f}" {axis_style}/>')
        out.append(
            f'<text x="{x0 - 10}" y="{yy + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{label:.3g}</text>'
        )
    out.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{xlabel}</text>'
    )
    out.append(
        f'<text x="20" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 20 {_MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>'
    )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.6"/>')
        ly = _MARGIN_T + 18 + 18 * i
        lx = _MARGIN_L + plot_w - 150
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 26}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.6"/>')
        out.append(
            f'<text x="{lx + 32}" y="{ly}" font-family="sans-serif" font-size="12">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
