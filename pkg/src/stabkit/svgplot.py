"""Static SVG rendering of wall diagrams in the (b, t) half-plane.

The drawing is the one approximate surface of the toolkit (pictures need
floats); coordinates are formatted with fixed precision so identical inputs
render identical bytes, apart from the embedded timestamp comment.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

from .walls import Region, WallKind, WallLocus

_W, _H = 640.0, 480.0
_PAD = 56.0

_STYLE = (
    'font-family="Helvetica, Arial, sans-serif" font-size="12"'
)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_walls_svg(walls: Sequence[WallLocus], region: Region,
                     timestamp: str = "", title: Optional[str] = None) -> str:
    b0, b1 = float(region.b_min), float(region.b_max)
    t0, t1 = 0.0, float(region.t_max)
    span_b = b1 - b0 or 1.0
    span_t = t1 - t0 or 1.0
    sx = (_W - 2 * _PAD) / span_b
    sy = (_H - 2 * _PAD) / span_t

    def px(b: float) -> float:
        return _PAD + (b - b0) * sx

    def py(t: float) -> float:
        return _H - _PAD - (t - t0) * sy

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_W)}" '
        f'height="{_fmt(_H)}" viewBox="0 0 {_fmt(_W)} {_fmt(_H)}">',
        f"<!-- generated {timestamp} -->",
        f'<rect x="0" y="0" width="{_fmt(_W)}" height="{_fmt(_H)}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(f'<text x="{_fmt(_W / 2)}" y="24" text-anchor="middle" '
                     f'{_STYLE}>{title}</text>')
    # axes
    parts.append(f'<line x1="{_fmt(px(b0))}" y1="{_fmt(py(0))}" x2="{_fmt(px(b1))}" '
                 f'y2="{_fmt(py(0))}" stroke="#000000" stroke-width="1"/>')
    parts.append(f'<line x1="{_fmt(px(b0))}" y1="{_fmt(py(0))}" x2="{_fmt(px(b0))}" '
                 f'y2="{_fmt(py(t1))}" stroke="#000000" stroke-width="1"/>')
    parts.append(f'<text x="{_fmt(px(b1))}" y="{_fmt(py(0) + 28)}" '
                 f'text-anchor="end" {_STYLE}>b</text>')
    parts.append(f'<text x="{_fmt(px(b0) - 28)}" y="{_fmt(py(t1))}" {_STYLE}>t</text>')
    for tick in _ticks(b0, b1):
        parts.append(f'<line x1="{_fmt(px(tick))}" y1="{_fmt(py(0) - 3)}" '
                     f'x2="{_fmt(px(tick))}" y2="{_fmt(py(0) + 3)}" stroke="#000000"/>')
        parts.append(f'<text x="{_fmt(px(tick))}" y="{_fmt(py(0) + 16)}" '
                     f'text-anchor="middle" {_STYLE}>{tick:g}</text>')
    for tick in _ticks(t0, t1):
        if tick <= 0:
            continue
        parts.append(f'<line x1="{_fmt(px(b0) - 3)}" y1="{_fmt(py(tick))}" '
                     f'x2="{_fmt(px(b0) + 3)}" y2="{_fmt(py(tick))}" stroke="#000000"/>')
        parts.append(f'<text x="{_fmt(px(b0) - 8)}" y="{_fmt(py(tick) + 4)}" '
                     f'text-anchor="end" {_STYLE}>{tick:g}</text>')
    # walls
    for idx, wall in enumerate(walls):
        wall_id = f"W{idx}"
        color = "#1f4e9c" if wall.kind is WallKind.SEMICIRCLE else "#b03030"
        if wall.kind is WallKind.VERTICAL_LINE:
            xx = px(float(wall.center))
            parts.append(f'<line x1="{_fmt(xx)}" y1="{_fmt(py(max(t0, 0.0)))}" '
                         f'x2="{_fmt(xx)}" y2="{_fmt(py(t1))}" stroke="{color}" '
                         f'stroke-width="1.5"/>')
            parts.append(f'<text x="{_fmt(xx + 3)}" y="{_fmt(py(t1) + 12)}" '
                         f'fill="{color}" {_STYLE}>{wall_id}</text>')
        elif wall.kind is WallKind.SEMICIRCLE:
            c = float(wall.center)
            r = math.sqrt(float(wall.radius_sq))
            x_start, x_end = px(c - r), px(c + r)
            ry = r * sy
            rx = r * sx
            parts.append(
                f'<path d="M {_fmt(x_start)} {_fmt(py(0))} '
                f'A {_fmt(rx)} {_fmt(ry)} 0 0 1 {_fmt(x_end)} {_fmt(py(0))}" '
                f'fill="none" stroke="{color}" stroke-width="1.5"/>')
            parts.append(f'<text x="{_fmt(px(c))}" y="{_fmt(py(r) - 4)}" '
                         f'text-anchor="middle" fill="{color}" {_STYLE}>{wall_id}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _ticks(lo: float, hi: float, n: int = 6):
    if hi <= lo:
        return []
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m for m in (1 * mag, 2 * mag, 5 * mag, 10 * mag) if m >= raw))
    first = math.ceil(lo / step) * step
    out = []
    x = first
    while x <= hi + 1e-9:
        out.append(round(x, 10))
        x += step
    return out
