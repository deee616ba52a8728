"""SVG output for a finished layout."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from .geom import unit_vector
from .layout import LayoutResult
from .style import default_metrics, hex_color


@dataclass(frozen=True)
class RenderOptions:
    background: Optional[tuple[int, int, int]] = (255, 255, 255)  # None: transparent
    stroke: Optional[tuple[tuple[int, int, int], float]] = None
    decimals: int = 2
    embed_label: bool = True
    label_size: float = 14.0

    def __post_init__(self):
        if not 1 <= self.decimals <= 6:
            raise ValueError("decimals must be between 1 and 6")


class _Fmt:
    def __init__(self, decimals: int):
        self.decimals = decimals

    def __call__(self, v: float) -> str:
        s = f"{v:.{self.decimals}f}"
        if s.startswith("-") and not s.strip("-0."):
            s = s[1:]
        return s


def arc_endpoints(cx, cy, r, start_angle, sweep):
    ux, uy = unit_vector(start_angle)
    ex, ey = unit_vector((start_angle + sweep) % 360.0)
    return (cx + r * ux, cy + r * uy), (cx + r * ex, cy + r * ey)


def slice_path(cx, cy, r, start_angle, sweep, fmt) -> str:
    (x0, y0), (x1, y1) = arc_endpoints(cx, cy, r, start_angle, sweep)
    large = 1 if sweep > 180 else 0
    # sweep-flag 1: increasing angle, clockwise on screen
    return (
        f"M {fmt(cx)} {fmt(cy)} L {fmt(x0)} {fmt(y0)} "
        f"A {fmt(r)} {fmt(r)} 0 {large} 1 {fmt(x1)} {fmt(y1)} Z"
    )


def render_svg(result: LayoutResult, opts: Optional[RenderOptions] = None) -> str:
    opts = opts or RenderOptions()
    fmt = _Fmt(opts.decimals)
    p = result.params_echo
    fm = result.metrics or default_metrics()
    cx, cy = result.center
    r = p.radius

    stroke = ""
    if opts.stroke is not None:
        color, width = opts.stroke
        stroke = f' stroke="{hex_color(color)}" stroke-width="{fmt(width)}"'

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{p.width}" '
        f'height="{p.height}" viewBox="0 0 {p.width} {p.height}">',
    ]
    if opts.background is not None:
        out.append(
            f'<rect x="0" y="0" width="{p.width}" height="{p.height}" '
            f'fill="{hex_color(opts.background)}"/>'
        )
    out.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" fill="#FFFFFF"{stroke}/>')

    for s in result.slices:
        if not s.sweep > 0:
            raise ValueError(f"slice {s.topic_index} has non-positive sweep {s.sweep}")
        fill = hex_color(s.color)
        if s.sweep >= 360.0:
            out.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" fill="{fill}"{stroke}/>')
        else:
            d = slice_path(cx, cy, r, s.start_angle, s.sweep, fmt)
            out.append(f'<path d="{d}" fill="{fill}"{stroke}/>')

    family = quoteattr(fm.family_name)
    for w in result.words:
        x, y = w.anchor
        baseline = y + fm.ascent * w.font_size / fm.units_per_em
        out.append(
            f'<text x="{fmt(x)}" y="{fmt(baseline)}" font-family={family} '
            f'font-size="{fmt(w.font_size)}" fill="{hex_color(w.color)}">{escape(w.surface)}</text>'
        )

    if opts.embed_label and result.label:
        out.append(
            f'<text x="{fmt(8)}" y="{fmt(p.height - 8)}" font-family={family} '
            f'font-size="{fmt(opts.label_size)}" fill="#333333">{escape(result.label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
