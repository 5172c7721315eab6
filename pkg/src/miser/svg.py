"""Deterministic SVG pictures of an instance, a grid and a solution."""
from __future__ import annotations

from .geom import Rect
from .grid import Grid

CANVAS = 600
MARGIN = 20

STYLE = """.item { fill: #9ecae1; fill-opacity: 0.35; stroke: #3182bd; stroke-width: 1.5 }
line.item { fill: none; stroke-width: 2.5 }
.grid { stroke: #636363; stroke-width: 1; stroke-dasharray: 3 3 }"""
CHOSEN_STYLE = """
.chosen { fill: #fd8d3c; fill-opacity: 0.8; stroke: #d94701 }
line.chosen { stroke: #d94701; stroke-width: 4 }"""


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def emit_svg(items, grid: Grid | None = None, solution=None) -> str:
    """SVG 1.1 document; items in one group, grid lines in another."""
    items = list(items)
    chosen = set(solution.ids) if solution is not None else set()
    xs = [v for it in items for v in (it.x1, it.x2)]
    ys = [v for it in items for v in (it.y1, it.y2)]
    if grid is not None:
        xs += list(grid.xs)
        ys += list(grid.ys)
    lo_x, hi_x = (min(xs), max(xs)) if xs else (0, 1)
    lo_y, hi_y = (min(ys), max(ys)) if ys else (0, 1)
    lo_x, hi_x, lo_y, hi_y = lo_x - 1, hi_x + 1, lo_y - 1, hi_y + 1
    scale = (CANVAS - 2 * MARGIN) / max(hi_x - lo_x, hi_y - lo_y)

    def px(x):
        return _fmt(MARGIN + (x - lo_x) * scale)

    def py(y):  # flip so that y grows upwards
        return _fmt(MARGIN + (hi_y - y) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        "<style>" + STYLE + (CHOSEN_STYLE if solution is not None else "") + "</style>",
        '<g id="items">',
    ]
    for it in items:
        cls = "item chosen" if it.id in chosen else "item"
        ident = f'data-id="{it.id}"'
        if isinstance(it, Rect):
            out.append(
                f'<rect class="{cls}" {ident} x="{px(it.x1)}" y="{py(it.y2)}" '
                f'width="{_fmt((it.x2 - it.x1) * scale)}" height="{_fmt((it.y2 - it.y1) * scale)}"/>'
            )
        else:
            out.append(
                f'<line class="{cls}" {ident} x1="{px(it.x1)}" y1="{py(it.y1)}" '
                f'x2="{px(it.x2)}" y2="{py(it.y2)}"/>'
            )
    out.append("</g>")
    if grid is not None:
        out.append('<g id="grid">')
        for x in grid.xs:
            out.append(f'<line class="grid" x1="{px(x)}" y1="{py(hi_y)}" x2="{px(x)}" y2="{py(lo_y)}"/>')
        for y in grid.ys:
            out.append(f'<line class="grid" x1="{px(lo_x)}" y1="{py(y)}" x2="{px(hi_x)}" y2="{py(y)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
