"""Finite grids of axis-parallel lines.

Grid points are stored as index pairs ``(xi, yi)`` into the sorted line
coordinate tuples; coordinates are only looked up for geometric tests.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class GridPoint(NamedTuple):
    xi: int
    yi: int


def _index_range(lines: Sequence[int], lo: int, hi: int) -> tuple[int, int]:
    """Indices ``[a, b)`` of lines whose coordinate lies in ``[lo, hi]``."""
    return bisect_left(lines, lo), bisect_right(lines, hi)


@dataclass(frozen=True)
class Grid:
    xs: tuple = ()  # vertical lines
    ys: tuple = ()  # horizontal lines

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(sorted(set(self.xs))))
        object.__setattr__(self, "ys", tuple(sorted(set(self.ys))))

    def size(self) -> int:
        return len(self.xs) + len(self.ys)

    __len__ = size

    def points(self) -> set:
        return {GridPoint(i, j) for i in range(len(self.xs)) for j in range(len(self.ys))}

    def coord(self, p: GridPoint) -> tuple[int, int]:
        return self.xs[p.xi], self.ys[p.yi]

    def with_lines(self, xs: Iterable[int] = (), ys: Iterable[int] = ()) -> "Grid":
        return Grid(self.xs + tuple(xs), self.ys + tuple(ys))

    def transposed(self) -> "Grid":
        return Grid(self.ys, self.xs)

    def issuperset(self, other: "Grid") -> bool:
        return set(other.xs) <= set(self.xs) and set(other.ys) <= set(self.ys)

    def added_lines(self, base: "Grid") -> int:
        return len(set(self.xs) - set(base.xs)) + len(set(self.ys) - set(base.ys))

    def x_range(self, item) -> tuple[int, int]:
        return _index_range(self.xs, item.x1, item.x2)

    def y_range(self, item) -> tuple[int, int]:
        return _index_range(self.ys, item.y1, item.y2)

    def points_in_rect(self, r) -> set:
        xa, xb = self.x_range(r)
        ya, yb = self.y_range(r)
        return {GridPoint(i, j) for i in range(xa, xb) for j in range(ya, yb)}

    def hits(self, item) -> tuple[bool, bool]:
        """``(hit by a vertical line, hit by a horizontal line)``."""
        xa, xb = self.x_range(item)
        ya, yb = self.y_range(item)
        return xb > xa, yb > ya

    def respects(self, item) -> bool:
        """True iff ``item`` contains a grid point."""
        hv, hh = self.hits(item)
        return hv and hh

    def encloses(self, items: Iterable) -> bool:
        items = list(items)
        if not items:
            return True
        if not self.xs or not self.ys:
            return False
        return (
            self.xs[0] < min(it.x1 for it in items)
            and self.xs[-1] > max(it.x2 for it in items)
            and self.ys[0] < min(it.y1 for it in items)
            and self.ys[-1] > max(it.y2 for it in items)
        )


def adjacent(p: GridPoint, q: GridPoint) -> bool:
    return p != q and abs(p.xi - q.xi) <= 1 and abs(p.yi - q.yi) <= 1


def points_in_rect(g: Grid, r) -> set:
    return g.points_in_rect(r)


def hits(g: Grid, item) -> tuple[bool, bool]:
    return g.hits(item)


def enclose(g: Grid, items: Iterable) -> Grid:
    """Add at most four lines so every item lies strictly inside the outer frame."""
    items = list(items)
    if not items:
        raise ValueError("enclose needs at least one item")
    lo_x = min(it.x1 for it in items)
    hi_x = max(it.x2 for it in items)
    lo_y = min(it.y1 for it in items)
    hi_y = max(it.y2 for it in items)
    xs, ys = [], []
    if not (g.xs and g.xs[0] < lo_x):
        xs.append(lo_x - 1)
    if not (g.xs and g.xs[-1] > hi_x):
        xs.append(hi_x + 1)
    if not (g.ys and g.ys[0] < lo_y):
        ys.append(lo_y - 1)
    if not (g.ys and g.ys[-1] > hi_y):
        ys.append(hi_y + 1)
    if not xs and not ys:
        return g
    return g.with_lines(xs, ys)
