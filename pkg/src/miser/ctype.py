"""Combinatorial types of rectangles and segments relative to a grid.

A rectangle's type is the set of grid points it contains.  That set is always
a product of an index interval on each axis, so it is stored as the four
inclusive bounds ``xa..xb, ya..yb``; the empty type has a single canonical
form.

A segment's type records orientation, weight class and the four nearest grid
lines strictly outside it.  ``P(t)`` is the set of grid points strictly inside
the box those lines delimit, which equals the grid points on the segment.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .grid import Grid, GridPoint


class GuessBudgetExceeded(RuntimeError):
    pass


def _box_points(xa, xb, ya, yb) -> frozenset:
    return frozenset(GridPoint(i, j) for i in range(xa, xb + 1) for j in range(ya, yb + 1))


def _boxes_overlap(a, b) -> bool:
    return a[0] <= b[1] and b[0] <= a[1] and a[2] <= b[3] and b[2] <= a[3]


@dataclass(frozen=True, order=True)
class CombType:
    xa: int
    xb: int
    ya: int
    yb: int

    @classmethod
    def empty(cls) -> "CombType":
        return cls(0, -1, 0, -1)

    def is_empty(self) -> bool:
        return self.xa > self.xb or self.ya > self.yb

    @property
    def points(self) -> frozenset:
        return _box_points(self.xa, self.xb, self.ya, self.yb)

    def disjoint(self, other: "CombType") -> bool:
        if self.is_empty() or other.is_empty():
            return True
        return not _boxes_overlap(self._box(), other._box())

    def touches(self, other: "CombType") -> bool:
        """Some point of ``self`` is adjacent (or equal) to some point of ``other``."""
        if self.is_empty() or other.is_empty():
            return False
        grown = (self.xa - 1, self.xb + 1, self.ya - 1, self.yb + 1)
        return _boxes_overlap(grown, other._box())

    def _box(self):
        return (self.xa, self.xb, self.ya, self.yb)


def rect_type(g: Grid, r) -> CombType:
    xa, xb = g.x_range(r)
    ya, yb = g.y_range(r)
    if xa >= xb or ya >= yb:
        return CombType.empty()
    return CombType(xa, xb - 1, ya, yb - 1)


def realized_types(rects: Iterable, g: Grid) -> dict:
    """Nonempty types present in ``rects`` mapped to their members (sorted by id)."""
    out = defaultdict(list)
    for r in rects:
        t = rect_type(g, r)
        if not t.is_empty():
            out[t].append(r)
    return {t: sorted(rs, key=lambda r: r.id) for t, rs in sorted(out.items())}


def enumerate_type_guesses(
    types: Iterable[CombType], k: int, cap: int | None = None
) -> Iterator[tuple]:
    """All sets of at most ``k`` pairwise-disjoint nonempty types, empty set first."""
    types = sorted(t for t in set(types) if not t.is_empty())
    count = 0

    def rec(start, chosen):
        nonlocal count
        count += 1
        if cap is not None and count > cap:
            raise GuessBudgetExceeded(f"more than {cap} type guesses")
        yield tuple(chosen)
        if len(chosen) == k:
            return
        for i in range(start, len(types)):
            t = types[i]
            if all(t.disjoint(c) for c in chosen):
                chosen.append(t)
                yield from rec(i + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def all_rect_types(g: Grid) -> list:
    """Every type a rectangle can have on ``g``; reference enumerator for tiny grids."""
    nx, ny = len(g.xs), len(g.ys)
    out = [CombType.empty()]
    for xa in range(nx):
        for xb in range(xa, nx):
            for ya in range(ny):
                for yb in range(ya, ny):
                    out.append(CombType(xa, xb, ya, yb))
    return out


@dataclass(frozen=True, order=True)
class SegType:
    horizontal: bool
    wclass: int
    left: int  # index of the nearest vertical line strictly left; -1 if none
    right: int  # nearest vertical line strictly right; len(xs) if none
    up: int  # nearest horizontal line strictly above; len(ys) if none
    down: int  # nearest horizontal line strictly below; -1 if none

    @property
    def box(self) -> tuple:
        """Inclusive index bounds of ``P(t)``: ``(xa, xb, ya, yb)``."""
        return (self.left + 1, self.right - 1, self.down + 1, self.up - 1)

    @property
    def points(self) -> frozenset:
        return _box_points(*self.box)

    def is_nice(self) -> bool:
        xa, xb, ya, yb = self.box
        return xa <= xb and ya <= yb

    def disjoint(self, other: "SegType") -> bool:
        if not self.is_nice() or not other.is_nice():
            return True
        return not _boxes_overlap(self.box, other.box)

    def transposed(self) -> "SegType":
        return SegType(not self.horizontal, self.wclass, self.down, self.up, self.right, self.left)


def seg_type(g: Grid, s, wclass: int) -> SegType:
    left = bisect_left(g.xs, s.x1) - 1
    right = bisect_right(g.xs, s.x2)
    down = bisect_left(g.ys, s.y1) - 1
    up = bisect_right(g.ys, s.y2)
    return SegType(s.horizontal, wclass, left, right, up, down)


def pairwise_disjoint(types: Sequence) -> bool:
    return all(a.disjoint(b) for a, b in combinations(types, 2))
