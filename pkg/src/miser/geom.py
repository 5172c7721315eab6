"""Closed axis-parallel rectangles and segments with integer coordinates.

Every object is a closed point set, so touching boundaries count as an
intersection.  A segment is a degenerate rectangle; both kinds expose the
bounding-box fields ``x1, x2, y1, y2`` so the predicates below are shared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence, Union


@dataclass(frozen=True)
class Rect:
    id: Hashable
    x1: int
    x2: int
    y1: int
    y2: int
    weight: float = 1.0

    def __post_init__(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"rectangle {self.id!r}: inverted extent")
        if not self.weight > 0:
            raise ValueError(f"rectangle {self.id!r}: weight must be positive")

    def with_weight(self, weight: float) -> "Rect":
        return Rect(self.id, self.x1, self.x2, self.y1, self.y2, weight)


@dataclass(frozen=True)
class Seg:
    """Segment ``[lo, hi] x {c}`` if horizontal, ``{c} x [lo, hi]`` if vertical."""

    id: Hashable
    horizontal: bool
    c: int
    lo: int
    hi: int
    weight: float = 1.0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"segment {self.id!r}: lo > hi")
        if not self.weight > 0:
            raise ValueError(f"segment {self.id!r}: weight must be positive")

    @property
    def x1(self) -> int:
        return self.lo if self.horizontal else self.c

    @property
    def x2(self) -> int:
        return self.hi if self.horizontal else self.c

    @property
    def y1(self) -> int:
        return self.c if self.horizontal else self.lo

    @property
    def y2(self) -> int:
        return self.c if self.horizontal else self.hi

    def with_weight(self, weight: float) -> "Seg":
        return Seg(self.id, self.horizontal, self.c, self.lo, self.hi, weight)

    def transposed(self) -> "Seg":
        # mirror in the diagonal x = y
        return Seg(self.id, not self.horizontal, self.c, self.lo, self.hi, self.weight)

    @classmethod
    def h(cls, id, x1, x2, y, weight=1.0) -> "Seg":
        return cls(id, True, y, x1, x2, weight)

    @classmethod
    def v(cls, id, x, y1, y2, weight=1.0) -> "Seg":
        return cls(id, False, x, y1, y2, weight)


Item = Union[Rect, Seg]


def _boxes_meet(a, b) -> bool:
    return a.x1 <= b.x2 and b.x1 <= a.x2 and a.y1 <= b.y2 and b.y1 <= a.y2


def rects_intersect(a: Rect, b: Rect) -> bool:
    return _boxes_meet(a, b)


def segs_intersect(a: Seg, b: Seg) -> bool:
    # an axis-parallel segment equals its own bounding box
    return _boxes_meet(a, b)


def intersects(a: Item, b: Item) -> bool:
    return _boxes_meet(a, b)


def verify_independent(items: Sequence[Item]) -> bool:
    """O(n^2) pairwise check.  Mixing rectangles and segments is rejected."""
    kinds = {type(it) for it in items}
    if len(kinds) > 1:
        raise TypeError("verify_independent expects items of a single kind")
    return not any(_boxes_meet(a, b) for a, b in combinations(items, 2))


def total_weight(items: Iterable[Item]) -> float:
    return math.fsum(it.weight for it in items)


@dataclass(frozen=True)
class Solution:
    """An independent set together with a note on which branch produced it."""

    items: tuple = ()
    branch: str = ""
    weight: float = field(init=False)

    def __post_init__(self):
        items = tuple(sorted(self.items, key=lambda it: it.id))
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "weight", total_weight(items))

    @property
    def ids(self) -> frozenset:
        return frozenset(it.id for it in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def is_independent(self) -> bool:
        return verify_independent(self.items)

    def rescored(self, weight_of) -> "Solution":
        """Same members, weights replaced by ``weight_of(id)``."""
        return Solution(tuple(it.with_weight(weight_of(it.id)) for it in self.items), self.branch)


EMPTY = Solution((), "empty")


def better(a: Solution, b: Solution) -> Solution:
    """Deterministic max: heavier wins, ties keep ``a`` (the earlier one)."""
    return b if b.weight > a.weight else a
