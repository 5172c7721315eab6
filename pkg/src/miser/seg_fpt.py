"""Exact opt_k for weighted axis-parallel segments, and the (1 - eps) wrapper.

``solve_exact`` is exact for any weight function; its running time grows with
the number of distinct weights.  ``solve_seg_pas`` rounds weights onto a
geometric ladder first, which bounds that number by a function of k and eps.

Outline of ``solve_exact``:

1. Guess the lightest segment of the preferred optimum (order: weight, then
   id) and drop everything lighter.  If the rest cannot be hit by k lines the
   guess was wrong.
2. Build a hitting grid with at most (k+1)^2 lines and frame it.
3. Grow a family of supergrids, k rounds of at most k lines each, so that one
   member contains a grid point of every segment of some optimum.
4. On each member, pick segments through grid points: guess their types and
   solve the resulting path-shaped 2-CSP.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .ctype import GuessBudgetExceeded, SegType, seg_type
from .geom import EMPTY, Seg, Solution, better, segs_intersect, verify_independent
from .grid import Grid, enclose
from .vcsp import NEG_INF, VcspInstance, hard, solve

log = logging.getLogger(__name__)

DEFAULT_FAMILY_CAP = 10**6


class FamilyBudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class WeightClasses:
    values: tuple  # strictly descending

    def index(self, w: float) -> int:
        """Position of the largest class value not exceeding ``w``."""
        for i, m in enumerate(self.values):
            if m <= w * (1 + 1e-12):
                return i
        raise ValueError(f"weight {w} is below every class")

    def class_of(self, item) -> int:
        return self.index(item.weight)

    def __len__(self):
        return len(self.values)

    @classmethod
    def from_weights(cls, items: Iterable) -> "WeightClasses":
        return cls(tuple(sorted({it.weight for it in items}, reverse=True)))


def ladder_length(eps: float, k: int) -> int:
    return max(0, math.ceil(math.log(eps / k) / math.log(1 - eps) - 1e-9)) + 1


def round_weights(segs, rmax: Seg, eps: float, k: int):
    """Filter to the weight band of ``rmax`` and round down onto the ladder."""
    top = rmax.weight
    ladder = WeightClasses(tuple(top * (1 - eps) ** i for i in range(ladder_length(eps, k))))
    lo = eps * top / k
    out = []
    for s in segs:
        if lo < s.weight <= top:
            out.append(s.with_weight(ladder.values[ladder.class_of(s)]))
    return out, ladder


def order_key(s) -> tuple:
    """Total order: non-decreasing weight, ties by id."""
    return (s.weight, s.id)


def weight_order(segs) -> list:
    return sorted(segs, key=order_key)


def set_order_key(segs) -> tuple:
    """Lexicographic extension of :func:`order_key` to sets."""
    return tuple(sorted(order_key(s) for s in segs))


# ---------------------------------------------------------------- hitting grid


def min_point_cover(intervals: Sequence) -> tuple[int, list]:
    """Fewest points stabbing every closed interval (greedy by right end)."""
    points = []
    for lo, hi in sorted(intervals, key=lambda iv: (iv[1], iv[0])):
        if not points or points[-1] < lo:
            points.append(hi)
    return len(points), points


def _y_projection(segs):
    return [(s.y1, s.y2) for s in segs]


def build_hitting_grid(segs, k: int) -> Grid | None:
    """Grid of at most (k+1)^2 lines hitting every segment, or None.

    None means no grid of at most k lines hits all of ``segs``.
    """
    remaining = list(segs)
    xs, ys = [], []
    rounds = 0
    while remaining:
        rounds += 1
        if rounds > k + 1:
            return None
        cut = None
        for v in sorted({s.x2 for s in remaining}):
            seen = [s for s in remaining if s.x2 <= v]
            if min_point_cover(_y_projection(seen))[0] > k:
                cut = v
                break
        if cut is None:
            ys.extend(min_point_cover(_y_projection(remaining))[1])
            break
        left = [s for s in remaining if s.x2 < cut]
        _, pts = min_point_cover(_y_projection(left))
        ys.extend(pts)
        xs.append(cut)
        remaining = [
            s for s in remaining if not (s.x1 <= cut <= s.x2 or any(s.y1 <= y <= s.y2 for y in pts))
        ]
    return Grid(tuple(xs), tuple(ys))


# ---------------------------------------------------------------- types on a grid


class Layout:
    """Segment types of one instance relative to one grid."""

    def __init__(self, segs, classes: WeightClasses, g: Grid):
        self.grid = g
        self.classes = classes
        members = defaultdict(list)
        for s in segs:
            members[seg_type(g, s, classes.class_of(s))].append(s)
        self.members = {t: sorted(ss, key=lambda s: s.id) for t, ss in sorted(members.items())}
        self.nice = [t for t in self.members if t.is_nice()]
        self.ugly = [t for t in self.members if not t.is_nice()]

    def weight(self, t: SegType) -> float:
        return self.members[t][0].weight

    def transposed(self) -> "Layout":
        out = Layout.__new__(Layout)
        out.grid = self.grid.transposed()
        out.classes = self.classes
        out.members = {
            t.transposed(): [s.transposed() for s in ss] for t, ss in self.members.items()
        }
        out.nice = [t.transposed() for t in self.nice]
        out.ugly = [t.transposed() for t in self.ugly]
        return out


def _line_and_span(t: SegType):
    """(line index, lo, hi) of P(t) along its line; only for nice types."""
    xa, xb, ya, yb = t.box
    return (ya, xa, xb) if t.horizontal else (xa, ya, yb)


def collinear_adjacent(a: SegType, b: SegType) -> bool:
    """P(a), P(b) are neighbouring intervals on one grid line of their orientation."""
    if a.horizontal != b.horizontal:
        return False
    la, alo, ahi = _line_and_span(a)
    lb, blo, bhi = _line_and_span(b)
    return la == lb and (ahi + 1 == blo or bhi + 1 == alo)


def enumerate_seg_guesses(types: Sequence[SegType], k: int) -> Iterable[tuple]:
    """Sets of at most k nice types with pairwise disjoint P-sets."""
    types = list(types)

    def rec(start, chosen):
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


def _disjoint(a, b):
    return not segs_intersect(a, b)


_disjoint_revenue = hard(_disjoint)


def path_csp(types: Sequence[SegType], lay: Layout) -> VcspInstance:
    """Hard 2-CSP choosing one segment per type; conflicts only between neighbours."""
    types = list(types)
    domains = [lay.members[t] for t in types]
    unary = [[s.weight for s in lay.members[t]] for t in types]
    inst = VcspInstance(domains, unary, names=types)
    for i, j in combinations(range(len(types)), 2):
        if collinear_adjacent(types[i], types[j]):
            inst.add_binary(i, j, _disjoint_revenue)
    return inst


def path_components(types: Sequence[SegType]) -> list:
    """Connected components of the collinear-adjacency graph, each in line order."""
    types = list(types)
    parent = list(range(len(types)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(types)), 2):
        if collinear_adjacent(types[i], types[j]):
            parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i, t in enumerate(types):
        groups[find(i)].append(t)
    return [sorted(g, key=lambda t: _line_and_span(t)[1]) for g in groups.values()]


def solve_nice(segs, classes: WeightClasses, k: int, g: Grid) -> Solution:
    """Best solution made only of segments that contain a point of ``g``.

    Exact for the whole instance when some optimum respects ``g``.  Guesses
    are tried heaviest first; all members of a type weigh the same, so the
    first feasible guess is optimal.
    """
    lay = Layout(segs, classes, g)
    guesses = []
    for guess in enumerate_seg_guesses(lay.nice, k):
        w = math.fsum(lay.weight(t) for t in guess)
        guesses.append((-w, len(guesses), guess))
    guesses.sort()
    for _, _, guess in guesses:
        if not guess:
            return Solution((), "nice:empty")
        rev, values = solve(path_csp(guess, lay))
        if rev == NEG_INF:
            continue
        sol = Solution(tuple(values), f"nice:{len(guess)}")
        if not verify_independent(sol.items):
            raise RuntimeError("nice-grid CSP produced intersecting segments")
        return sol
    return Solution((), "nice:empty")


# ---------------------------------------------------------------- ugliness reduction


def greedy_component_assign(path: Sequence[SegType], members: dict, forward: bool):
    """Assign one segment per type walking ``path`` in order, or None.

    ``forward`` means the walk goes towards larger coordinates along the line;
    each step keeps the chosen segment as far back as possible (smallest upper
    end when walking forward, largest lower end when walking backward), which
    leaves the most room beyond the last type.
    """
    chosen = []
    prev = None
    for t in path:
        avail = [s for s in members[t] if prev is None or not segs_intersect(s, prev)]
        if not avail:
            return None
        if forward:
            prev = min(avail, key=lambda s: (s.hi, s.id))
        else:
            prev = min(avail, key=lambda s: (-s.lo, s.id))
        chosen.append(prev)
    return chosen


def _solve_free(comps: list, lay: Layout, cache: dict):
    """Any feasible assignment for components nobody cares about, or None."""
    out = []
    for comp in comps:
        key = tuple(comp)
        if key not in cache:
            rev, values = solve(path_csp(comp, lay))
            cache[key] = None if rev == NEG_INF else list(values)
        if cache[key] is None:
            return None
        out.extend(cache[key])
    return out


def _anchored_greedy(comp, lay: Layout, lo_anchor: int, hi_anchor: int):
    """Greedy assignment of a path that may reach into a gap between two grid points.

    ``hi_anchor`` and ``lo_anchor`` are consecutive indices along the path's
    line; the gap between them must stay as free as possible.  Returns a list
    of segments, [] if the path does not touch the gap, or None to discard.
    """
    spans = [_line_and_span(t) for t in comp]
    has_hi = any(lo <= hi_anchor <= hi for _, lo, hi in spans)
    has_lo = any(lo <= lo_anchor <= hi for _, lo, hi in spans)
    if not has_hi and not has_lo:
        return []
    if any(lo <= lo_anchor and hi_anchor <= hi for _, lo, hi in spans):
        return None  # one segment would span the whole gap
    # comp is sorted by position along the line
    below = [t for t, (_, lo, hi) in zip(comp, spans) if hi <= lo_anchor]
    above = [t for t, (_, lo, hi) in zip(comp, spans) if lo >= hi_anchor]
    low_part = greedy_component_assign(below, lay.members, forward=True) if has_lo else []
    high_part = greedy_component_assign(above[::-1], lay.members, forward=False) if has_hi else []
    if low_part is None or high_part is None:
        return None
    if not has_lo:
        # the path ends at the high anchor: the whole of it is walked downwards
        return high_part
    if not has_hi:
        return low_part
    return low_part + high_part


def _branch_horizontal(lay: Layout, tau: tuple, tmax: SegType, k: int, cache: dict):
    """Lines to add for one guess with a horizontal heaviest ugly segment.

    Returns ``(xs, ys)`` to add, or None when the guess is inconsistent.
    """
    g = lay.grid
    slots = k - len(tau)
    comps = path_components(tau)
    anchored, free = [], []
    if tmax.up - tmax.down == 1:
        # Case 1: strictly inside a horizontal strip, between >= 2 cells
        for comp in comps:
            line = _line_and_span(comp[0])[0]
            if not comp[0].horizontal and tmax.left < line < tmax.right:
                part = _anchored_greedy(comp, lay, tmax.down, tmax.up)
                if part is None:
                    return None
                if part:
                    anchored.append(part)
                    continue
            free.append(comp)
    elif tmax.up - tmax.down == 2 and tmax.right - tmax.left == 1:
        # Case 2: on the line between ys[down] and ys[up], inside one cell side
        row = tmax.down + 1
        for comp in comps:
            line = _line_and_span(comp[0])[0]
            if comp[0].horizontal and line == row:
                part = _anchored_greedy(comp, lay, tmax.left, tmax.right)
                if part is None:
                    return None
                if part:
                    anchored.append(part)
                    continue
            free.append(comp)
    else:
        return None

    rest = _solve_free(free, lay, cache)
    if rest is None:
        return None
    chosen = [s for part in anchored for s in part] + rest
    if not verify_independent(chosen):
        return None

    if tmax.up - tmax.down == 1:
        cands = [s for s in lay.members[tmax] if all(_disjoint(s, n) for n in chosen)]
        lines = sorted({s.c for s in cands})
        return (), tuple(lines[:slots])

    y = g.ys[tmax.down + 1]
    a, b = g.xs[tmax.left], g.xs[tmax.right]
    for n in chosen:
        if n.y1 <= y <= n.y2:
            if n.x1 <= a < n.x2:
                a = n.x2
            if n.x1 < b <= n.x2:
                b = n.x1
    cands = [
        s
        for ss in lay.members.values()
        for s in ss
        if s.y1 == s.y2 == y
        and a < s.x1
        and s.x2 < b
        and lay.classes.class_of(s) == tmax.wclass
        and all(_disjoint(s, n) for n in chosen)
    ]
    picked = []
    for s in sorted(cands, key=lambda s: (s.x2, s.id)):
        if not picked or s.x1 > picked[-1].x2:
            picked.append(s)
    return tuple(s.x2 for s in picked[:slots]), ()


@dataclass(frozen=True)
class GridCandidate:
    grid: Grid
    added: int
    provenance: str


def reduce_ugliness(segs, classes: WeightClasses, k: int, g: Grid) -> list:
    """Supergrids of ``g`` with at most k new lines, one per consistent guess.

    A guess is a set of at most k-1 types through grid points plus the type
    of the heaviest segment that avoids all grid points.
    """
    lay = Layout(segs, classes, g)
    if not lay.ugly:
        return []
    flipped = lay.transposed()
    caches = ({}, {})
    out = {}
    for tau in enumerate_seg_guesses(lay.nice, k - 1):
        for tmax in lay.ugly:
            if tmax.horizontal:
                res = _branch_horizontal(lay, tau, tmax, k, caches[0])
            else:
                res = _branch_horizontal(
                    flipped, tuple(t.transposed() for t in tau), tmax.transposed(), k, caches[1]
                )
                if res is not None:
                    res = (res[1], res[0])
            if res is None:
                continue
            xs, ys = res
            if not xs and not ys:
                continue
            g2 = g.with_lines(xs, ys)
            if g2 not in out:
                out[g2] = GridCandidate(g2, g2.added_lines(g), f"|N|={len(tau)} tmax={tmax}")
    return list(out.values())


def grid_family(segs, classes: WeightClasses, k: int, g: Grid, cap: int = DEFAULT_FAMILY_CAP) -> list:
    """k rounds of :func:`reduce_ugliness`; every grid is kept alongside its children."""
    family = {g: GridCandidate(g, 0, "base")}
    frontier = [g]
    for _ in range(k):
        nxt = []
        for h in frontier:
            for cand in reduce_ugliness(segs, classes, k, h):
                if cand.grid not in family:
                    family[cand.grid] = GridCandidate(
                        cand.grid, cand.grid.added_lines(g), cand.provenance
                    )
                    nxt.append(cand.grid)
                    if len(family) > cap:
                        raise FamilyBudgetExceeded(f"grid family exceeds {cap}")
        frontier = nxt
        if not frontier:
            break
    return list(family.values())


# ---------------------------------------------------------------- assembly


def solve_exact(
    segs, k: int, classes: WeightClasses | None = None, family_cap: int = DEFAULT_FAMILY_CAP
) -> Solution:
    """Maximum weight of at most k pairwise disjoint segments."""
    if k < 1:
        raise ValueError("k must be positive")
    segs = weight_order(segs)
    if not segs:
        return EMPTY
    if classes is None:
        classes = WeightClasses.from_weights(segs)
    best = EMPTY
    for i, rmin in enumerate(segs):
        rest = segs[i:]
        g = build_hitting_grid(rest, k)
        if g is None:
            continue
        g = enclose(g, rest)
        memo = {}
        for cand in grid_family(rest, classes, k, g, family_cap):
            # the nice-grid optimum only depends on which segments hit a grid point
            key = frozenset(s.id for s in rest if cand.grid.respects(s))
            if key not in memo:
                memo[key] = solve_nice(rest, classes, k, cand.grid)
            sol = memo[key]
            best = better(best, Solution(sol.items, f"rmin={rmin.id} {sol.branch}"))
    return best


def solve_seg_pas(segs, k: int, eps: float, family_cap: int = DEFAULT_FAMILY_CAP) -> Solution:
    """At most k disjoint segments of weight >= (1 - eps) opt_k."""
    if k < 1 or not 0 < eps < 1:
        raise ValueError("need k >= 1 and 0 < eps < 1")
    segs = list(segs)
    original = {s.id: s.weight for s in segs}
    half = eps / 2
    best = EMPTY
    for wmax in sorted({s.weight for s in segs}, reverse=True):
        rmax = next(s for s in segs if s.weight == wmax)
        rounded, ladder = round_weights(segs, rmax, half, k)
        sol = solve_exact(rounded, k, family_cap=family_cap)
        sol = Solution(sol.rescored(original.get).items, f"wmax={wmax:g} {sol.branch}")
        if not verify_independent(sol.items):
            raise RuntimeError("segment PAS produced intersecting segments")
        best = better(best, sol)
    return best
