"""(1 - eps)-approximation of opt_k for weighted rectangles.

Pipeline per guess of the heaviest solution weight: drop rectangles outside
the weight band, build a small grid that every survivor pierces (or return a
large greedy independent set), guess the combinatorial type of the optimum,
model the guess as a 2-VCSP, delete one residue class of BFS layers per
component and solve the rest exactly on a tree decomposition.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .ctype import CombType, enumerate_type_guesses, realized_types
from .geom import EMPTY, Rect, Solution, better, rects_intersect, verify_independent
from .grid import Grid
from .vcsp import (
    NEG_INF,
    VcspInstance,
    bfs_layers,
    components,
    gaifman,
    hard,
    min_fill_decomposition,
    solve_dp,
)

log = logging.getLogger(__name__)

BOTTOM = None  # the "no rectangle for this type" value
DEFAULT_GUESS_CAP = 10**7


@dataclass
class RectStats:
    """Counters filled in by :func:`solve_rect` when passed in."""

    weight_guesses: int = 0
    grid_fallbacks: int = 0
    type_guesses: int = 0
    grid_sizes: list = field(default_factory=list)
    widths: list = field(default_factory=list)  # (variables, min-fill width) per reduced instance


def preprocess(rects, rmax: Rect, eps: float, k: int) -> list:
    lo = eps * rmax.weight / k
    return [r for r in rects if lo < r.weight <= rmax.weight]


def build_good_grid(rects, k: int, eps: float):
    """Greedy piercing grid, or an independent set of weight >= opt_k.

    Each rectangle is represented by its top-right corner.  The vertical sweep
    repeatedly takes the rectangle whose corner is leftmost, puts a vertical
    line through the corner and discards everything that line meets; the
    horizontal sweep does the same bottom to top.
    """
    rects = list(rects)
    if not rects:
        raise ValueError("build_good_grid needs a nonempty set")

    def sweep(lo, hi):
        picked, lines = [], []
        alive = sorted(rects, key=lambda r: (hi(r), r.id))
        while alive:
            r = alive[0]
            line = hi(r)
            picked.append(r)
            lines.append(line)
            alive = [s for s in alive if lo(s) > line]
        return picked, lines

    ver, xs = sweep(lambda r: r.x1, lambda r: r.x2)
    hor, ys = sweep(lambda r: r.y1, lambda r: r.y2)
    if len(xs) + len(ys) <= 2 * k * k / eps:
        return Grid(tuple(xs), tuple(ys))
    picked = ver if len(ver) >= len(hor) else hor
    return Solution(tuple(picked), "grid-fallback")


def build_vcsp(guess, realized: dict, g: Grid | None = None) -> VcspInstance:
    """One variable per type; domain = matching rectangles plus ``BOTTOM``."""
    guess = sorted(guess)
    for t in guess:
        if not realized.get(t):
            raise ValueError(f"type {t} has no candidate rectangles")
    domains = [list(realized[t]) + [BOTTOM] for t in guess]
    unary = [[r.weight for r in realized[t]] + [0.0] for t in guess]
    inst = VcspInstance(domains, unary, names=list(guess))
    for i in range(len(guess)):
        for j in range(i + 1, len(guess)):
            if guess[i].touches(guess[j]):
                inst.add_binary(i, j, _disjoint_or_bottom)
    return inst


def _compatible(a, b):
    return a is BOTTOM or b is BOTTOM or not rects_intersect(a, b)


_disjoint_or_bottom = hard(_compatible)


@dataclass
class ComponentSplit:
    variables: list  # indices into the parent instance
    options: list  # (r, reduced instance) for r in 0..l-1


def layer_count(eps: float) -> int:
    return max(1, math.ceil(1.0 / eps - 1e-9))


def baker_split(inst: VcspInstance, eps: float) -> list:
    """Per Gaifman component, the instances left after deleting one layer class.

    Layers are BFS distances from the smallest variable of the component;
    option ``r`` deletes every variable whose distance is ``r`` mod ``l``.
    """
    ell = layer_count(eps)
    g = gaifman(inst)
    out = []
    for comp in components(g):
        dist = bfs_layers(g, comp)
        options = []
        for r in range(ell):
            keep = [v for v in comp if dist[v] % ell != r]
            options.append((r, inst.restrict(keep)))
        out.append(ComponentSplit(comp, options))
    return out


def _solve_reduced(sub: VcspInstance, stats: RectStats | None):
    td = min_fill_decomposition(gaifman(sub))
    if stats is not None and sub.n:
        stats.widths.append((sub.n, td.width))
    return solve_dp(sub, td)


def solve_baker(inst: VcspInstance, eps: float, stats: RectStats | None = None):
    """Best-r-per-component solve; returns (revenue, assignment by variable)."""
    values = [BOTTOM] * inst.n
    total = 0.0
    for split in baker_split(inst, eps):
        best_rev, best_vals = None, None
        seen = set()
        for r, sub in split.options:
            key = tuple(sub.names)
            if key in seen:  # nothing deleted for this r; identical to an earlier option
                continue
            seen.add(key)
            rev, vals = _solve_reduced(sub, stats)
            if best_rev is None or rev > best_rev:
                best_rev, best_vals = rev, dict(zip(sub.names, vals))
        total += best_rev
        for v in split.variables:
            values[v] = best_vals.get(inst.names[v], BOTTOM)
    return total, tuple(values)


def decode(values) -> tuple:
    return tuple(v for v in values if v is not BOTTOM)


def solve_rect(
    rects,
    k: int,
    eps: float,
    guess_cap: int = DEFAULT_GUESS_CAP,
    stats: RectStats | None = None,
) -> Solution:
    """Independent set of weight >= (1 - eps) opt_k (cardinality may exceed k).

    The best pipeline output over every k' <= k is returned, so the weight is
    non-decreasing in k; a single run is not (the grid fallback fires more
    often for small k).
    """
    if k < 1 or not 0 < eps < 1:
        raise ValueError("need k >= 1 and 0 < eps < 1")
    rects = list(rects)
    best = EMPTY
    for kk in range(1, k + 1):
        best = better(best, _solve_rect_once(rects, kk, eps, guess_cap, stats))
    return best


def _solve_rect_once(rects, k, eps, guess_cap, stats) -> Solution:
    half = eps / 2
    best = EMPTY
    # the band depends only on the guessed weight, so one branch per distinct weight
    for wmax in sorted({r.weight for r in rects}, reverse=True):
        rmax = next(r for r in rects if r.weight == wmax)
        band = preprocess(rects, rmax, half, k)
        if stats is not None:
            stats.weight_guesses += 1
        g = build_good_grid(band, k, half)
        if isinstance(g, Solution):
            if stats is not None:
                stats.grid_fallbacks += 1
            best = better(best, _checked(g))
            continue
        if stats is not None:
            stats.grid_sizes.append(g.size())
        realized = realized_types(band, g)
        for guess in enumerate_type_guesses(realized, k, guess_cap):
            if not guess:
                continue
            if stats is not None:
                stats.type_guesses += 1
            inst = build_vcsp(guess, realized, g)
            rev, values = solve_baker(inst, half, stats)
            if rev == NEG_INF:
                continue
            sol = Solution(decode(values), f"wmax={wmax:g} types={len(guess)}")
            best = better(best, _checked(sol))
    return best


def _checked(sol: Solution) -> Solution:
    if not verify_independent(sol.items):
        raise RuntimeError(f"branch {sol.branch!r} produced intersecting rectangles")
    return sol
