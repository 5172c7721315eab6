"""Exhaustive and branch-and-bound solvers for opt_k, used as ground truth."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import Solution, intersects


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_subsets: int = 5_000_000


def _subset_count(n: int, k: int) -> int:
    return sum(math.comb(n, i) for i in range(min(n, k) + 1))


def exact_mwis(items, k: int, budget: OracleBudget = OracleBudget()) -> Solution:
    """opt_k by enumerating subsets of size <= k in lexicographic id order.

    Among optimal subsets the one whose sorted id tuple is smallest wins.
    """
    items = sorted(items, key=lambda it: it.id)
    n = len(items)
    if _subset_count(n, k) > budget.max_subsets:
        raise OracleBudgetExceeded(f"C({n}, <={k}) exceeds {budget.max_subsets}")
    clash = [[intersects(a, b) for b in items] for a in items]
    best_w, best = 0.0, ()

    # DFS visits subsets in lexicographic order of index tuples; dependent
    # subsets and all their extensions are skipped.
    def rec(start, chosen):
        nonlocal best_w, best
        if chosen:
            w = math.fsum(items[i].weight for i in chosen)
            if w > best_w:
                best_w, best = w, tuple(chosen)
        if len(chosen) == k:
            return
        for i in range(start, n):
            if not any(clash[i][j] for j in chosen):
                chosen.append(i)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return Solution(tuple(items[i] for i in best), "oracle")


def exact_mwis_pruned(items, k: int) -> Solution:
    """Branch and bound; the bound adds the heaviest remaining weights."""
    items = sorted(items, key=lambda it: (-it.weight, it.id))
    n = len(items)
    clash = [[intersects(a, b) for b in items] for a in items]
    best_w, best = 0.0, ()

    def rec(i, chosen, w):
        nonlocal best_w, best
        if w > best_w:
            best_w, best = w, tuple(chosen)
        slots = k - len(chosen)
        if i >= n or slots == 0:
            return
        # items are sorted by weight, so the next `slots` items bound the rest
        if w + math.fsum(it.weight for it in items[i:i + slots]) <= best_w:
            return
        if not any(clash[i][j] for j in chosen):
            chosen.append(i)
            rec(i + 1, chosen, w + items[i].weight)
            chosen.pop()
        rec(i + 1, chosen, w)

    rec(0, [], 0.0)
    return Solution(tuple(items[i] for i in best), "oracle-bb")
