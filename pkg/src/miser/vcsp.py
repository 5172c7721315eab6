"""Arity-2 valued CSP with a tree-decomposition dynamic program.

Revenues are floats; ``NEG_INF`` (IEEE -inf) marks forbidden combinations and
absorbs under addition.  Nothing in here ever subtracts revenues, so NaN
cannot appear.

Ties between optimal assignments are broken towards the lexicographically
smallest vector of domain positions (variable 0 first).  The DP gets this for
free by carrying a secondary, additive key: position ``p`` of variable ``i``
contributes ``p * B**(n-1-i)`` with ``B`` larger than every domain.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

NEG_INF = float("-inf")

Graph = dict  # vertex -> set of neighbours

BRUTE_FORCE_LIMIT = 10**7


def hard(pred: Callable[[object, object], bool]) -> Callable[[object, object], float]:
    """Turn a compatibility predicate into a 0 / -inf revenue function."""

    def revenue(a, b):
        return 0.0 if pred(a, b) else NEG_INF

    return revenue


@dataclass
class VcspInstance:
    domains: list  # list of value lists, one per variable
    unary: list = None  # unary[i][p]: revenue of the p-th value of variable i
    binary: dict = field(default_factory=dict)  # (u, v) with u < v -> f(value_u, value_v)
    names: list = None  # external label of each variable

    def __post_init__(self):
        n = len(self.domains)
        self.domains = [list(d) for d in self.domains]
        if any(not d for d in self.domains):
            raise ValueError("every domain must be nonempty")
        if self.unary is None:
            self.unary = [[0.0] * len(d) for d in self.domains]
        if self.names is None:
            self.names = list(range(n))
        binary, self.binary = self.binary, {}
        for (u, v), f in binary.items():
            self.add_binary(u, v, f)

    @property
    def n(self) -> int:
        return len(self.domains)

    def add_unary(self, u: int, f: Callable[[object], float]) -> None:
        self.unary[u] = [r + f(a) for r, a in zip(self.unary[u], self.domains[u])]

    def add_binary(self, u: int, v: int, f: Callable[[object, object], float]) -> None:
        if u == v:
            self.add_unary(u, lambda a: f(a, a))
            return
        if u > v:
            u, v, f = v, u, _swapped(f)
        old = self.binary.get((u, v))
        self.binary[(u, v)] = f if old is None else _summed(old, f)

    def revenue(self, values: Sequence) -> float:
        """Independent evaluation of ``f(u)`` for an assignment given as values."""
        total = 0.0
        for i, a in enumerate(values):
            total += self.unary[i][self.domains[i].index(a)]
        for (u, v), f in self.binary.items():
            total += f(values[u], values[v])
        return total

    def restrict(self, keep: Sequence[int]) -> "VcspInstance":
        """Sub-instance on the variables ``keep``; constraints leaving it are dropped."""
        keep = sorted(keep)
        pos = {v: i for i, v in enumerate(keep)}
        binary = {
            (pos[u], pos[v]): f for (u, v), f in self.binary.items() if u in pos and v in pos
        }
        return VcspInstance(
            [self.domains[v] for v in keep],
            [list(self.unary[v]) for v in keep],
            binary,
            [self.names[v] for v in keep],
        )


def _swapped(f):
    return lambda a, b: f(b, a)


def _summed(f, g):
    return lambda a, b: f(a, b) + g(a, b)


def gaifman(inst: VcspInstance) -> Graph:
    g = {v: set() for v in range(inst.n)}
    for u, v in inst.binary:
        g[u].add(v)
        g[v].add(u)
    return g


@dataclass
class TreeDecomposition:
    bags: list  # node -> frozenset of vertices
    parent: list  # node -> parent node, -1 for the root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self) -> list:
        ch = [[] for _ in self.bags]
        for node, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(node)
        return ch

    def root(self) -> int:
        return self.parent.index(-1)


def min_fill_decomposition(g: Graph) -> TreeDecomposition:
    """Decomposition from a min-fill elimination order (ties: degree, then label)."""
    adj = {v: set(ns) for v, ns in g.items()}
    order, bags = [], []
    remaining = set(adj)
    while remaining:
        best = None
        for v in remaining:
            ns = adj[v]
            fill = sum(1 for a in ns for b in ns if a < b and b not in adj[a])
            key = (fill, len(ns), v)
            if best is None or key < best:
                best = key
        v = best[2]
        ns = adj[v]
        for a in ns:
            adj[a] |= ns - {a}
            adj[a].discard(v)
        order.append(v)
        bags.append(frozenset(ns | {v}))
        remaining.discard(v)
        del adj[v]

    when = {v: i for i, v in enumerate(order)}
    parent = [-1] * len(order)
    roots = []
    for i, v in enumerate(order):
        later = [when[u] for u in bags[i] if u != v]
        if later:
            parent[i] = min(later)
        else:
            roots.append(i)
    # stitch the component trees into one path of roots
    for a, b in zip(roots, roots[1:]):
        parent[a] = b
    return TreeDecomposition(bags, parent)


def single_bag_decomposition(g: Graph) -> TreeDecomposition:
    return TreeDecomposition([frozenset(g)], [-1])


def validate_decomposition(g: Graph, td: TreeDecomposition) -> bool:
    nodes = len(td.bags)
    if len(td.parent) != nodes:
        return False
    if not g:
        return True
    if td.parent.count(-1) != 1:
        return False
    # parent links must reach the root without cycles
    for start in range(nodes):
        seen, x = set(), start
        while x != -1:
            if x in seen or not 0 <= x < nodes:
                return False
            seen.add(x)
            x = td.parent[x]
    vertices = set(g)
    if any(not set(b) <= vertices for b in td.bags):
        return False
    for v in vertices:
        holders = [i for i, b in enumerate(td.bags) if v in b]
        if not holders:
            return False
        tops = [i for i in holders if td.parent[i] == -1 or v not in td.bags[td.parent[i]]]
        if len(tops) != 1:
            return False
    for u, ns in g.items():
        for v in ns:
            if u < v and not any(u in b and v in b for b in td.bags):
                return False
    return True


def _tie_weights(inst: VcspInstance) -> list:
    base = max((len(d) for d in inst.domains), default=1) + 1
    n = inst.n
    return [base ** (n - 1 - i) for i in range(n)]


def solve_dp(inst: VcspInstance, td: TreeDecomposition) -> tuple[float, tuple]:
    """Maximum revenue and a maximising assignment (tuple of values)."""
    n = inst.n
    if n == 0:
        return 0.0, ()
    tie = _tie_weights(inst)

    # every constraint is charged to exactly one node
    home_u = {}
    for v in range(n):
        for i, b in enumerate(td.bags):
            if v in b:
                home_u[v] = i
                break
    local_u = [[] for _ in td.bags]
    for v, i in home_u.items():
        local_u[i].append(v)
    local_b = [[] for _ in td.bags]
    for (u, v), f in inst.binary.items():
        for i, b in enumerate(td.bags):
            if u in b and v in b:
                local_b[i].append((u, v, f))
                break
        else:
            raise ValueError(f"decomposition misses constraint {(u, v)}")

    children = td.children()
    bag_vars = [sorted(b) for b in td.bags]
    root = td.root()
    post = []
    stack = [root]
    while stack:
        x = stack.pop()
        post.append(x)
        stack.extend(children[x])
    post.reverse()

    # table[x]: separator-with-parent assignment -> (value, tiebreak, bag assignment)
    table = [None] * len(td.bags)
    for x in post:
        vars_x = bag_vars[x]
        idx = {v: i for i, v in enumerate(vars_x)}
        p = td.parent[x]
        sep = [v for v in vars_x if p >= 0 and v in td.bags[p]]
        sep_idx = [idx[v] for v in sep]
        child_info = []
        for c in children[x]:
            csep = [v for v in bag_vars[c] if v in td.bags[x]]
            child_info.append(([idx[v] for v in csep], table[c]))
        best = {}
        for a in product(*(range(len(inst.domains[v])) for v in vars_x)):
            val = 0.0
            key = 0
            for v in local_u[x]:
                pv = a[idx[v]]
                val += inst.unary[v][pv]
                key += pv * tie[v]
            for u, v, f in local_b[x]:
                val += f(inst.domains[u][a[idx[u]]], inst.domains[v][a[idx[v]]])
            for cidx, ctab in child_info:
                cv, ck, _ = ctab[tuple(a[i] for i in cidx)]
                val += cv
                key += ck
            s = tuple(a[i] for i in sep_idx)
            cur = best.get(s)
            if cur is None or val > cur[0] or (val == cur[0] and key < cur[1]):
                best[s] = (val, key, a)
        table[x] = best

    # top-down reconstruction
    (val, _, a_root), = table[root].values()
    if val == NEG_INF:
        # every assignment ties; the lexicographic minimum is all first values
        return val, tuple(d[0] for d in inst.domains)
    pos = {}
    stack = [(root, a_root)]
    while stack:
        x, a = stack.pop()
        for v, pv in zip(bag_vars[x], a):
            pos[v] = pv
        for c in children[x]:
            key = tuple(a[bag_vars[x].index(v)] for v in bag_vars[c] if v in td.bags[x])
            stack.append((c, table[c][key][2]))
    return val, tuple(inst.domains[v][pos[v]] for v in range(n))


def solve(inst: VcspInstance) -> tuple[float, tuple]:
    return solve_dp(inst, min_fill_decomposition(gaifman(inst)))


def brute_force(inst: VcspInstance) -> tuple[float, tuple]:
    """Exhaustive maximum with the same tie-break as :func:`solve_dp`."""
    if inst.n == 0:
        return 0.0, ()
    if math.prod(len(d) for d in inst.domains) > BRUTE_FORCE_LIMIT:
        raise ValueError("instance too large for brute force")
    best_val, best = None, None
    for a in product(*inst.domains):
        val = inst.revenue(a)
        if best_val is None or val > best_val:
            best_val, best = val, a
    return best_val, tuple(best)


def bfs_layers(g: Graph, component: Sequence[int]) -> dict:
    """Distance from the smallest vertex of ``component``."""
    src = min(component)
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in sorted(g[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def components(g: Graph) -> list:
    seen, out = set(), []
    for v in sorted(g):
        if v in seen:
            continue
        comp = sorted(bfs_layers(g, [v]))
        seen.update(comp)
        out.append(comp)
    return out
