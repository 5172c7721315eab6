"""Exact segment solver step by step, then the weight-rounding variant.

Run: python demos/02_segments.py [seed]
"""
import sys

from miser.files import gen_instance
from miser.grid import enclose
from miser.oracle import exact_mwis
from miser.seg_fpt import (
    WeightClasses,
    build_hitting_grid,
    grid_family,
    solve_exact,
    solve_nice,
    solve_seg_pas,
    weight_order,
)

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 4
segs = gen_instance("seg", 10, 30, "classes=1,2,3,5", seed).items
k = 2
for s in segs:
    kind = "H" if s.horizontal else "V"
    print(f"  {s.id}: {kind} at {s.c}, span [{s.lo}, {s.hi}], weight {s.weight}")

classes = WeightClasses.from_weights(segs)
lightest = weight_order(segs)[0]
print(f"\nlightest segment {lightest.id}; keep everything from it on in weight order")

# A grid of at most (k+1)^2 lines hitting every segment, if one with k lines can exist.
g = build_hitting_grid(segs, k)
if g is None:
    print("no hitting grid with k lines exists, so this branch is skipped")
else:
    g = enclose(g, segs)
    print(f"hitting grid: xs={g.xs} ys={g.ys}")
    nice = [s.id for s in segs if g.respects(s)]
    print(f"segments through a grid point: {nice}")
    base = solve_nice(segs, classes, k, g)
    print(f"best using only those: {sorted(base.ids)} weight {base.weight:g}")
    fam = grid_family(segs, classes, k, g)
    print(f"refined grids: {len(fam)} (each adds at most {k * k} lines)")
    best = max((solve_nice(segs, classes, k, c.grid) for c in fam), key=lambda s: s.weight)
    print(f"best over the refined grids: {sorted(best.ids)} weight {best.weight:g}")

sol = solve_exact(segs, k)
opt = exact_mwis(segs, k)
print(f"\nsolve_exact {sorted(sol.ids)} weight {sol.weight:g}; optimum weight {opt.weight:g}")

weighted = gen_instance("seg", 10, 30, "uniform=1..50", seed).items
for eps in (0.3, 0.5):
    pas = solve_seg_pas(weighted, k, eps)
    ref = exact_mwis(weighted, k).weight
    print(f"eps={eps}: weight {pas.weight:g} vs optimum {ref:g} (ratio {pas.weight / ref:.3f})")
