"""Walk through the rectangle pipeline on three small rectangles.

Run: python demos/01_rectangles.py [output.svg]
"""
import sys

from miser.ctype import enumerate_type_guesses, realized_types
from miser.geom import Rect
from miser.oracle import exact_mwis
from miser.rect_pas import RectStats, build_good_grid, build_vcsp, solve_rect
from miser.svg import emit_svg
from miser.vcsp import gaifman, solve

rects = [
    Rect("R1", 0, 2, 0, 2, 5),
    Rect("R2", 3, 5, 0, 2, 4),
    Rect("R3", 1, 4, 1, 3, 6),
]
k, eps = 2, 0.5

# 1. A grid in which every rectangle contains a grid point.
grid = build_good_grid(rects, k, eps / 2)
print("grid lines  x:", grid.xs, " y:", grid.ys)

# 2. Rectangles grouped by the set of grid points they contain.
realized = realized_types(rects, grid)
for t, members in realized.items():
    print(f"type {sorted(t.points)} -> {[r.id for r in members]}")

# 3. Each guess of types becomes a small constraint problem.
for guess in enumerate_type_guesses(realized, k):
    if not guess:
        continue
    inst = build_vcsp(guess, realized, grid)
    rev, values = solve(inst)
    picked = [r.id for r in values if r is not None]
    print(f"guess of {len(guess)} type(s): {inst.n} variables, "
          f"{sum(len(v) for v in gaifman(inst).values()) // 2} constraints -> {picked} revenue {rev:g}")

# 4. The full pipeline against the exhaustive optimum.
stats = RectStats()
sol = solve_rect(rects, k, eps, stats=stats)
opt = exact_mwis(rects, k)
print(f"solve_rect: {sorted(sol.ids)} weight {sol.weight:g}; optimum {sorted(opt.ids)} weight {opt.weight:g}")
print(f"weight guesses {stats.weight_guesses}, type guesses {stats.type_guesses}, "
      f"max reduced width {max(w for _, w in stats.widths)}")

out = sys.argv[1] if len(sys.argv) > 1 else "rectangles.svg"
with open(out, "w", encoding="utf-8") as fh:
    fh.write(emit_svg(rects, grid, sol))
print("picture written to", out)
