"""Histogram of the tree-decomposition widths met by the rectangle solver.

Run: python demos/03_width_report.py [instances]
"""
import sys
from collections import Counter

from miser.files import gen_instance
from miser.rect_pas import RectStats, solve_rect

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
for eps in (0.2, 0.3, 0.5):
    for k in (2, 3, 4):
        stats = RectStats()
        for seed in range(count):
            solve_rect(gen_instance("rect", 12, 100, "uniform=5..10", seed).items, k, eps, stats=stats)
        hist = Counter(w for _, w in stats.widths)
        largest = max(n for n, _ in stats.widths)
        print(f"eps={eps} k={k}: {len(stats.widths)} reduced instances (up to {largest} variables), "
              f"width histogram {dict(sorted(hist.items()))}")
