"""Independent sets of axis-parallel rectangles and segments with at most k items."""
from .geom import EMPTY, Rect, Seg, Solution, intersects, verify_independent
from .grid import Grid, enclose
from .oracle import OracleBudget, OracleBudgetExceeded, exact_mwis, exact_mwis_pruned
from .rect_pas import RectStats, build_good_grid, solve_rect
from .seg_fpt import build_hitting_grid, min_point_cover, round_weights, solve_exact, solve_seg_pas
from .vcsp import VcspInstance, brute_force, min_fill_decomposition, solve, solve_dp

__all__ = [
    "EMPTY", "Rect", "Seg", "Solution", "intersects", "verify_independent",
    "Grid", "enclose",
    "OracleBudget", "OracleBudgetExceeded", "exact_mwis", "exact_mwis_pruned",
    "RectStats", "build_good_grid", "solve_rect",
    "build_hitting_grid", "min_point_cover", "round_weights", "solve_exact", "solve_seg_pas",
    "VcspInstance", "brute_force", "min_fill_decomposition", "solve", "solve_dp",
]
