"""Command line entry point: ``miser <subcommand> ...``.

Exit codes: 0 success, 1 infeasible input or parse error, 2 budget abort.
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .ctype import GuessBudgetExceeded
from .files import (
    InstanceError,
    SolutionFile,
    gen_instance,
    parse_instance,
    parse_solution,
    verify_solution,
    write_instance,
    write_solution,
)
from .grid import enclose
from .oracle import OracleBudget, OracleBudgetExceeded, exact_mwis
from .rect_pas import DEFAULT_GUESS_CAP, RectStats, build_good_grid, solve_rect
from .seg_fpt import DEFAULT_FAMILY_CAP, FamilyBudgetExceeded, build_hitting_grid, solve_exact, solve_seg_pas
from .svg import emit_svg

log = logging.getLogger("miser")

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2
BUDGET_ERRORS = (GuessBudgetExceeded, FamilyBudgetExceeded, OracleBudgetExceeded)
BENCH_COLUMNS = ("instance", "algo", "k", "eps", "weight", "opt", "ratio", "millis")
WIDTH_COLUMNS = ("instance", "k", "eps", "variables", "width")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for budget aborts here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_eps(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="miser", description="Independent sets of rectangles and segments with few items.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("--kind", choices=("rect", "seg"), required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--coord-max", type=int, default=100)
    g.add_argument("--weights", default="uniform=1..20", help="uniform=LO..HI or classes=a,b,c")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    for name, help_ in (("solve-rect", "approximate opt_k for rectangles"),
                        ("solve-seg", "approximate or exact opt_k for segments"),
                        ("exact", "exhaustive opt_k")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--input", required=True)
        s.add_argument("--out", required=True)
        s.add_argument("-k", type=int, required=True)
        if name != "exact":
            s.add_argument("--eps", type=_positive_eps, default=0.5)
        s.add_argument("--budget", type=int, default=None)
        if name == "solve-seg":
            s.add_argument("--exact", action="store_true", help="run the exact algorithm, ignore --eps")

    v = sub.add_parser("verify", help="check a solution file against its instance")
    v.add_argument("--instance", "--input", dest="instance", required=True)
    v.add_argument("--solution", required=True)

    b = sub.add_parser("bench", help="run a fixed suite against the oracle")
    b.add_argument("--suite", choices=("desk",), default="desk")
    b.add_argument("--csv", required=True)
    b.add_argument("--widths", default=None, help="CSV of min-fill widths of reduced instances")
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--budget", type=int, default=OracleBudget().max_subsets)
    b.add_argument("--seed", type=int, default=0)

    pl = sub.add_parser("plot", help="render an instance as SVG")
    pl.add_argument("--input", required=True)
    pl.add_argument("--out", required=True)
    pl.add_argument("--solution", default=None)
    pl.add_argument("--grid", action="store_true", help="draw the piercing or hitting grid")
    pl.add_argument("-k", type=int, default=2)
    pl.add_argument("--eps", type=_positive_eps, default=0.5)
    return p


# ---------------------------------------------------------------- commands


def _cmd_gen(a):
    if a.n < 0 or a.coord_max < 1:
        raise InstanceError("need n >= 0 and coord-max >= 1")
    try:
        inst = gen_instance(a.kind, a.n, a.coord_max, a.weights, a.seed)
    except ValueError as e:
        raise InstanceError(str(e)) from None
    write_instance(inst, a.out)
    return EXIT_OK


def _solve(a, algo, run):
    if a.k < 1:
        raise InstanceError("k must be at least 1")
    inst = parse_instance(a.input)
    expected = {"solve-rect": "rect", "solve-seg": "seg"}.get(a.cmd)
    if expected and inst.kind != expected:
        raise InstanceError(f"{a.cmd} needs a {expected!r} instance, got {inst.kind!r}")
    t0 = time.perf_counter()
    sol = run(inst.items)
    ms = (time.perf_counter() - t0) * 1000
    eps = getattr(a, "eps", None)
    write_solution(SolutionFile.from_solution(sol, inst, a.input, algo, a.k, eps, round(ms, 3)), a.out)
    log.info("%s: %d items, weight %g, %.1f ms", algo, len(sol), sol.weight, ms)
    print(f"weight {sol.weight:g} items {len(sol)}")
    return EXIT_OK


def _cmd_solve_rect(a):
    cap = a.budget or DEFAULT_GUESS_CAP
    return _solve(a, "rect-pas", lambda items: solve_rect(items, a.k, a.eps, guess_cap=cap))


def _cmd_solve_seg(a):
    cap = a.budget or DEFAULT_FAMILY_CAP
    if a.exact:
        a.eps = None
        return _solve(a, "seg-exact", lambda items: solve_exact(items, a.k, family_cap=cap))
    return _solve(a, "seg-pas", lambda items: solve_seg_pas(items, a.k, a.eps, family_cap=cap))


def _cmd_exact(a):
    budget = OracleBudget(a.budget) if a.budget else OracleBudget()
    return _solve(a, "oracle", lambda items: exact_mwis(items, a.k, budget))


def _cmd_verify(a):
    inst = parse_instance(a.instance)
    sf = parse_solution(a.solution)
    problems = verify_solution(inst, sf)
    for msg in problems:
        print(f"FAIL: {msg}", file=sys.stderr)
    if problems:
        return EXIT_FAIL
    print(f"ok: {len(sf.ids)} items, weight {sf.weight:g}")
    return EXIT_OK


def _cmd_plot(a):
    inst = parse_instance(a.input)
    sol = None
    if a.solution:
        sf = parse_solution(a.solution)
        table = inst.by_id()
        from .geom import Solution
        sol = Solution(tuple(table[i] for i in sf.ids if i in table))
    grid = None
    if a.grid and inst.items:
        if inst.kind == "rect":
            res = build_good_grid(inst.items, a.k, a.eps / 2)
            grid = None if hasattr(res, "items") else res
        else:
            res = build_hitting_grid(inst.items, a.k)
            grid = enclose(res, inst.items) if res is not None else None
        if grid is None:
            log.warning("no grid for k=%d; drawing items only", a.k)
    Path(a.out).write_text(emit_svg(inst.items, grid, sol), encoding="utf-8")
    return EXIT_OK


# ---------------------------------------------------------------- bench


def desk_suite(seed: int = 0) -> list:
    """(name, instance, algo, k, eps) jobs; small enough for the plain oracle."""
    jobs = []
    for i in range(6):
        inst = gen_instance("rect", 10, 100, "uniform=1..20", seed + i)
        for k in (1, 2, 3):
            for eps in (0.3, 0.5):
                jobs.append((f"rect-{seed + i}", inst, "rect-pas", k, eps))
    for i in range(4):
        inst = gen_instance("seg", 10, 40, "classes=1,2,3,5", seed + i)
        for k in (1, 2, 3):
            jobs.append((f"seg-w4-{seed + i}", inst, "seg-exact", k, None))
    for i in range(4):
        inst = gen_instance("seg", 10, 40, "uniform=1..50", seed + i)
        for k in (1, 2, 3):
            for eps in (0.3, 0.5):
                jobs.append((f"seg-{seed + i}", inst, "seg-pas", k, eps))
    return jobs


def run_job(job, oracle_budget: int):
    name, inst, algo, k, eps = job
    stats = RectStats()
    t0 = time.perf_counter()
    if algo == "rect-pas":
        sol = solve_rect(inst.items, k, eps, stats=stats)
    elif algo == "seg-exact":
        sol = solve_exact(inst.items, k)
    else:
        sol = solve_seg_pas(inst.items, k, eps)
    ms = (time.perf_counter() - t0) * 1000
    try:
        opt = exact_mwis(inst.items, k, OracleBudget(oracle_budget)).weight
    except OracleBudgetExceeded:
        opt = None
    row = {
        "instance": name,
        "algo": algo,
        "k": k,
        "eps": "" if eps is None else eps,
        "weight": sol.weight,
        "opt": "" if opt is None else opt,
        "ratio": "" if not opt else round(sol.weight / opt, 6),
        "millis": round(ms, 3),
    }
    widths = [{"instance": name, "k": k, "eps": eps, "variables": n, "width": w} for n, w in stats.widths]
    return row, widths


def _cmd_bench(a):
    jobs = desk_suite(a.seed)
    if a.threads > 1:
        with ProcessPoolExecutor(max_workers=a.threads) as pool:
            results = list(pool.map(run_job, jobs, [a.budget] * len(jobs)))
    else:
        results = [run_job(j, a.budget) for j in jobs]
    with open(a.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        for row, _ in results:
            w.writerow(row)
    if a.widths:
        with open(a.widths, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=WIDTH_COLUMNS)
            w.writeheader()
            for _, ws in results:
                w.writerows(ws)
    ratios = [r["ratio"] for r, _ in results if r["ratio"] != ""]
    if ratios:
        print(f"{len(results)} runs, worst ratio {min(ratios):.4f}")
    return EXIT_OK


COMMANDS = {
    "gen": _cmd_gen,
    "solve-rect": _cmd_solve_rect,
    "solve-seg": _cmd_solve_seg,
    "exact": _cmd_exact,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "plot": _cmd_plot,
}


def _setup_logging():
    level = os.environ.get("MISER_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def run_cli(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_FAIL
    except SystemExit as e:  # --help
        return EXIT_OK if e.code in (0, None) else EXIT_FAIL
    try:
        return COMMANDS[a.cmd](a)
    except BUDGET_ERRORS as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InstanceError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())
