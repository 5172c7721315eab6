"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal.

Run alone with ``pytest tests/test_acceptance.py -s``; lines are printed even
without ``-s``.
"""
import csv
import itertools
import random
import statistics
import time
from collections import defaultdict

import pytest

from conftest import random_instances
from miser.cli import run_cli
from miser.geom import Rect, Seg, Solution, verify_independent
from miser.grid import Grid
from miser.oracle import exact_mwis
from miser.rect_pas import build_good_grid, preprocess, solve_baker, solve_rect, build_vcsp
from miser.ctype import realized_types, enumerate_type_guesses
from miser.seg_fpt import build_hitting_grid, min_point_cover, round_weights, solve_exact, solve_seg_pas
from miser.vcsp import (
    VcspInstance,
    brute_force,
    gaifman,
    hard,
    min_fill_decomposition,
    single_bag_decomposition,
    solve_dp,
    validate_decomposition,
)

REL = 1e-9


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_rect_pas(report):
    t0, runs, worst, bad = time.perf_counter(), 0, 1.0, []
    for i, rs in random_instances("rect", 200, 12, 100, "uniform=1..20", seed=101):
        for k in (1, 2, 3):
            opt = exact_mwis(rs, k).weight
            for eps in (0.3, 0.5):
                sol = solve_rect(rs, k, eps)
                runs += 1
                worst = min(worst, sol.weight / opt)
                if not verify_independent(sol.items) or sol.weight < (1 - eps) * opt * (1 - REL):
                    bad.append((i, k, eps))
    secs = time.perf_counter() - t0
    report(1, not bad, f"{runs} runs, worst ratio {worst:.4f}, {secs:.1f}s, violations {bad[:5]}")


def test_criterion_2_seg_exact(report):
    t0, runs, bad = time.perf_counter(), 0, []
    for i, ss in random_instances("seg", 200, 12, 60, "classes=1,2,3,5", seed=102):
        for k in (1, 2, 3):
            sol = solve_exact(ss, k)
            runs += 1
            if sol.weight != exact_mwis(ss, k).weight or len(sol) > k or not sol.is_independent():
                bad.append((i, k))
    secs = time.perf_counter() - t0
    report(2, not bad, f"{runs} runs, mismatches {len(bad)} {bad[:5]}, {secs:.1f}s")


def test_criterion_3_seg_pas(report):
    t0, runs, worst, bad = time.perf_counter(), 0, 1.0, []
    for i, ss in random_instances("seg", 200, 12, 60, "uniform=1..50", seed=103):
        for k in (1, 2, 3):
            opt = exact_mwis(ss, k).weight
            for eps in (0.3, 0.5):
                sol = solve_seg_pas(ss, k, eps)
                runs += 1
                worst = min(worst, sol.weight / opt)
                if len(sol) > k or not sol.is_independent() or sol.weight < (1 - eps) * opt * (1 - REL):
                    bad.append((i, k, eps))
    secs = time.perf_counter() - t0
    report(3, not bad, f"{runs} runs, worst ratio {worst:.4f}, {secs:.1f}s, violations {bad[:5]}")


def _random_vcsp(rng):
    n = rng.randint(0, 8)
    domains = [list(range(rng.randint(1, 4))) for _ in range(n)]
    inst = VcspInstance(domains, [[rng.randint(0, 10) for _ in d] for d in domains])
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < 0.4:
            bad = {(a, b) for a in domains[u] for b in domains[v] if rng.random() < 0.3}
            inst.add_binary(u, v, hard(lambda a, b, bad=bad: (a, b) not in bad))
    return inst


def test_criterion_4_vcsp(report):
    rng = random.Random(104)
    problems = []
    for i in range(500):
        inst = _random_vcsp(rng)
        g = gaifman(inst)
        td = min_fill_decomposition(g)
        if not validate_decomposition(g, td):
            problems.append((i, "invalid decomposition"))
            continue
        dp = solve_dp(inst, td)
        if dp != brute_force(inst):
            problems.append((i, "dp != brute force"))
        if solve_dp(inst, single_bag_decomposition(g)) != dp:
            problems.append((i, "depends on decomposition"))
        if inst.revenue(dp[1]) != dp[0]:
            problems.append((i, "assignment does not re-evaluate"))
    report(4, not problems, f"500 instances, problems {problems[:5]}")


def test_criterion_5_good_grid(report):
    rng = random.Random(105)
    grids = fallbacks = 0
    problems = []
    for i in range(500):
        n = rng.randint(1, 12)
        side = rng.choice([3, 10, 100])  # small sides force the independent-set branch
        rs = []
        for j in range(n):
            x, y = rng.randint(0, 100), rng.randint(0, 100)
            rs.append(Rect(j, x, x + rng.randint(0, side), y, y + rng.randint(0, side), rng.randint(1, 20)))
        k, eps = rng.randint(1, 3), rng.choice([0.15, 0.25])
        band = preprocess(rs, max(rs, key=lambda r: (r.weight, r.id)), eps, k)
        res = build_good_grid(band, k, eps)
        if isinstance(res, Grid):
            grids += 1
            if res.size() > 2 * k * k / eps or not all(res.points_in_rect(r) for r in band):
                problems.append((i, "bad grid"))
        else:
            fallbacks += 1
            if not res.is_independent() or res.weight < exact_mwis(band, k).weight:
                problems.append((i, "weak fallback"))
    report(5, not problems, f"{grids} grids, {fallbacks} independent-set fallbacks, problems {problems[:5]}")


def _exhaustive_cover(ivs):
    for m in range(len(ivs) + 1):
        for pts in itertools.combinations(range(11), m):
            if all(any(lo <= p <= hi for p in pts) for lo, hi in ivs):
                return m


def test_criterion_6_hitting_grid(report):
    problems, accepted = [], 0
    for i, ss in random_instances("seg", 500, 12, 60, "uniform=1..5", seed=106):
        k = 1 + i % 3
        g = build_hitting_grid(ss, k)
        if g is None:
            continue
        accepted += 1
        if g.size() > (k + 1) ** 2 or not all(any(g.hits(s)) for s in ss):
            problems.append(i)
    staggered = [Seg.v(i, 2 * i, 10 * i, 10 * i + 1) for i in range(5)]
    rejects = build_hitting_grid(staggered, 1) is None
    # every multiset of up to 2 intervals, then random sets of 3..8
    all_ivs = [(a, b) for a in range(11) for b in range(a, 11)]
    cover_sets = [c for m in range(3) for c in itertools.combinations_with_replacement(all_ivs, m)]
    rng = random.Random(106)
    for _ in range(3000):
        cover_sets.append([tuple(sorted((rng.randint(0, 10), rng.randint(0, 10)))) for _ in range(rng.randint(3, 8))])
    cover_bad = sum(1 for ivs in cover_sets if min_point_cover(ivs)[0] != _exhaustive_cover(ivs))
    ok = not problems and rejects and not cover_bad
    report(
        6, ok,
        f"{accepted}/500 accepted grids valid={not problems}, staggered rejected={rejects}, "
        f"point cover checked on {len(cover_sets)} sets, mismatches {cover_bad}",
    )


def test_criterion_7_rounding(report):
    rng = random.Random(107)
    bad = 0
    for _ in range(10_000):
        wmax, eps, k = rng.uniform(1, 1000), rng.uniform(0.01, 0.99), rng.randint(1, 5)
        w = rng.uniform(eps * wmax / k, wmax)
        if not eps * wmax / k < w <= wmax:
            continue
        top = Seg.h("top", 0, 1, 0, wmax)
        out, ladder = round_weights([top, Seg.h("x", 0, 1, 1, w)], top, eps, k)
        wp = [s.weight for s in out if s.id == "x"]
        if len(wp) != 1 or not ((1 - eps) * w < wp[0] <= w * (1 + REL)) or wp[0] not in ladder.values:
            bad += 1
    report(7, bad == 0, f"10000 triples, violations {bad}")


def test_criterion_8_baker(report):
    checked, bad = 0, []
    for i, rs in random_instances("rect", 300, 10, 40, "uniform=1..20", seed=108):
        g = build_good_grid(rs, 3, 0.99)
        if not isinstance(g, Grid):
            continue
        realized = realized_types(rs, g)
        for guess in itertools.islice(enumerate_type_guesses(realized, 8), 1, None, 7):
            inst = build_vcsp(guess, realized, g)
            if inst.n > 8:
                continue
            full = solve_dp(inst, min_fill_decomposition(gaifman(inst)))[0]
            for eps in (0.3, 0.5):
                checked += 1
                if solve_baker(inst, eps / 2)[0] < (1 - eps / 2) * full - REL:
                    bad.append((i, eps))
            if checked >= 2000:
                break
        if checked >= 2000:
            break
    report(8, checked > 0 and not bad, f"{checked} reduced solves, violations {bad[:5]}")


def test_criterion_9_width_report(report, tmp_path):
    out, widths = tmp_path / "bench.csv", tmp_path / "widths.csv"
    code = run_cli(["bench", "--suite", "desk", "--csv", str(out), "--widths", str(widths)])
    rows = list(csv.DictReader(widths.open())) if widths.exists() else []
    by_eps = defaultdict(list)
    for r in rows:
        by_eps[r["eps"]].append(int(r["width"]))
    summary = ", ".join(
        f"eps={e}: {len(ws)} instances, max width {max(ws)}, mean {statistics.mean(ws):.2f}"
        for e, ws in sorted(by_eps.items())
    )
    report(9, code == 0 and bool(rows), f"reported only; {summary}")
