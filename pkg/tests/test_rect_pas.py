import random

import pytest

from conftest import INSTANCE_A, random_instances
from miser.ctype import CombType, realized_types, rect_type
from miser.geom import Rect, Solution, verify_independent
from miser.grid import Grid
from miser.oracle import exact_mwis
from miser.rect_pas import (
    BOTTOM,
    RectStats,
    baker_split,
    build_good_grid,
    build_vcsp,
    decode,
    layer_count,
    preprocess,
    solve_baker,
    solve_rect,
)
from miser.vcsp import VcspInstance, hard, solve

squares = [Rect(i, 2 * i, 2 * i + 1, 0, 1, 1) for i in range(5)]


def test_preprocess_examples():
    same = [Rect(i, i, i, 0, 0, 4) for i in range(3)]
    assert preprocess(same, same[0], 0.5, 2) == same
    top = Rect("top", 0, 0, 0, 0, 10)
    rs = [top, Rect("w2", 1, 1, 0, 0, 2), Rect("w3", 2, 2, 0, 0, 3), Rect("w11", 3, 3, 0, 0, 11)]
    assert [r.id for r in preprocess(rs, top, 0.5, 2)] == ["top", "w3"]


def test_good_grid_examples():
    g = build_good_grid([Rect(0, 0, 2, 1, 3)], 1, 0.5)
    assert g == Grid((2,), (3,))
    ga = build_good_grid(INSTANCE_A, 2, 0.5)
    assert isinstance(ga, Grid) and ga.size() <= 16
    assert all(ga.points_in_rect(r) for r in INSTANCE_A)
    fb = build_good_grid(squares, 1, 0.5)
    assert isinstance(fb, Solution) and fb.weight == 5 and fb.is_independent()


def test_build_vcsp_examples():
    g = Grid((0, 1, 2, 3), (0, 1, 2, 3))
    t0, t1, far = CombType(0, 0, 0, 0), CombType(1, 1, 1, 1), CombType(3, 3, 3, 3)
    r = {t: [Rect(str(t), 0, 0, 0, 0)] for t in (t0, t1, far)}
    single = build_vcsp((t0,), r, g)
    assert single.n == 1 and single.binary == {} and single.domains[0][-1] is BOTTOM
    assert len(build_vcsp((t0, t1), r, g).binary) == 1
    assert build_vcsp((t0, far), r, g).binary == {}
    with pytest.raises(ValueError):
        build_vcsp((CombType(2, 2, 2, 2),), r, g)


def path_instance(n):
    inst = VcspInstance([[1, None]] * n, [[1, 0]] * n)
    for i in range(n - 1):
        inst.add_binary(i, i + 1, hard(lambda a, b: True))
    return inst


def test_baker_split_examples():
    edgeless = VcspInstance([[1, None]] * 2, [[1, 0]] * 2)
    for split in baker_split(edgeless, 0.5):
        (r0, sub0), (r1, sub1) = split.options
        assert sub0.n == 0 and sub1.n == 1
    (split,) = baker_split(path_instance(4), 0.5)
    assert layer_count(0.5) == 2
    kept = {r: sub.names for r, sub in split.options}
    assert kept == {0: [1, 3], 1: [0, 2]}
    (one,) = baker_split(path_instance(1), 0.3)
    assert all(sub.names == [0] for r, sub in one.options if r != 0)


def test_solve_rect_examples():
    sol = solve_rect(INSTANCE_A, 2, 0.5)
    assert sol.weight == 9 and sol.is_independent()
    single = Rect("x", 0, 3, 0, 3, 7.5)
    for k in (1, 3):
        assert solve_rect([single], k, 0.3).items == (single,)
    assert solve_rect(squares, 1, 0.5).weight >= 1
    assert solve_rect([], 2, 0.5).weight == 0
    with pytest.raises(ValueError):
        solve_rect(INSTANCE_A, 0, 0.5)


def test_stats_are_filled():
    stats = RectStats()
    solve_rect(INSTANCE_A, 2, 0.5, stats=stats)
    assert stats.weight_guesses >= 3 and stats.type_guesses > 0 and stats.widths


def test_embedding_matches_weight_and_decodes_independent():
    """A known independent set embeds with revenue equal to its weight."""
    rng = random.Random(11)
    for _, rs in random_instances("rect", 200, 10, 60, "uniform=1..20", seed=7):
        g = build_good_grid(rs, 3, 0.99)
        if not isinstance(g, Grid):
            continue
        s = exact_mwis(rs, rng.randint(1, 3))
        if not s.items:
            continue
        realized = realized_types(rs, g)
        guess = tuple(sorted(rect_type(g, r) for r in s.items))
        inst = build_vcsp(guess, realized, g)
        chosen = {rect_type(g, r): r for r in s.items}
        values = [chosen[t] for t in inst.names]
        assert inst.revenue(values) == s.weight
        rev, vals = solve(inst)
        assert rev >= s.weight
        picked = decode(vals)
        assert verify_independent(picked) and len(picked) <= len(guess)


def test_solve_rect_contract_and_monotone():
    for _, rs in random_instances("rect", 60, 10, 100, "uniform=1..20", seed=8):
        for eps in (0.3, 0.5):
            ws = []
            for k in (1, 2, 3):
                sol = solve_rect(rs, k, eps)
                assert sol.is_independent()
                assert sol.weight >= (1 - eps) * exact_mwis(rs, k).weight * (1 - 1e-9)
                ws.append(sol.weight)
            assert ws == sorted(ws)


def test_solve_baker_soundness_on_small_instances():
    for _, rs in random_instances("rect", 80, 8, 40, "uniform=1..20", seed=9):
        g = build_good_grid(rs, 3, 0.99)
        if not isinstance(g, Grid):
            continue
        realized = realized_types(rs, g)
        guess = tuple(list(realized)[:8])
        inst = build_vcsp(guess, realized, g)
        for eps in (0.3, 0.5):
            full, _ = solve(inst)
            reduced, _ = solve_baker(inst, eps)
            assert reduced >= (1 - eps) * full - 1e-9
