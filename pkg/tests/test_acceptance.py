"""Acceptance gates for the whole package.

One test per criterion, in a fixed order; each prints a single PASS line
with its headline numbers (visible under pytest -s), and the final test
audits exact isometry of every embedding produced anywhere in this module.
Instance counts and time budgets are asserted, not aspirational.
"""

import time
from fractions import Fraction
from itertools import combinations
from statistics import median

import numpy as np

from conftest import (
    PLANTED7,
    RECT42,
    l1_points,
    path_metric,
    perturbed_planted,
    random_matrix_instance,
    random_tree_metric,
    star_metric,
    uniform_metric,
)
from rectiplane.metric import ops, verify_isometric
from rectiplane.oracle import oracle_embed, random_planar_instance
from rectiplane.planar import (
    classify_corner_distances,
    embed,
    RegionKind,
)
from rectiplane.quadrant import constrain_window, embed_free_component
from rectiplane.metric import MetricSpace, PlanePoint
from rectiplane.tightspan import tight_span4
from rectiplane.treenet import FirstFailure, build_tree_network

F = Fraction

# Every embedding produced through checked() is re-verified here; the final
# soundness test asserts this ledger saw real traffic and zero failures.
_audit = {"embeddable": 0, "total": 0, "failures": []}


def checked(ms):
    res = embed(ms)
    _audit["total"] += 1
    if res.embeddable:
        _audit["embeddable"] += 1
        ok, pair = verify_isometric(res.points, ms)
        if not ok:
            _audit["failures"].append((ms, pair))
    return res


def test_oracle_equivalence_at_desk_scale():
    start = time.perf_counter()
    instances = []
    for n in (3, 4, 5):
        for seed in range(110):
            ms, _ = random_planar_instance(n, 700 + 7 * seed + n, bound=12)
            instances.append(("planted", ms))
    for n in (4, 5):
        for seed in range(150):
            instances.append(("matrix", random_matrix_instance(n, 9000 + 3 * seed + n)))
    for n in (4, 5):
        for seed in range(100):
            instances.append(("tree", random_tree_metric(n, 400 + 5 * seed + n)))
    for n in (4, 5):
        for seed in range(130):
            ms = perturbed_planted(n, 71 + 11 * seed + n)
            if ms is not None:
                instances.append(("perturbed", ms))
    assert len(instances) >= 1000
    mismatches = []
    verdicts = {"yes": 0, "no": 0}
    for family, ms in instances:
        got = checked(ms).embeddable
        want = oracle_embed(ms)
        verdicts["yes" if want else "no"] += 1
        if got != want:
            mismatches.append((family, ms))
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert verdicts["yes"] > 100 and verdicts["no"] > 100
    assert elapsed < 300
    print(f"PASS oracle equivalence: {len(instances)} instances "
          f"({verdicts['yes']} yes / {verdicts['no']} no), "
          f"0 mismatches, {elapsed:.1f}s")


def test_planted_round_trip_at_scale():
    start = time.perf_counter()
    total = 0
    for n, count in ((10, 80), (50, 60), (200, 40), (1000, 20)):
        for seed in range(count):
            ms, _ = random_planar_instance(n, 17 * seed + n, bound=10 ** 6)
            res = checked(ms)
            assert res.embeddable, f"planted n={n} seed={seed} rejected"
            ok, _ = verify_isometric(res.points, ms)
            assert ok
            total += 1
    elapsed = time.perf_counter() - start
    assert total == 200
    assert elapsed < 120
    print(f"PASS planted round trip: 200 instances up to n=1000, "
          f"all verified, {elapsed:.1f}s")


def test_tree_criterion():
    for k in range(1, 51):
        res = checked(star_metric(k))
        assert res.embeddable == (k <= 4), f"star K1,{k}"
    import random

    for seed in range(12):
        rng = random.Random(seed)
        weights = [rng.randint(1, 9) for _ in range(rng.randint(1, 59))]
        assert checked(path_metric(weights)).embeddable
    print("PASS tree criterion: stars K1,k embeddable iff k <= 4 (k to 50); "
          "12 random paths embeddable")


def test_quadratic_scaling():
    sizes = (125, 250, 500, 1000, 2000)
    counts = []
    for n in sizes:
        ms, _ = random_planar_instance(n, n, bound=10 ** 6)
        ops.reset()
        res = checked(ms)
        assert res.embeddable
        counts.append(ops.value)
    exponent = float(np.polyfit(np.log(sizes), np.log(counts), 1)[0])
    assert exponent <= 2.3

    walls = {}
    for n in (500, 1000, 2000):
        runs = []
        for seed in range(5):
            ms, _ = random_planar_instance(n, 100 + seed, bound=10 ** 6)
            t0 = time.perf_counter()
            res = embed(ms)
            runs.append(time.perf_counter() - t0)
            assert res.embeddable
        walls[n] = median(runs)
    r21 = walls[2000] / walls[1000]
    r10 = walls[1000] / walls[500]
    assert r21 <= 5
    assert r10 <= 5
    print(f"PASS quadratic scaling: op exponent {exponent:.2f} <= 2.3; "
          f"wall ratios {r21:.2f} and {r10:.2f} <= 5")


def _small_witness(ms):
    for k in (4, 5, 6):
        if k > ms.n:
            break
        for idx in combinations(range(ms.n), k):
            if not oracle_embed(ms.submatrix(list(idx))):
                return idx
    return None


def test_six_point_coherence():
    pool = [uniform_metric(5)]
    for k in (5, 6, 7):
        pool.append(star_metric(k))
    for n in (4, 5, 6, 7, 8):
        for seed in range(30):
            pool.append(random_matrix_instance(n, 1300 + 13 * seed + n, lo=6, hi=14))
    for n in (6, 7, 8):
        for seed in range(25):
            ms = perturbed_planted(n, 5000 + 17 * seed + n)
            if ms is not None:
                pool.append(ms)
    for n in (6, 7, 8):
        for seed in range(15):
            pool.append(random_tree_metric(n, 7 * seed + n, extra=3))
    rejected = [ms for ms in pool if not checked(ms).embeddable]
    assert len(rejected) >= 40
    assert any(ms.n == 8 for ms in rejected)
    missing = [ms for ms in rejected if _small_witness(ms) is None]
    assert missing == []
    print(f"PASS six point coherence: {len(rejected)} rejected instances "
          f"(n up to 8), every one has a <= 6 point witness")


def test_unit_fixtures():
    # Tight span of the 4 x 2 rectangle corners.
    ms, pts = l1_points(RECT42)
    ts = tight_span4(ms, 0, 1, 2, 3)
    assert ts.order == (0, 1, 2, 3)
    assert (ts.side01, ts.side12) == (4, 2)
    assert ts.arms == (0, 0, 0, 0)

    # First failure of the greedy tree builder on those corners.
    ff = build_tree_network(ms)
    assert ff == FirstFailure(a=0, b=1, xi=3, xj=2)
    assert not tight_span4(ms, *ff.quadruplet).degenerate

    # Region classification triples against that rectangle.
    quad = classify_corner_distances(ts, (F(9), F(5), F(3), F(7)))
    assert quad.kind is RegionKind.QUAD and quad.corner == 2 and quad.level == 3
    strip = classify_corner_distances(ts, (F(7), F(7), F(5), F(5)))
    assert strip.kind is RegionKind.STRIP and strip.side == 2
    assert strip.pos == PlanePoint(F(2), F(5))
    rect = classify_corner_distances(ts, (F(2), F(4), F(4), F(2)))
    assert rect.kind is RegionKind.RECT and rect.pos == PlanePoint(F(1), F(1))

    # Component box: levels 2 and 3 at distance 3.
    box = embed_free_component([0, 1], {0: F(2), 1: F(3)},
                               MetricSpace.from_table([[0, 3], [3, 0]]))
    assert box.delta_a == 1 and box.delta_b == 4

    # Fixing: level segment x + y = 5 pinned by (-1, 4) at distance 3.
    assert constrain_window(F(0), F(5), F(5), (F(-1), F(4)), F(3)) \
        == (F(3, 2), F(3, 2))

    # The planted seven-point instance reproduces its own coordinates.
    ms7, pts7 = l1_points(PLANTED7)
    res = checked(ms7)
    assert res.embeddable and res.points == pts7
    print("PASS unit fixtures: span, first failure, classification triples, "
          "component box, fixing point, planted round trip")


def test_master_soundness():
    # Runs last in this module: every Embeddable answer above was
    # re-verified against its metric with exact arithmetic.
    assert _audit["total"] >= 1200
    assert _audit["embeddable"] >= 500
    assert _audit["failures"] == []
    print(f"PASS master soundness: {_audit['embeddable']} embeddings verified "
          f"exactly out of {_audit['total']} decisions, 0 failures")
