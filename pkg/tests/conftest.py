"""Shared instance generators.

Four families, all deterministic per seed: planted point sets (ground truth
embeddable), rejection-sampled random distance matrices, random weighted-tree
metrics, and single-entry perturbations of planted instances.
"""

import random
from fractions import Fraction

from rectiplane.metric import MetricSpace, MetricError, PlanePoint, validate_metric
from rectiplane.oracle import (
    NotAMetricAfterPerturbation,
    perturb_instance,
    random_planar_instance,
)


def l1_points(coords):
    """MetricSpace of coordinate pairs, plus the PlanePoint list."""
    pts = [PlanePoint(Fraction(x), Fraction(y)) for x, y in coords]
    return MetricSpace.from_points(pts), pts


RECT42 = ((0, 0), (4, 0), (4, 2), (0, 2))
PLANTED7 = RECT42 + ((6, 3), (2, 5), (1, 1))


def star_metric(k, leg=1):
    """Center plus k rays of equal length; d(ray_i, ray_j) = 2 * leg."""
    n = k + 1
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[0][i] = rows[i][0] = Fraction(leg)
        for j in range(1, n):
            if i != j:
                rows[i][j] = 2 * Fraction(leg)
    return validate_metric(rows)


def path_metric(weights):
    """Points along a path with the given consecutive edge weights."""
    acc = [Fraction(0)]
    for w in weights:
        acc.append(acc[-1] + Fraction(w))
    n = len(acc)
    return validate_metric([[abs(acc[i] - acc[j]) for j in range(n)]
                            for i in range(n)])


def uniform_metric(n, dist=2):
    """All off-diagonal distances equal; for n = 5 this is the 5-leaf star."""
    rows = [[Fraction(0) if i == j else Fraction(dist) for j in range(n)]
            for i in range(n)]
    return validate_metric(rows)


def random_matrix_instance(n, seed, lo=1, hi=20):
    """Reject-and-resample integer matrices until all axioms hold."""
    rng = random.Random(seed)
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.randint(lo, hi)
        try:
            return validate_metric(rows)
        except MetricError:
            continue


def random_tree_metric(n, seed, extra=2, wmax=9):
    """Distances between n random nodes of a random weighted tree.

    The tree has up to `extra` additional hidden nodes, so some sampled
    spaces need Steiner points and some do not.
    """
    rng = random.Random(seed)
    size = max(n, n + rng.randint(0, extra))
    parent = [None] + [rng.randrange(i) for i in range(1, size)]
    weight = [None] + [rng.randint(1, wmax) for _ in range(1, size)]
    dist = [[0] * size for _ in range(size)]
    for v in range(1, size):
        p, w = parent[v], weight[v]
        for u in range(v):
            dist[u][v] = dist[v][u] = dist[u][p] + w
    nodes = rng.sample(range(size), n)
    return validate_metric([[dist[u][v] for v in nodes] for u in nodes])


def perturbed_planted(n, seed, den=24):
    """Planted instance with one pair distance increased, or None when the
    perturbation breaks the triangle inequality."""
    ms, _ = random_planar_instance(n, seed, bound=10)
    rng = random.Random(seed ^ 0x9E3779B9)
    i = rng.randrange(n - 1)
    j = rng.randint(i + 1, n - 1)
    eps = Fraction(rng.randint(1, den), den)
    try:
        return perturb_instance(ms, (i, j), eps)
    except NotAMetricAfterPerturbation:
        return None
