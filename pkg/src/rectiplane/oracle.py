"""Brute-force embeddability oracle for up to six points, plus planted
instance generation.  Used for testing and acceptance only; shares nothing
with the main pipeline.

A finite space embeds into the l1 plane iff, after the 45-degree rotation
u = x + y, v = x - y, there are coordinates with
d_ij = max(|u_i - u_j|, |v_i - v_j|).  The oracle branches over which
coordinate attains each pairwise distance and with which sign, keeps the
implied equalities in two offset union-finds, and settles the remaining
inequalities by difference-constraint feasibility at the leaves.
"""

import random
from fractions import Fraction

from .metric import MetricSpace, validate_metric, PlanePoint


class TooLarge(ValueError):
    pass


class NotAMetricAfterPerturbation(ValueError):
    pass


class _OffsetUnionFind:
    """Union-find tracking val[x] = val[root] + offset, with rollback."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.offset = [0] * n
        self.size = [1] * n
        self.trail = []

    def find(self, x):
        off = 0
        while self.parent[x] != x:
            off += self.offset[x]
            x = self.parent[x]
        return x, off

    def union(self, i, j, delta):
        """Impose val_i - val_j = delta; False means contradiction."""
        ri, oi = self.find(i)
        rj, oj = self.find(j)
        gap = delta - oi + oj  # required val_ri - val_rj
        if ri == rj:
            return gap == 0
        if self.size[ri] < self.size[rj]:
            ri, rj, gap = rj, ri, -gap
        self.parent[rj] = ri
        self.offset[rj] = -gap
        self.size[ri] += self.size[rj]
        self.trail.append(rj)
        return True

    def mark(self):
        return len(self.trail)

    def rollback(self, mark):
        while len(self.trail) > mark:
            rj = self.trail.pop()
            self.size[self.parent[rj]] -= self.size[rj]
            self.parent[rj] = rj
            self.offset[rj] = 0


def _difference_feasible(uf, constraints):
    """Whether |val_i - val_j| <= d can hold for all (i, j, d) given the
    equalities already merged into uf.  Exact Bellman-Ford over roots."""
    edges = []
    nodes = set()
    for i, j, d in constraints:
        ri, oi = uf.find(i)
        rj, oj = uf.find(j)
        if ri == rj:
            if abs(oi - oj) > d:
                return False
            continue
        nodes.add(ri)
        nodes.add(rj)
        edges.append((rj, ri, d - oi + oj))  # val_ri - val_rj <= d - oi + oj
        edges.append((ri, rj, d + oi - oj))
    if not edges:
        return True
    dist = {node: 0 for node in nodes}
    for _ in range(len(nodes)):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return True
    # A change on the |nodes|-th pass certifies a negative cycle.
    return False


def oracle_embed(ms):
    """Exhaustive yes/no embeddability for metric spaces with n <= 6."""
    n = ms.n
    if n > 6:
        raise TooLarge(f"oracle handles at most 6 points, got {n}")
    if n <= 2:
        return True
    # Integer distances; feasibility is invariant under global scaling.
    d = [[int(ms.num[i, j]) for j in range(n)] for i in range(n)]
    pairs = [(i, j) for j in range(n) for i in range(j)]
    ufs = (_OffsetUnionFind(n), _OffsetUnionFind(n))
    chosen = [None] * len(pairs)

    def leaf_ok():
        for coord in (0, 1):
            constraints = [(i, j, d[i][j])
                           for (i, j), (c, _) in zip(pairs, chosen)
                           if c != coord]
            if not _difference_feasible(ufs[coord], constraints):
                return False
        return True

    def search(k):
        if k == len(pairs):
            return leaf_ok()
        i, j = pairs[k]
        # The first pair may take u with positive sign: swapping the two
        # coordinates and negating one are symmetries of the system.
        branches = ((0, 1),) if k == 0 else ((0, 1), (0, -1), (1, 1), (1, -1))
        for coord, sign in branches:
            uf, other = ufs[coord], ufs[1 - coord]
            m1, m2 = uf.mark(), other.mark()
            ok = uf.union(i, j, sign * d[i][j])
            if ok:
                ri, oi = other.find(i)
                rj, oj = other.find(j)
                if ri == rj and abs(oi - oj) > d[i][j]:
                    ok = False
            if ok:
                chosen[k] = (coord, sign)
                if search(k + 1):
                    return True
            uf.rollback(m1)
            other.rollback(m2)
        return False

    return search(0)


def random_planar_instance(n, seed, bound=1000, den=4):
    """n distinct rational plane points and their exact l1 metric.

    Coordinates are uniform in [-bound, bound] with denominators dividing
    den; deterministic per seed.
    """
    rng = random.Random(seed)
    hi = int(Fraction(bound) * den)
    if n > (2 * hi + 1) ** 2:
        raise ValueError(f"bound {bound} has too few grid points for n={n}")
    points = []
    seen = set()
    while len(points) < n:
        p = PlanePoint(Fraction(rng.randint(-hi, hi), den),
                       Fraction(rng.randint(-hi, hi), den))
        if p not in seen:
            seen.add(p)
            points.append(p)
    return MetricSpace.from_points(points), points


def perturb_instance(ms, pair, epsilon):
    """Increase d(pair) by epsilon if the result is still a metric."""
    i, j = pair
    rows = [[ms.d(a, b) for b in range(ms.n)] for a in range(ms.n)]
    rows[i][j] += epsilon
    rows[j][i] += epsilon
    try:
        return validate_metric(rows, ms.labels)
    except ValueError as exc:
        raise NotAMetricAfterPerturbation(str(exc)) from exc
