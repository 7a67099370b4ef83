"""Exact rational arithmetic, metric-space representation and validation,
and elementary l1 geometry predicates."""

from fractions import Fraction
from math import gcd
from typing import NamedTuple

import numpy as np

# Numerators are kept in int64 numpy matrices while they comfortably fit;
# anything larger falls back to object (python int) matrices.
_INT64_SAFE = 1 << 61


class OpCounter:
    """Bulk counter of primitive decision steps, used by the scaling tests."""

    def __init__(self):
        self.value = 0

    def add(self, k):
        self.value += k

    def reset(self):
        self.value = 0


ops = OpCounter()


class MetricError(ValueError):
    pass


class NotSymmetric(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"dist[{i}][{j}] != dist[{j}][{i}]")


class NegativeOrZeroOffDiagonal(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"dist[{i}][{j}] must be positive for distinct points")


class NonzeroDiagonal(MetricError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"dist[{i}][{i}] must be zero")


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"dist[{i}][{k}] > dist[{i}][{j}] + dist[{j}][{k}]")


def parse_scalar(text):
    """Parse "p/q" or decimal text into an exact Fraction."""
    return Fraction(str(text).strip())


def format_scalar(value):
    """Render a Fraction as "p" or "p/q" with no precision loss."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


class PlanePoint(NamedTuple):
    x: Fraction
    y: Fraction


def l1_distance(p, q):
    """|p.x - q.x| + |p.y - q.y|, exact."""
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def _lcm(a, b):
    return a // gcd(a, b) * b


def _to_int_matrix(rows, n):
    """Scale a table of Fractions to one shared denominator.

    Returns (numpy matrix of numerators, denominator). The matrix dtype is
    int64 when every numerator fits with headroom for pairwise sums.
    """
    den = 1
    for row in rows:
        for v in row:
            den = _lcm(den, v.denominator)
    num = [[v.numerator * (den // v.denominator) for v in row] for row in rows]
    top = max((abs(v) for row in num for v in row), default=0)
    dtype = np.int64 if top < _INT64_SAFE else object
    return np.array(num, dtype=dtype), den


class MetricSpace:
    """Finite metric space with exact rational distances.

    Distances are stored as an integer numerator matrix over one shared
    denominator so bulk comparisons stay cheap; Fractions are materialized
    on demand through d().
    """

    def __init__(self, num, den, labels):
        self.num = num
        self.den = den
        self.labels = labels
        self.n = num.shape[0]

    @classmethod
    def from_table(cls, rows, labels=None):
        """Build without validation from a square table of Fraction-likes."""
        table = [[Fraction(v) for v in row] for row in rows]
        n = len(table)
        if any(len(row) != n for row in table):
            raise MetricError("distance table must be square")
        if labels is None:
            labels = [str(i) for i in range(n)]
        num, den = _to_int_matrix(table, n)
        return cls(num, den, list(labels))

    @classmethod
    def from_points(cls, points, labels=None):
        """Exact l1 distance matrix of plane points (valid by construction)."""
        den = 1
        for p in points:
            den = _lcm(den, _lcm(p[0].denominator, p[1].denominator))
        xs = np.array([int(p[0] * den) for p in points], dtype=object)
        ys = np.array([int(p[1] * den) for p in points], dtype=object)
        top = max((max(abs(int(x)), abs(int(y))) for x, y in zip(xs, ys)), default=0)
        if 4 * top < _INT64_SAFE:
            xs = xs.astype(np.int64)
            ys = ys.astype(np.int64)
        num = np.abs(xs[:, None] - xs[None, :]) + np.abs(ys[:, None] - ys[None, :])
        if labels is None:
            labels = [str(i) for i in range(len(points))]
        return cls(num, den, list(labels))

    def d(self, i, j):
        return Fraction(int(self.num[i, j]), self.den)

    def row(self, i):
        """All distances from point i, as Fractions."""
        return [Fraction(int(v), self.den) for v in self.num[i]]

    def index_of(self, label):
        return self.labels.index(label)

    def submatrix(self, indices):
        """Metric induced on a subset of points, labels preserved."""
        idx = np.array(indices)
        return MetricSpace(self.num[np.ix_(idx, idx)], self.den,
                           [self.labels[i] for i in indices])


def validate_metric(rows, labels=None):
    """Check all metric axioms, returning a MetricSpace or raising the first
    violated axiom as NotSymmetric / NegativeOrZeroOffDiagonal /
    NonzeroDiagonal / TriangleViolation."""
    ms = MetricSpace.from_table(rows, labels)
    num, n = ms.num, ms.n
    for i in range(n):
        if num[i, i] != 0:
            raise NonzeroDiagonal(i)
    asym = np.argwhere(num != num.T)
    if len(asym):
        i, j = min((int(a), int(b)) for a, b in asym)
        raise NotSymmetric(i, j)
    bad = np.argwhere((num <= 0) & ~np.eye(n, dtype=bool))
    if len(bad):
        i, j = min((int(a), int(b)) for a, b in bad)
        raise NegativeOrZeroOffDiagonal(i, j)
    for j in range(n):
        # dist[i][k] <= dist[i][j] + dist[j][k] for all i, k at once.
        viol = np.argwhere(num > num[:, j, None] + num[None, j, :])
        if len(viol):
            i, k = min((int(a), int(b)) for a, b in viol)
            raise TriangleViolation(i, j, k)
    return ms


def is_between(i, j, k, ms):
    """True iff d(i,k) = d(i,j) + d(j,k), i.e. j lies on a geodesic."""
    return ms.num[i, k] == ms.num[i, j] + ms.num[j, k]


def verify_isometric(points, ms):
    """Exact check that ||points[i] - points[j]||_1 = d(i,j) for all pairs.

    Returns (True, None) or (False, (i, j)) with the first violating pair in
    row-major order.
    """
    n = ms.n
    if len(points) != n:
        raise MetricError("coordinate count does not match metric size")
    den = ms.den
    for p in points:
        den = _lcm(den, _lcm(p[0].denominator, p[1].denominator))
    xs = np.array([int(p[0] * den) for p in points], dtype=object)
    ys = np.array([int(p[1] * den) for p in points], dtype=object)
    top = max((max(abs(int(x)), abs(int(y))) for x, y in zip(xs, ys)), default=0)
    scale = den // ms.den
    want = ms.num * scale if scale == 1 else ms.num.astype(object) * scale
    if 4 * top < _INT64_SAFE and want.dtype != object and np.all(np.abs(want) < _INT64_SAFE):
        xs = xs.astype(np.int64)
        ys = ys.astype(np.int64)
    ops.add(n * (n - 1) // 2)
    got = np.abs(xs[:, None] - xs[None, :]) + np.abs(ys[:, None] - ys[None, :])
    diff = np.argwhere(got != want)
    if len(diff):
        i, j = min((int(a), int(b)) for a, b in diff)
        return False, (i, j)
    return True, None
