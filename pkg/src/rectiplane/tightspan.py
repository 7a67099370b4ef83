"""Gromov products, tight spans of 3- and 4-point metric spaces, and
corner distances of outside points relative to a 4-point tight span."""

from dataclasses import dataclass
from fractions import Fraction


class CornerDistanceInconsistent(ValueError):
    """No plane location realizes the four corner distances."""


def gromov_product(ms, x, y, z):
    """Half of d(x,y) + d(x,z) - d(y,z); the arm length at x."""
    return (ms.d(x, y) + ms.d(x, z) - ms.d(y, z)) / 2


@dataclass(frozen=True)
class TightSpanTriple:
    arms: tuple  # one arm per terminal, in argument order


def tight_span3(ms, x, y, z):
    """Three segments joined at one point; arms are the Gromov products."""
    return TightSpanTriple((gromov_product(ms, x, y, z),
                            gromov_product(ms, y, x, z),
                            gromov_product(ms, z, x, y)))


@dataclass(frozen=True)
class TightSpanQuad:
    """Rectangle with a segment attached to each corner.

    points: the four labels as passed in.
    order: local indices 0..3 in cyclic (corner-adjacent) order, starting
        at 0 and continuing with 0's smaller-indexed neighbor.
    side01: rectangle side between order[0] and order[1] (= order[2]/order[3]).
    side12: side between order[1] and order[2].
    width/height: the sides sorted so width <= height.
    arms: arm length of each point, indexed like points.
    """
    points: tuple
    order: tuple
    side01: Fraction
    side12: Fraction
    arms: tuple

    @property
    def width(self):
        return min(self.side01, self.side12)

    @property
    def height(self):
        return max(self.side01, self.side12)

    @property
    def degenerate(self):
        return self.side01 == 0 or self.side12 == 0

    @property
    def corner_assignment(self):
        """The two opposite-corner pairs (the maximum matching)."""
        o = self.order
        return ((o[0], o[2]), (o[1], o[3]))

    def cyclic_pos(self, local):
        """Cyclic position (0..3) of local point index `local`."""
        return self.order.index(local)

    def side(self, cyc_a, cyc_b):
        """In-rectangle l1 path between cyclic corner positions."""
        if cyc_a == cyc_b:
            return Fraction(0)
        if (cyc_a - cyc_b) % 4 == 2:
            return self.side01 + self.side12
        lo, hi = min(cyc_a, cyc_b), max(cyc_a, cyc_b)
        if (lo, hi) in ((0, 1), (2, 3)):
            return self.side01
        return self.side12


# The three perfect matchings on local indices 0..3, paired with the cyclic
# order induced when that matching sits on opposite corners.
_MATCHINGS = (
    (((0, 2), (1, 3)), (0, 1, 2, 3)),
    (((0, 1), (2, 3)), (0, 2, 1, 3)),
    (((0, 3), (1, 2)), (0, 1, 3, 2)),
)


def tight_span4(ms, p1, p2, p3, p4):
    """Tight span of four points: rectangle sides, arms, corner order.

    The maximum matching sum decides which pairs sit on opposite corners;
    sides follow from the differences of matching sums and arms are the
    Gromov products of each point with its two cyclic neighbors.  The six
    recovery identities arm_i + path(i,j) + arm_j = d(i,j) hold by
    construction for any valid metric and are asserted here.
    """
    pts = (p1, p2, p3, p4)
    d = {}
    for a in range(4):
        for b in range(a + 1, 4):
            d[a, b] = d[b, a] = ms.d(pts[a], pts[b])
    sums = [d[m[0][0], m[0][1]] + d[m[1][0], m[1][1]] for m, _ in _MATCHINGS]
    best = max(range(3), key=lambda i: (sums[i], -i))
    order = _MATCHINGS[best][1]
    s_sorted = sorted(sums)
    # Sides: opposite the pairing whose sum is subtracted.
    o = order
    side01 = (s_sorted[2] - (d[o[0], o[3]] + d[o[1], o[2]])) / 2
    side12 = (s_sorted[2] - (d[o[0], o[1]] + d[o[2], o[3]])) / 2
    arms = [None] * 4
    for pos in range(4):
        i = o[pos]
        left, right = o[pos - 1], o[(pos + 1) % 4]
        arms[i] = (d[i, left] + d[i, right] - d[left, right]) / 2
    ts = TightSpanQuad(pts, o, side01, side12, tuple(arms))
    for a in range(4):
        for b in range(a + 1, 4):
            path = ts.side(ts.cyclic_pos(a), ts.cyclic_pos(b))
            assert arms[a] + path + arms[b] == d[a, b], "inconsistent quad"
    return ts


def span_distance(ts, local, cyc_corner):
    """Distance inside the tight span from point `local` to a cyclic corner."""
    return ts.arms[local] + ts.side(ts.cyclic_pos(local), cyc_corner)


def corner_distances(ts, ms, p):
    """Distances from outside point p to the four rectangle corners.

    Returns (D0, D1, D2, D3) indexed by cyclic corner position.  Each value
    is max over the four terminals t of d(p,t) - span_distance(t, corner);
    for any point of the space this max is attained with equality by a
    terminal whose geodesic to p passes through the corner, so the formula
    is exact whenever the space embeds.  Raises CornerDistanceInconsistent
    when no plane location realizes the four values.
    """
    out = []
    for corner in range(4):
        best = None
        for local in range(4):
            v = ms.d(p, ts.points[local]) - span_distance(ts, local, corner)
            if best is None or v > best:
                best = v
        out.append(best)
    D = tuple(out)
    solve_location(ts, D)  # raises if inconsistent
    return D


def solve_location(ts, D):
    """Recover the gate and overshoot encoded by four corner distances.

    Corners sit at cyclic positions 0..3 of the rectangle [0,a]x[0,b] with
    a = side01, b = side12: (0,0), (a,0), (a,b), (0,b).  A location z outside
    the rectangle satisfies D_i = |gate - corner_i|_1 + delta where gate is
    the clamp of z onto the rectangle and delta = |z - gate|_1.  Returns
    (gx, gy, delta); raises CornerDistanceInconsistent if the system has no
    solution.
    """
    a, b = ts.side01, ts.side12
    d0, d1, d2, d3 = D
    if min(D) < 0:
        raise CornerDistanceInconsistent("negative corner distance")
    if d0 + d2 != d1 + d3:
        raise CornerDistanceInconsistent("diagonal sums differ")
    gx = (d0 - d1 + a) / 2
    gy = (d0 - d3 + b) / 2
    delta = d0 - gx - gy
    if not (0 <= gx <= a and 0 <= gy <= b and delta >= 0):
        raise CornerDistanceInconsistent("gate outside rectangle")
    if delta > 0 and 0 < gx < a and 0 < gy < b:
        raise CornerDistanceInconsistent("positive overshoot from interior gate")
    return gx, gy, delta
