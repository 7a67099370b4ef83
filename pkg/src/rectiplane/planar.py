"""Deciding whether a finite metric embeds isometrically in the plane with
the l1 distance, and producing exact rational coordinates when it does.

Pipeline: try a tree network first (trees with at most four leaves embed
directly).  Otherwise take the first four points witnessing non-tree
behaviour, upgrade them to a per-quadrant extremal quadruple, classify every
point against that quadruple's tight span, enumerate the few ways the four
terminals can sit around the spanning rectangle, and solve each such scene
with the quadrant machinery.  Every placement is verified exactly against
the full metric before being returned.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from time import perf_counter

from .metric import PlanePoint, ops, verify_isometric
from .quadrant import (
    QuadrantFrame,
    SceneInfeasible,
    FixedQuadrantOccupied,
    pin_fixed_quadrant,
    solve_free_quadrant,
)
from .tightspan import (
    CornerDistanceInconsistent,
    corner_distances,
    solve_location,
    tight_span4,
)
from .treenet import FirstFailure, build_tree_network, count_leaves, embed_tree


class RegionKind(Enum):
    RECT = "rect"
    STRIP = "strip"
    QUAD = "quad"


@dataclass(frozen=True)
class Region:
    """Where one point lives relative to the spanning rectangle.

    pos is in rectangle coordinates ([0, side01] x [0, side12], corners at
    cyclic positions (0,0), (a,0), (a,b), (0,b)).  For RECT and STRIP points
    pos is the forced location itself; for QUAD points pos is the corner and
    level the distance past it (the point slides on that level segment).
    side: 0 bottom, 1 right, 2 top, 3 left, for STRIP only.
    """
    kind: RegionKind
    pos: PlanePoint
    corner: int = -1
    side: int = -1
    level: Fraction = Fraction(0)


def classify_region(ts, ms, p):
    """Classify point p against the tight span of four points.

    Raises CornerDistanceInconsistent when no plane location is compatible
    with the four corner distances, which cannot happen for a subspace of
    the plane.
    """
    return classify_corner_distances(ts, corner_distances(ts, ms, p))


def classify_corner_distances(ts, D):
    """Region encoded by four corner distances (cyclic order)."""
    gx, gy, delta = solve_location(ts, D)
    a, b = ts.side01, ts.side12
    if delta == 0:
        return Region(RegionKind.RECT, PlanePoint(gx, gy))
    at_x = 0 if gx == 0 else (1 if gx == a else None)
    at_y = 0 if gy == 0 else (1 if gy == b else None)
    if at_x is not None and at_y is not None:
        corner = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}[(at_x, at_y)]
        return Region(RegionKind.QUAD, PlanePoint(gx, gy), corner=corner, level=delta)
    if at_y == 0:
        return Region(RegionKind.STRIP, PlanePoint(gx, -delta), side=0)
    if at_x == 1:
        return Region(RegionKind.STRIP, PlanePoint(a + delta, gy), side=1)
    if at_y == 1:
        return Region(RegionKind.STRIP, PlanePoint(gx, b + delta), side=2)
    return Region(RegionKind.STRIP, PlanePoint(-delta, gy), side=3)


def classify_all(ts, ms):
    ops.add(16 * ms.n)
    return [classify_region(ts, ms, p) for p in range(ms.n)]


def find_base_quad(ms):
    """The first four points whose submetric is not a tree metric, or the
    completed tree network when the whole metric is one."""
    built = build_tree_network(ms)
    if isinstance(built, FirstFailure):
        return built.quadruplet
    return built


def select_extremal_quad(ts, cls):
    """Per quadrant, the deepest point (ties to the smallest index); corners
    with an empty quadrant keep their own terminal."""
    best = {}
    for i, reg in enumerate(cls):
        if reg.kind is RegionKind.QUAD:
            cur = best.get(reg.corner)
            if cur is None or reg.level > cur[0]:
                best[reg.corner] = (reg.level, i)
    picks = []
    for k in range(4):
        if k in best:
            picks.append(best[k][1])
        else:
            picks.append(ts.points[ts.order[k]])
    return tuple(picks)


# Scene geometry is expressed in slot coordinates: rectangle [0,w] x [0,h]
# with slots 0..3 at (0,0), (w,0), (w,h), (0,h).  Orientation 0 puts cyclic
# corner j at slot j; orientation 1 rotates, putting it at slot j+1.
_SLOT_POS = ((0, 0), (1, 0), (1, 1), (0, 1))
_H_DIR = ((-1, 0), (1, 0), (1, 0), (-1, 0))
_V_DIR = ((0, -1), (0, -1), (0, 1), (0, 1))
_OUT_DIR = ((-1, -1), (1, -1), (1, 1), (-1, 1))
# Side s joins slots s and s+1; horizontal sides are anchored by a tip along
# x, vertical sides by a tip along y.
_SIDE_NEEDS = ("H", "V", "H", "V")


@dataclass(frozen=True)
class Scene:
    """One candidate shape for the embedding around the rectangle.

    states, per cyclic corner: 'H'/'V' terminal fixed at the horizontal or
    vertical tip of its arm, 'F' terminal free on its level segment, 'C'
    zero-arm terminal sitting on the corner itself.
    """
    orientation: int
    states: tuple


def _slot_of_cyc(orientation, j):
    return (j + orientation) % 4


def _scene_valid(states, orientation):
    cyc_at_slot = [None] * 4
    for j in range(4):
        cyc_at_slot[_slot_of_cyc(orientation, j)] = j
    for s in range(4):
        need = _SIDE_NEEDS[s]
        if not any(states[cyc_at_slot[slot]] in ("C", need)
                   for slot in (s, (s + 1) % 4)):
            return False
    return True


def enumerate_scenes(ts):
    """All maximal valid terminal configurations for a non-degenerate span.

    Every rectangle side needs an anchored endpoint whose tip runs along it
    (or a zero-arm corner).  Configurations that only fix a terminal some
    valid configuration leaves free are dropped: freeing can only enlarge
    the search each scene performs.  When all four arms are positive the two
    orientations produce rotated duplicates, so half are dropped.
    """
    arms = [ts.arms[ts.order[k]] for k in range(4)]
    options = [("C",) if arms[k] == 0 else ("H", "V", "F") for k in range(4)]
    orients = (0,) if ts.side01 == ts.side12 else (0, 1)
    all_armed = all(a > 0 for a in arms)
    scenes = []
    for orientation in orients:
        valid = [s for s in product(*options) if _scene_valid(s, orientation)]
        vset = set(valid)
        maximal = []
        for s in valid:
            dominated = any(
                s[k] in ("H", "V") and s[:k] + ("F",) + s[k + 1:] in vset
                for k in range(4))
            if not dominated:
                maximal.append(s)
        if all_armed and len(orients) == 2:
            maximal = [s for s in maximal if s[1] == "H"]
        for s in maximal:
            for k in range(4):
                assert not (s[k] == "F" and s[(k + 1) % 4] == "F"), \
                    "adjacent free corners"
            scenes.append(Scene(orientation, s))
    return scenes


def run_scene(scene, ts, cls, ms):
    """Attempt one scene; returns positions by metric index.

    Raises SceneInfeasible (some subclass) when the scene admits no
    placement.  The returned positions satisfy all constraints the quadrant
    machinery enforces; the caller still verifies the full metric.
    """
    a, b = ts.side01, ts.side12
    if scene.orientation == 0:
        w, h = a, b

        def tf(p):
            return p
    else:
        w, h = b, a

        def tf(p):
            return PlanePoint(b - p.y, p.x)

    slot = [_slot_of_cyc(scene.orientation, j) for j in range(4)]
    corner_pos = {}
    for j in range(4):
        sx, sy = _SLOT_POS[slot[j]]
        corner_pos[j] = PlanePoint(w * sx, h * sy)
    arms = [ts.arms[ts.order[k]] for k in range(4)]
    terminals = [ts.points[ts.order[k]] for k in range(4)]

    pos = {}
    tips = {}
    for k in range(4):
        st = scene.states[k]
        if st in ("H", "V"):
            dx, dy = (_H_DIR if st == "H" else _V_DIR)[slot[k]]
            tip = PlanePoint(corner_pos[k].x + arms[k] * dx,
                             corner_pos[k].y + arms[k] * dy)
            pos[terminals[k]] = tip
            tips[k] = tip

    members = {0: [], 1: [], 2: [], 3: []}
    for i, reg in enumerate(cls):
        if i in pos:
            continue
        if reg.kind is RegionKind.QUAD:
            members[reg.corner].append((i, reg.level))
        else:
            pos[i] = tf(reg.pos)
    fixers = list(pos.items())

    for k in range(4):
        st = scene.states[k]
        if st == "F":
            continue
        if st == "C":
            assert not members[k], "occupied zero-arm corner"
            continue
        if not members[k]:
            continue
        ox, oy = _OUT_DIR[slot[k]]
        placed = pin_fixed_quadrant(QuadrantFrame(corner_pos[k], ox, oy),
                                    members[k], fixers, ms)
        pos.update(placed)
        fixers.extend(placed.items())

    for k in range(4):
        if scene.states[k] != "F":
            continue
        assert any(i == terminals[k] for i, _ in members[k]), \
            "free terminal missing from its own quadrant"
        ox, oy = _OUT_DIR[slot[k]]
        placed = solve_free_quadrant(QuadrantFrame(corner_pos[k], ox, oy),
                                     members[k], fixers, ms)
        pos.update(placed)
        fixers.extend(placed.items())

    assert len(pos) == ms.n, "some point was never placed"

    # Outer envelope: bounding box of the rectangle and the fixed tips.  The
    # quadrant beyond its corner in a fixed corner's outward direction must
    # stay empty.
    xs = [Fraction(0), w] + [t.x for t in tips.values()]
    ys = [Fraction(0), h] + [t.y for t in tips.values()]
    lo = PlanePoint(min(xs), min(ys))
    hi = PlanePoint(max(xs), max(ys))
    for k in range(4):
        if scene.states[k] == "F":
            continue
        ox, oy = _OUT_DIR[slot[k]]
        px = hi.x if ox > 0 else lo.x
        py = hi.y if oy > 0 else lo.y
        for i, p in pos.items():
            if (p.x - px) * ox > 0 and (p.y - py) * oy > 0:
                raise FixedQuadrantOccupied(
                    f"point {i} beyond the envelope corner {k}")
    return [pos[i] for i in range(ms.n)]


@dataclass
class EmbedResult:
    embeddable: bool
    points: list
    n: int
    scenes_tried: int
    elapsed_ms: float


def embed(ms):
    """Decide embeddability of a metric space; exact coordinates on success.

    Runs in O(n^2) arithmetic operations: the tree attempt, the two
    classification passes, and each of the at most sixteen scenes all stay
    within a constant number of passes over point pairs.
    """
    start = perf_counter()

    def done(embeddable, pts, tried):
        return EmbedResult(embeddable, pts, ms.n, tried,
                           (perf_counter() - start) * 1000.0)

    n = ms.n
    if n <= 2:
        pts = [PlanePoint(Fraction(0), Fraction(0)),
               PlanePoint(ms.d(0, 1) if n == 2 else Fraction(0), Fraction(0))]
        return done(True, pts[:n], 0)

    built = build_tree_network(ms)
    if not isinstance(built, FirstFailure):
        if count_leaves(built) > 4:
            return done(False, None, 0)
        pts = embed_tree(built)
        ok, pair = verify_isometric(pts, ms)
        assert ok, f"tree drawing failed verification at {pair}"
        return done(True, pts, 0)

    ts0 = tight_span4(ms, *built.quadruplet)
    assert not ts0.degenerate, "non-tree witness spans a segment"
    try:
        cls0 = classify_all(ts0, ms)
    except CornerDistanceInconsistent:
        return done(False, None, 0)
    picks = select_extremal_quad(ts0, cls0)
    ts = tight_span4(ms, *picks)
    if ts.degenerate:
        return done(False, None, 0)
    try:
        cls = classify_all(ts, ms)
    except CornerDistanceInconsistent:
        return done(False, None, 0)
    arms = [ts.arms[ts.order[k]] for k in range(4)]
    for reg in cls:
        if reg.kind is RegionKind.QUAD and reg.level > arms[reg.corner]:
            # A subspace of the plane never has a point deeper than the
            # extremal pick of its own quadrant.
            return done(False, None, 0)

    scenes = enumerate_scenes(ts)
    for idx, scene in enumerate(scenes):
        try:
            pts = run_scene(scene, ts, cls, ms)
        except SceneInfeasible:
            continue
        ok, _ = verify_isometric(pts, ms)
        if ok:
            return done(True, pts, idx + 1)
    return done(False, None, len(scenes))
