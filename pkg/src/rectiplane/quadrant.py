"""Quadrant subproblems: points constrained to level segments at a rectangle
corner, pinned down by already-placed points, grouped into rigid components,
and assembled along the quadrant diagonal.

All geometry here lives in a canonical frame: apex at the origin, quadrant
x >= 0, y >= 0, so a point with level delta sits at (t, delta - t) for some
t in [0, delta].  QuadrantFrame maps real rectangle corners in and out.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .metric import PlanePoint, ops, _INT64_SAFE


class SceneInfeasible(Exception):
    """A scene cannot host any isometric placement; try the next one."""


class EmptyIntersection(SceneInfeasible):
    pass


class FixedQuadrantOccupied(SceneInfeasible):
    pass


class ComponentOrderViolation(SceneInfeasible):
    pass


class RigidPlacementInfeasible(SceneInfeasible):
    pass


class FixedComponentContradiction(SceneInfeasible):
    pass


class AssemblyConditionViolated(SceneInfeasible):
    def __init__(self, index):
        self.index = index
        super().__init__(f"box level gap at pair ({index}, {index + 1})")


def _lcm(a, b):
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class QuadrantFrame:
    """Maps one rectangle corner's quadrant onto the canonical frame.

    dx, dy are the outward directions (+1 or -1) of the quadrant.
    """
    corner: PlanePoint
    dx: int
    dy: int

    def to_canonical(self, p):
        return ((p[0] - self.corner[0]) * self.dx,
                (p[1] - self.corner[1]) * self.dy)

    def from_canonical(self, x, y):
        return PlanePoint(self.corner[0] + x * self.dx,
                          self.corner[1] + y * self.dy)


def constrain_window(lo, hi, delta, w, dist):
    """Shrink a level-segment window by one placed-point constraint.

    The member lies at (t, delta - t) with t in [lo, hi]; w = (wx, wy) is the
    placed point in canonical coordinates and dist the required l1 distance.
    Returns the new (lo, hi) or None when no t satisfies the constraint.
    Placed points southwest of the apex see the whole segment at constant
    distance, so they never narrow the window (the final verification checks
    them).  Northeast placements cannot occur: members of one quadrant are
    never constrained against each other here.
    """
    wx, wy = w
    if wx <= 0 and wy <= 0:
        return lo, hi
    assert wx <= 0 or wy <= 0, "fixer northeast of the apex"
    if wx <= 0:
        # Northwest: distance is (m - wx) for t <= m, then increases.
        m = delta - wy
        const = m - wx
        if dist < const:
            return None
        if dist == const:
            hi = min(hi, m)
        else:
            t = (dist + wx + m) / 2
            lo, hi = max(lo, t), min(hi, t)
    else:
        # Southeast: distance is (delta - wx - wy) for t >= wx.
        const = delta - wx - wy
        if dist < const:
            return None
        if dist == const:
            lo = max(lo, wx)
        else:
            t = (wx + delta - wy - dist) / 2
            lo, hi = max(lo, t), min(hi, t)
    return None if lo > hi else (lo, hi)


def resolve_windows(frame, members, fixers, ms):
    """Window of each member after all fixer constraints.

    members: list of (index, level); fixers: list of (index, PlanePoint) of
    already-placed points.  Returns {index: (lo, hi)} in canonical x units.
    Raises EmptyIntersection when some member's window vanishes.

    Internally everything is rescaled to one even integer grid so the loop
    over fixers runs as vectorized integer arithmetic.
    """
    if not members:
        return {}
    idxs = [i for i, _ in members]
    deltas = [d for _, d in members]
    canon = [frame.to_canonical(p) for _, p in fixers]
    den = ms.den
    for d in deltas:
        den = _lcm(den, d.denominator)
    for wx, wy in canon:
        den = _lcm(den, _lcm(wx.denominator, wy.denominator))
    scale = 2 * den
    factor = scale // ms.den
    dl = [int(d * scale) for d in deltas]
    fenc = [(fidx, int(wx * scale), int(wy * scale))
            for (fidx, _), (wx, wy) in zip(fixers, canon)]
    top = max(dl)
    for _, wx, wy in fenc:
        top = max(top, abs(wx), abs(wy))
    if ms.n:
        top = max(top, int(np.max(ms.num)) * factor)
    use_obj = 4 * top >= _INT64_SAFE
    dtype = object if use_obj else np.int64
    rows = np.array(idxs)
    delta_arr = np.array(dl, dtype=dtype)
    lo = np.zeros(len(idxs), dtype=dtype)
    hi = delta_arr.copy()
    ops.add(len(idxs) * len(fenc))
    for fidx, wx, wy in fenc:
        if wx <= 0 and wy <= 0:
            continue
        assert wx <= 0 or wy <= 0, "fixer northeast of the apex"
        dist = ms.num[rows, fidx]
        dist = (dist.astype(object) if use_obj else dist.astype(np.int64)) * factor
        if wx <= 0:
            m = delta_arr - wy
            const = m - wx
            if bool(np.any(dist < const)):
                raise EmptyIntersection(f"point {idxs[int(np.argmax(dist < const))]}"
                                        f" too close to placed point {fidx}")
            eq = dist == const
            hi = np.where(eq, np.minimum(hi, m), hi)
            t = (dist + wx + m) // 2
            gt = ~eq
            lo = np.where(gt, np.maximum(lo, t), lo)
            hi = np.where(gt, np.minimum(hi, t), hi)
        else:
            const = delta_arr - wx - wy
            if bool(np.any(dist < const)):
                raise EmptyIntersection(f"point {idxs[int(np.argmax(dist < const))]}"
                                        f" too close to placed point {fidx}")
            eq = dist == const
            lo = np.where(eq, np.maximum(lo, wx), lo)
            t = (wx + delta_arr - wy - dist) // 2
            gt = ~eq
            lo = np.where(gt, np.maximum(lo, t), lo)
            hi = np.where(gt, np.minimum(hi, t), hi)
    dead = lo > hi
    if bool(np.any(dead)):
        raise EmptyIntersection(f"no window left for point {idxs[int(np.argmax(dead))]}")
    return {idx: (Fraction(int(l), scale), Fraction(int(h), scale))
            for idx, l, h in zip(idxs, lo, hi)}


def pin_fixed_quadrant(frame, members, fixers, ms):
    """Place members of a quadrant whose terminal is fixed.

    Every member's window must collapse to a single point; a member still
    free to slide contradicts the emptiness of fixed-terminal quadrants.
    Returns {index: PlanePoint}.
    """
    windows = resolve_windows(frame, members, fixers, ms)
    deltas = dict(members)
    out = {}
    for idx, (lo, hi) in windows.items():
        if lo < hi:
            raise FixedQuadrantOccupied(f"point {idx} slides in a fixed quadrant")
        out[idx] = frame.from_canonical(lo, deltas[idx] - lo)
    return out


def build_quadrant_graph(members, deltas, ms):
    """Components of the interaction graph on one quadrant's members.

    members: list of indices; deltas: index -> level.  Two members interact
    iff d(u,v) > |delta_u - delta_v|.  Components come back ordered by level;
    their level ranges must be consecutive runs of the sorted-level order,
    anything else is ComponentOrderViolation.
    """
    m = len(members)
    if m == 0:
        return []
    den = ms.den
    for i in members:
        den = _lcm(den, deltas[i].denominator)
    factor = den // ms.den
    dl = {i: int(deltas[i] * den) for i in members}
    order = sorted(members, key=lambda i: (dl[i], i))
    top = max(max(abs(dl[i]) for i in members), int(np.max(ms.num)) * factor)
    dtype = object if 4 * top >= _INT64_SAFE else np.int64
    arr = np.array([dl[i] for i in order], dtype=dtype)
    sub = ms.num[np.ix_(order, order)]
    sub = (sub.astype(object) if dtype is object else sub.astype(np.int64)) * factor
    adj = sub > abs(arr[:, None] - arr[None, :])
    ops.add(m * (m - 1) // 2)
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in np.flatnonzero(adj[x]):
                y = int(y)
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    prev_max = -1
    for c in comps:
        if c[0] < prev_max:
            raise ComponentOrderViolation("component level ranges interleave")
        prev_max = c[-1]
    return [[order[p] for p in c] for c in comps]


@dataclass(frozen=True)
class ComponentBox:
    """Rigid placement of one component, relative to its inner corner a.

    rel maps member -> (x, y) offsets from a (all >= 0); levels maps
    member -> its apex distance.  delta_a/delta_b are the apex distances of
    the box corners a and b; both are member-independent by construction and
    asserted so.
    """
    members: tuple
    rel: dict
    levels: dict
    delta_a: Fraction
    delta_b: Fraction
    width_x: Fraction
    width_y: Fraction

    def width(self, r):
        return self.width_x if r == 0 else self.width_y

    def rel_x(self, u, r):
        # Reflection swaps the two coordinates of every member.
        return self.rel[u][0] if r == 0 else self.rel[u][1]


def embed_free_component(component, deltas, ms):
    """Rigid relative placement of one interaction component.

    component: indices sorted by (level, index).  The first member sits at
    the midpoint of its level segment; each next member is placed at one of
    the two candidate offsets from an already-placed neighbor, filtered by
    exact distance agreement with everything placed so far (ties resolved
    toward smaller x).  Raises RigidPlacementInfeasible when no candidate
    survives.
    """
    root = component[0]
    pos = {root: (deltas[root] / 2, deltas[root] / 2)}
    frontier = [root]
    ops.add(len(component) ** 2)
    while frontier:
        nxt = []
        for p in frontier:
            for u in component:
                if u in pos:
                    continue
                m = deltas[u] - deltas[p]
                if ms.d(u, p) <= abs(m):
                    continue
                g = (ms.d(u, p) - abs(m)) / 2
                xp = pos[p][0]
                cands = []
                for e in (max(Fraction(0), m) + g, min(Fraction(0), m) - g):
                    x = xp + e
                    y = deltas[u] - x
                    if all(abs(x - xw) + abs(y - yw) == ms.d(u, w)
                           for w, (xw, yw) in pos.items()):
                        cands.append((x, y))
                if not cands:
                    raise RigidPlacementInfeasible(f"no position for point {u}")
                pos[u] = min(cands)
                nxt.append(u)
        frontier = nxt
    assert len(pos) == len(component), "component not connected"
    xs = [pos[u][0] for u in component]
    ys = [pos[u][1] for u in component]
    ax, ay = min(xs), min(ys)
    width_x, width_y = max(xs) - ax, max(ys) - ay
    rel = {u: (pos[u][0] - ax, pos[u][1] - ay) for u in component}
    delta_a = ax + ay
    delta_b = max(xs) + max(ys)
    for u in component:
        assert deltas[u] - rel[u][0] - rel[u][1] == delta_a
        assert deltas[u] + (width_x - rel[u][0]) + (width_y - rel[u][1]) == delta_b
    return ComponentBox(tuple(component), rel, {u: deltas[u] for u in component},
                        delta_a, delta_b, width_x, width_y)


def _intersect(intervals, lo, hi):
    out = []
    for a, b in intervals:
        c, d = max(a, lo), min(b, hi)
        if c <= d:
            out.append((c, d))
    return out


def _merge(intervals):
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def assemble_boxes(boxes, windows=None):
    """Absolute placements for ordered component boxes in one quadrant.

    Each box i gets a slide parameter lam (the x of its corner a) and a
    reflection; box i+1 must dominate box i coordinatewise (so all pairwise
    distances across boxes collapse to level differences) and the first box
    must dominate the apex.  windows optionally restricts each member's
    canonical x to [lo, hi].  Returns [(lam, reflection)] per box.

    The level chain delta_b_i <= delta_a_{i+1} is necessary for dominance
    and checked first.  Feasible lam sets are propagated forward per
    reflection as interval unions, then one choice is reconstructed
    backward (a greedy forward pass alone can strand a later box).
    """
    k = len(boxes)
    if k == 0:
        return []
    for i in range(k - 1):
        if boxes[i + 1].delta_a < boxes[i].delta_b:
            raise AssemblyConditionViolated(i)

    def lam_interval(box, r):
        lo, hi = Fraction(0), box.delta_a
        for u in box.members:
            if windows and u in windows:
                wlo, whi = windows[u]
                off = box.rel_x(u, r)
                lo = max(lo, wlo - off)
                hi = min(hi, whi - off)
        return None if lo > hi else (lo, hi)

    def box_pinned(box):
        return windows is not None and any(
            u in windows and windows[u][0] == windows[u][1] for u in box.members)

    sets = []
    inc = [(Fraction(0), boxes[0].delta_a)]
    for i, box in enumerate(boxes):
        cur = {}
        for r in (0, 1):
            L = lam_interval(box, r)
            cur[r] = [] if L is None else _intersect(inc, *L)
        if not cur[0] and not cur[1]:
            if box_pinned(box):
                raise FixedComponentContradiction(f"pinned component {i} cannot be placed")
            raise EmptyIntersection(f"component {i} has no feasible slide")
        sets.append(cur)
        if i + 1 < k:
            slack = boxes[i + 1].delta_a - box.delta_b
            inc = _merge([(lo + box.width(r), hi + box.width(r) + slack)
                          for r in (0, 1) for lo, hi in cur[r]])
    best = None
    for r in (0, 1):
        for lo, _ in sets[-1][r]:
            if best is None or (lo, r) < best:
                best = (lo, r)
    out = [None] * k
    out[-1] = best
    for i in range(k - 2, -1, -1):
        nlam = out[i + 1][0]
        slack = boxes[i + 1].delta_a - boxes[i].delta_b
        chosen = None
        for r in (0, 1):
            w = boxes[i].width(r)
            c = _intersect(sets[i][r], nlam - w - slack, nlam - w)
            if c and (chosen is None or (c[0][0], r) < chosen):
                chosen = (c[0][0], r)
        assert chosen is not None, "forward pass admitted an unreachable slide"
        out[i] = chosen
    return out


def solve_free_quadrant(frame, members, fixers, ms):
    """Place all members of a quadrant whose terminal is free.

    members: list of (index, level), the free terminal included; fixers as in
    resolve_windows.  Returns {index: PlanePoint}.  Distances between members
    and fixers are enforced here; distances among members are enforced by the
    component machinery and the dominance chain, everything else by the
    caller's final verification.
    """
    if not members:
        return {}
    windows = resolve_windows(frame, members, fixers, ms)
    deltas = dict(members)
    comps = build_quadrant_graph([i for i, _ in members], deltas, ms)
    boxes = [embed_free_component(c, deltas, ms) for c in comps]
    assignment = assemble_boxes(boxes, windows)
    out = {}
    for box, (lam, r) in zip(boxes, assignment):
        for u in box.members:
            x = lam + box.rel_x(u, r)
            out[u] = frame.from_canonical(x, box.levels[u] - x)
    return out
