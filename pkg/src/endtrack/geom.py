"""Exact rational plane geometry for polyline tracing.

Points are pairs of Fractions; every predicate and construction here is
exact, so crossing sequences extracted from traced curves are reliable.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]
Segment = Tuple[Point, Point]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, k: Fraction) -> Point:
    return (a[0] * k, a[1] * k)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def interpolate(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def seg_intersection(p: Segment, q: Segment) -> Optional[Tuple[Fraction, Fraction]]:
    """Parameters (t, u) of a proper transversal crossing, or None.

    Endpoint touches and collinear overlaps return None; tracing code keeps
    its curves in general position so those cases signal realisation bugs
    and are checked separately.
    """
    (p0, p1), (q0, q1) = p, q
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if denom == 0:
        return None
    dx = q0[0] - p0[0]
    dy = q0[1] - p0[1]
    t = (dx * d2[1] - dy * d2[0]) / denom
    u = (dx * d1[1] - dy * d1[0]) / denom
    if 0 < t < 1 and 0 < u < 1:
        return (t, u)
    return None


def touches(p: Segment, q: Segment) -> bool:
    """True when the segments meet non-transversally (endpoint or overlap)."""
    (p0, p1), (q0, q1) = p, q
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    dx = q0[0] - p0[0]
    dy = q0[1] - p0[1]
    if denom == 0:
        if dx * d1[1] - dy * d1[0] != 0:
            return False
        def span(seg, axis):
            lo, hi = sorted((seg[0][axis], seg[1][axis]))
            return lo, hi
        axis = 0 if d1[0] != 0 else 1
        a_lo, a_hi = span(p, axis)
        b_lo, b_hi = span(q, axis)
        return not (a_hi < b_lo or b_hi < a_lo)
    t = (dx * d2[1] - dy * d2[0]) / denom
    u = (dx * d1[1] - dy * d1[0]) / denom
    if not (0 <= t <= 1 and 0 <= u <= 1):
        return False
    return t in (0, 1) or u in (0, 1)


def segment_hits_rect(seg: Segment, rect: Tuple[Point, Point]) -> bool:
    """Does a segment meet an axis-aligned closed rectangle (lo, hi)?"""
    (lo, hi) = rect
    (a, b) = seg
    if max(a[0], b[0]) < lo[0] or min(a[0], b[0]) > hi[0]:
        return False
    if max(a[1], b[1]) < lo[1] or min(a[1], b[1]) > hi[1]:
        return False
    corners = [(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])]
    sides = [cross(a, b, c) for c in corners]
    if all(s > 0 for s in sides) or all(s < 0 for s in sides):
        return False
    inside = lambda p: lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1]
    if inside(a) or inside(b):
        return True
    edges = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    for e in edges:
        if seg_intersection(seg, e) is not None or touches(seg, e):
            return True
    return False


def rectilinear_offset(path: Sequence[Point], delta: Fraction, closed: bool) -> List[Point]:
    """Offset an axis-parallel polyline to its left by delta.

    Left is relative to travel direction.  Corners are mitred, which for
    rectilinear paths keeps every vertex rational.
    """
    n = len(path)
    segs = []
    count = n if closed else n - 1
    for i in range(count):
        a, b = path[i], path[(i + 1) % n]
        if a[0] == b[0] and a[1] == b[1]:
            raise ValueError("degenerate offset segment")
        if a[0] != b[0] and a[1] != b[1]:
            raise ValueError(f"offset needs axis-parallel segments, got {a}->{b}")
        if a[0] == b[0]:
            normal = (-Fraction(1), Fraction(0)) if b[1] > a[1] else (Fraction(1), Fraction(0))
        else:
            normal = (Fraction(0), Fraction(1)) if b[0] > a[0] else (Fraction(0), Fraction(-1))
        shift = scale(normal, delta)
        segs.append((add(a, shift), add(b, shift)))
    out: List[Point] = []
    m = len(segs)
    rng = range(m) if closed else range(m + 1)
    for i in rng:
        if not closed and i == 0:
            out.append(segs[0][0])
            continue
        if not closed and i == m:
            out.append(segs[-1][1])
            continue
        prev = segs[(i - 1) % m]
        cur = segs[i % m]
        meet = _line_meet(prev, cur)
        out.append(meet if meet is not None else cur[0])
    return out


def _line_meet(s1: Segment, s2: Segment) -> Optional[Point]:
    (p0, p1), (q0, q1) = s1, s2
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if denom == 0:
        return None
    dx = q0[0] - p0[0]
    dy = q0[1] - p0[1]
    t = (dx * d2[1] - dy * d2[0]) / denom
    return interpolate(p0, p1, t)


def polyline_length_params(path: Sequence[Point]) -> List[Fraction]:
    """Cumulative rectilinear arclength at each vertex."""
    out = [Fraction(0)]
    for a, b in zip(path, path[1:]):
        out.append(out[-1] + abs(b[0] - a[0]) + abs(b[1] - a[1]))
    return out
