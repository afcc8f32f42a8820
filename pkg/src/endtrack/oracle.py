"""PL curve tracing over concrete chart scenes.

Curves live in the plane as exact-rational polylines.  Glued features
(crosscaps, handles) are realised by portals: paired segments with affine
transports, so a polyline is stored as a list of plane subpaths broken at
portal crossings.  Maps are applied geometrically — shifts and flips as
affine maps, twists by splicing detours that run along an offset copy of
the twisting curve — and the crossing word is read off at the end by exact
segment intersection against the realised walls.

This gives an independent check of the combinatorial engine: the two
pipelines share only the chart definitions and the word canonicaliser.

Scene realisations must be equivariant under the primitive maps they are
used with.  The plain strip scenes are symmetric under shifts and flips;
the crosscap and handle scenes only under shifts, which covers every
catalogued map on those charts.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .charts import ChartBase, StripChart, Strip2Chart
from .geom import (Point, Segment, cross, interpolate, rectilinear_offset,
                   seg_intersection, segment_hits_rect, sub, touches)
from .words import Letter, Line, Wall, canonical_arc, canonical_loop

F = Fraction


_HOLE_EPS = Fraction(1, 2**16)


class OracleError(RuntimeError):
    """A traced curve left general position (or left the scene window)."""


@dataclass(frozen=True)
class Aff:
    """Affine plane map (a b; c d) * p + (e, f)."""

    a: F
    b: F
    c: F
    d: F
    e: F
    f: F

    def apply(self, p: Point) -> Point:
        return (self.a * p[0] + self.b * p[1] + self.e,
                self.c * p[0] + self.d * p[1] + self.f)

    def apply_vec(self, v: Point) -> Point:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    @property
    def det(self) -> F:
        return self.a * self.d - self.b * self.c

    @staticmethod
    def translation(dx, dy) -> "Aff":
        return Aff(F(1), F(0), F(0), F(1), F(dx), F(dy))

    @staticmethod
    def point_reflection(cx, cy) -> "Aff":
        return Aff(F(-1), F(0), F(0), F(-1), 2 * F(cx), 2 * F(cy))


@dataclass(frozen=True)
class Portal:
    """Two glued segments; crossing one resumes on the other via transport."""

    seg_a: Segment
    seg_b: Segment
    to_b: Aff
    to_a: Aff

    def sides(self):
        return ((self.seg_a, self.to_b), (self.seg_b, self.to_a))


@dataclass(frozen=True)
class WallPiece:
    wall: Wall
    seg: Segment
    pos_normal: Point  # points into the sides[1] cell


Subpath = List[Point]


class Traced:
    """A curve as plane subpaths broken at portal jumps."""

    def __init__(self, subpaths: Sequence[Subpath], closed: bool,
                 start: Optional[Line] = None, end: Optional[Line] = None):
        self.subpaths = [list(sp) for sp in subpaths]
        self.closed = closed
        self.start = start
        self.end = end


def _ccw90(v: Point) -> Point:
    return (-v[1], v[0])


def _cw90(v: Point) -> Point:
    return (v[1], -v[0])


def _axis_dir(a: Point, b: Point) -> Point:
    d = sub(b, a)
    if d[0] != 0 and d[1] != 0:
        raise OracleError(f"wall segment not axis-parallel: {a}->{b}")
    nx = 0 if d[0] == 0 else (1 if d[0] > 0 else -1)
    ny = 0 if d[1] == 0 else (1 if d[1] > 0 else -1)
    return (F(nx), F(ny))


def _on_segment(p: Point, seg: Segment) -> bool:
    a, b = seg
    if cross(a, b, p) != 0:
        return False
    lox, hix = sorted((a[0], b[0]))
    loy, hiy = sorted((a[1], b[1]))
    return lox <= p[0] <= hix and loy <= p[1] <= hiy


class Scene:
    """Realised window of a chart: wall polylines, portals, holes."""

    def __init__(self, chart: ChartBase, lo: int, hi: int):
        self.chart = chart
        self.lo = lo
        self.hi = hi
        self.wall_paths: Dict[Wall, List[Subpath]] = {}
        self.portals: List[Portal] = []
        self.holes: List[Tuple[Point, Point]] = []
        self.pieces: List[WallPiece] = []

    def add_wall(self, wall: Wall, subpaths: List[Subpath]) -> None:
        self.wall_paths[wall] = subpaths

    def finish(self) -> None:
        """Derive crossing normals for every wall segment.

        A cell's boundary walk keeps the cell on the left of travel, with
        the handedness swapping each time the walk passes through an
        orientation-reversing portal inside a wall.  Walking the positive
        cell of each wall therefore pins down its crossing normal.
        """
        oriented: Dict[Wall, List[Tuple[Segment, Point]]] = {}
        for n in range(self.lo, self.hi + 2):
            for cell in self.chart.cells_of_block(n):
                parity = 0
                for kind, payload, direction in self.chart.boundary_items(cell):
                    if kind != "w":
                        continue
                    wall = payload
                    if wall in self.wall_paths and self.chart.sides(wall)[1] == cell:
                        oriented[wall] = self._orient(wall, direction, parity)
                    parity ^= self._flip_count(wall) & 1
        for wall, pieces in oriented.items():
            for seg, normal in pieces:
                self.pieces.append(WallPiece(wall, seg, normal))
        missing = set(self.wall_paths) - set(oriented)
        if missing:
            raise OracleError(f"no positive walk traversal for {sorted(missing)}")

    def _flip_count(self, wall: Wall) -> int:
        """Orientation-reversing portal jumps along a realised wall."""
        sps = self.wall_paths.get(wall)
        if not sps or len(sps) == 1:
            return 0
        count = 0
        for i in range(len(sps) - 1):
            join = self._portal_between(sps[i][-1], sps[i + 1][0])
            if join is not None and join.det < 0:
                count += 1
        return count

    def _portal_between(self, end: Point, start: Point) -> Optional[Aff]:
        for portal in self.portals:
            for seg, aff in portal.sides():
                if _on_segment(end, seg) and aff.apply(end) == start:
                    return aff
        return None

    def _orient(self, wall: Wall, direction: int, walk_parity: int):
        sps = self.wall_paths[wall]
        if direction > 0:
            seq = [list(sp) for sp in sps]
        else:
            seq = [list(reversed(sp)) for sp in reversed(sps)]
        pieces = []
        parity = walk_parity
        for idx, sp in enumerate(seq):
            for a, b in zip(sp, sp[1:]):
                travel = _axis_dir(a, b)
                normal = _ccw90(travel) if parity == 0 else _cw90(travel)
                pieces.append(((a, b), normal))
            if idx < len(seq) - 1:
                join = self._portal_between(sp[-1], seq[idx + 1][0])
                if join is not None and join.det < 0:
                    parity ^= 1
        return pieces

    # --- tracing -----------------------------------------------------

    def walk(self, waypoints: Sequence[Point], closed: bool,
             start: Optional[Line] = None, end: Optional[Line] = None) -> Traced:
        """Build a Traced curve, cutting the polyline at portal crossings."""
        pts = [(F(p[0]), F(p[1])) for p in waypoints]
        subpaths: List[Subpath] = [[pts[0]]]
        rest = pts[1:]
        guard = 0
        while rest:
            guard += 1
            if guard > 100000:
                raise OracleError("portal walk did not terminate")
            cur = subpaths[-1][-1]
            nxt = rest[0]
            hit = self._first_portal_hit(cur, nxt)
            if hit is None:
                subpaths[-1].append(nxt)
                rest.pop(0)
                continue
            _, point, aff = hit
            subpaths[-1].append(point)
            subpaths.append([aff.apply(point)])
            rest = [aff.apply(p) for p in rest]
        return Traced(subpaths, closed, start, end)

    def _first_portal_hit(self, a: Point, b: Point):
        if a == b:
            return None
        best = None
        for portal in self.portals:
            for seg, aff in portal.sides():
                if _on_segment(a, seg):
                    continue  # leaving an edge we just landed on
                res = seg_intersection((a, b), seg)
                if res is None:
                    if touches((a, b), seg):
                        raise OracleError(
                            f"degenerate portal contact on {a}->{b}")
                    continue
                t, _ = res
                if best is None or t < best[0]:
                    best = (t, interpolate(a, b, t), aff)
        return best

    def apply_affine(self, curve: Traced, aff: Aff,
                     start: Optional[Line] = None,
                     end: Optional[Line] = None) -> Traced:
        sps = [[aff.apply(p) for p in sp] for sp in curve.subpaths]
        return Traced(sps, curve.closed,
                      start if start is not None else curve.start,
                      end if end is not None else curve.end)

    # --- word extraction ---------------------------------------------

    def extract(self, curve: Traced) -> Tuple[Letter, ...]:
        word: List[Letter] = []
        for sp in curve.subpaths:
            for p in sp:
                if not (F(self.lo) <= p[0] <= F(self.hi + 1)
                        and F(0) <= p[1] <= F(1)):
                    raise OracleError(f"curve left the scene window at {p}")
            for a, b in zip(sp, sp[1:]):
                if a == b:
                    continue
                for lo_pt, hi_pt in self.holes:
                    # Portal crossings land exactly on hole edges, so test
                    # against a hair-shrunk core to flag only real incursions.
                    core = ((lo_pt[0] + _HOLE_EPS, lo_pt[1] + _HOLE_EPS),
                            (hi_pt[0] - _HOLE_EPS, hi_pt[1] - _HOLE_EPS))
                    if segment_hits_rect((a, b), core):
                        raise OracleError(f"curve runs through a hole near {a}->{b}")
                hits = []
                for piece in self.pieces:
                    res = seg_intersection((a, b), piece.seg)
                    if res is None:
                        if touches((a, b), piece.seg):
                            raise OracleError(
                                f"curve touches wall {piece.wall} "
                                f"non-transversally near {a}->{b}")
                        continue
                    t, _ = res
                    v = sub(b, a)
                    dot = v[0] * piece.pos_normal[0] + v[1] * piece.pos_normal[1]
                    if dot == 0:
                        raise OracleError(f"tangential crossing of {piece.wall}")
                    sign = 1 if dot > 0 else -1
                    hits.append((t, (piece.wall[0], piece.wall[1], sign)))
                hits.sort(key=lambda h: h[0])
                for i in range(len(hits) - 1):
                    if hits[i][0] == hits[i + 1][0]:
                        raise OracleError("simultaneous wall crossings")
                word.extend(h[1] for h in hits)
        return tuple(word)

    def canonical(self, curve: Traced):
        word = self.extract(curve)
        if curve.closed:
            return canonical_loop(self.chart, word)
        if not word:
            return self._empty_arc(curve)
        return canonical_arc(self.chart, curve.start, word, curve.end)

    def _empty_arc(self, curve: Traced):
        """A crossing-free top-bottom arc is parallel to the juncture wall
        of its cell; locate the cell from the arc's vertical position."""
        xs = {p[0] for sp in curve.subpaths for p in sp}
        if len(xs) != 1:
            raise OracleError("empty-word arc is not vertical")
        x = xs.pop()
        n = x.numerator // x.denominator
        if F(n) == x:
            raise OracleError(f"empty-word arc sits on a wall at x={x}")
        cell = (n, "W") if x < F(n) + F(1, 2) else (n, "E")
        return canonical_arc(self.chart, curve.start, (), curve.end,
                             start_cell=cell, end_cell=cell)


# --- scene builders ---------------------------------------------------


def _f64(n: int, k: int) -> F:
    return F(n) + F(k, 64)


def build_scene(chart: ChartBase, lo: int, hi: int) -> Scene:
    if isinstance(chart, StripChart):
        return _strip_scene(chart, lo, hi)
    if isinstance(chart, Strip2Chart):
        return _strip2_scene(chart, lo, hi)
    raise OracleError(f"no scene builder for chart {chart.name}")


def _strip_scene(chart: StripChart, lo: int, hi: int) -> Scene:
    scene = Scene(chart, lo, hi)
    one = F(1)
    for n in range(lo, hi + 2):
        scene.add_wall(("J", n), [[(F(n), one), (F(n), F(0))]])
    for n in range(lo, hi + 1):
        hole = ((_f64(n, 28), F(28, 64)), (_f64(n, 36), F(36, 64)))
        scene.holes.append(hole)
        x = _f64(n, 32)
        if not chart.crosscap:
            scene.add_wall(("T", n), [[(x, one), (x, F(36, 64))]])
            scene.add_wall(("B", n), [[(x, F(28, 64)), (x, F(0))]])
            continue
        # antipodal portal on the hole square; T and B meet the seam loop W
        # at a single interior vertex v above the hole
        v = (x, F(40, 64))
        scene.add_wall(("T", n), [[(x, one), v]])
        scene.add_wall(("B", n), [
            [v, (x, F(36, 64))],
            [(x, F(28, 64)), (x, F(0))],
        ])
        scene.add_wall(("W", n), [
            [v, (_f64(n, 40), F(40, 64)), (_f64(n, 40), F(32, 64)),
             (_f64(n, 36), F(32, 64))],
            [(_f64(n, 28), F(32, 64)), (_f64(n, 24), F(32, 64)),
             (_f64(n, 24), F(40, 64)), v],
        ])
        hl, hr = _f64(n, 28), _f64(n, 36)
        hb, ht = F(28, 64), F(36, 64)
        scene.portals.append(Portal(
            ((hl, ht), (hr, ht)), ((hl, hb), (hr, hb)),
            Aff(F(-1), F(0), F(0), F(1), 2 * x, -F(8, 64)),
            Aff(F(-1), F(0), F(0), F(1), 2 * x, F(8, 64))))
        scene.portals.append(Portal(
            ((hl, hb), (hl, ht)), ((hr, hb), (hr, ht)),
            Aff(F(1), F(0), F(0), F(-1), F(8, 64), F(1)),
            Aff(F(1), F(0), F(0), F(-1), -F(8, 64), F(1))))
    scene.finish()
    return scene


def _strip2_scene(chart: Strip2Chart, lo: int, hi: int) -> Scene:
    scene = Scene(chart, lo, hi)
    one = F(1)
    for n in range(lo, hi + 2):
        scene.add_wall(("J", n), [[(F(n), one), (F(n), F(0))]])
    for n in range(lo, hi + 1):
        x = _f64(n, 32)
        holeT = ((_f64(n, 28), F(38, 64)), (_f64(n, 36), F(42, 64)))
        holeB = ((_f64(n, 28), F(22, 64)), (_f64(n, 36), F(26, 64)))
        scene.holes.extend([holeT, holeB])
        if not chart.handle:
            scene.add_wall(("T", n), [[(x, one), (x, F(42, 64))]])
            scene.add_wall(("M", n), [[(x, F(38, 64)), (x, F(26, 64))]])
            scene.add_wall(("B", n), [[(x, F(22, 64)), (x, F(0))]])
            continue
        # the two hole circles are glued by the horizontal-mirror circle
        # map; M runs straight through the resulting tube while WA and WB
        # thread it on either side, meeting T and B at the weld points
        q1 = (x, F(48, 64))
        q2 = (x, F(16, 64))
        scene.add_wall(("T", n), [[(x, one), q1]])
        scene.add_wall(("B", n), [[q2, (x, F(0))]])
        scene.add_wall(("M", n), [
            [q2, (x, F(22, 64))],
            [(x, F(42, 64)), q1],
        ])
        scene.add_wall(("WA", n), [
            [q1, (_f64(n, 24), F(48, 64)), (_f64(n, 24), F(36, 64)),
             (_f64(n, 30), F(36, 64)), (_f64(n, 30), F(38, 64))],
            [(_f64(n, 30), F(26, 64)), (_f64(n, 30), F(30, 64)),
             (_f64(n, 40), F(30, 64)), (_f64(n, 40), F(16, 64)), q2],
        ])
        scene.add_wall(("WB", n), [
            [q1, (_f64(n, 42), F(48, 64)), (_f64(n, 42), F(31, 64)),
             (_f64(n, 26), F(31, 64)), (_f64(n, 26), F(16, 64)), q2],
        ])
        hl, hr = _f64(n, 28), _f64(n, 36)
        scene.portals.append(Portal(
            ((hl, F(42, 64)), (hr, F(42, 64))),
            ((hl, F(22, 64)), (hr, F(22, 64))),
            Aff.translation(0, F(-20, 64)), Aff.translation(0, F(20, 64))))
        scene.portals.append(Portal(
            ((hl, F(38, 64)), (hr, F(38, 64))),
            ((hl, F(26, 64)), (hr, F(26, 64))),
            Aff.translation(0, F(-12, 64)), Aff.translation(0, F(12, 64))))
        scene.portals.append(Portal(
            ((hl, F(38, 64)), (hl, F(42, 64))),
            ((hl, F(22, 64)), (hl, F(26, 64))),
            Aff.point_reflection(hl, F(32, 64)),
            Aff.point_reflection(hl, F(32, 64))))
        scene.portals.append(Portal(
            ((hr, F(38, 64)), (hr, F(42, 64))),
            ((hr, F(22, 64)), (hr, F(26, 64))),
            Aff.point_reflection(hr, F(32, 64)),
            Aff.point_reflection(hr, F(32, 64))))
    scene.finish()
    return scene


# --- curve realisation ------------------------------------------------


def realize_juncture(scene: Scene, index: int) -> Traced:
    """The push-off of juncture `index`: a vertical arc just left of J(index)."""
    x = F(index) - F(1, 64)
    return scene.walk([(x, F(1)), (x, F(0))], closed=False,
                      start=("top", 0), end=("bottom", 0))


# --- PL maps ----------------------------------------------------------


def primitive_affine(prim) -> Aff:
    """PL realisation of a strip primitive (shift with optional flip)."""
    step = F(prim.step)
    if getattr(prim, "flip", False):
        return Aff(F(1), F(0), F(0), F(-1), step, F(1))
    return Aff.translation(step, 0)


DELTA = F(1, 4096)


class PLTwist:
    """A twist along a closed rectilinear core drawn clear of all portals."""

    def __init__(self, scene: Scene, core_waypoints: Sequence[Point], power: int):
        self.scene = scene
        core = scene.walk(list(core_waypoints), closed=True)
        if len(core.subpaths) != 1:
            raise OracleError("twist cores must be drawn clear of portals")
        path = core.subpaths[0]
        if path[0] != path[-1]:
            raise OracleError("twist core waypoints do not close up")
        self.core = path
        base = rectilinear_offset(path[:-1], DELTA, closed=True)
        self.left_copy = base + [base[0]]
        base = rectilinear_offset(path[:-1], -DELTA, closed=True)
        self.right_copy = base + [base[0]]
        self.power = power

    def apply(self, curve: Traced, power_sign: int = 1) -> Traced:
        power = self.power * power_sign
        if power == 0:
            return curve
        out: List[Subpath] = []
        for sp in curve.subpaths:
            cur: Subpath = [sp[0]]
            for a, b in zip(sp, sp[1:]):
                if a == b:
                    continue
                for t, pos, l2r in self._crossings(a, b):
                    p = interpolate(a, b, t)
                    cur.append(p)
                    copy = self.left_copy if l2r else self.right_copy
                    reverse = (l2r == (power > 0))
                    detour = _detour(copy, pos, reverse, abs(power))
                    out.append(cur)
                    out.append([p] + detour + [p])
                    cur = [p]
                cur.append(b)
            out.append(cur)
        return Traced(out, curve.closed, curve.start, curve.end)

    def _crossings(self, a: Point, b: Point):
        """Transversal crossings of a->b with the core, ordered along a->b."""
        hits = []
        for ci, (c0, c1) in enumerate(zip(self.core, self.core[1:])):
            res = seg_intersection((a, b), (c0, c1))
            if res is None:
                if touches((a, b), (c0, c1)):
                    raise OracleError("curve touches twist core degenerately")
                continue
            t, u = res
            core_dir = sub(c1, c0)
            curve_dir = sub(b, a)
            s = core_dir[0] * curve_dir[1] - core_dir[1] * curve_dir[0]
            if s == 0:
                raise OracleError("tangential core crossing")
            hits.append((t, (ci, u), s < 0))
        hits.sort(key=lambda h: h[0])
        return hits


def _detour(copy: Subpath, pos, reverse: bool, laps: int) -> Subpath:
    """Points running `laps` times around the offset copy from pos."""
    ci, u = pos
    start_pt = interpolate(copy[ci], copy[ci + 1], u)
    lap = [start_pt] + copy[ci + 1:-1] + copy[:ci + 1] + [start_pt]
    pts: Subpath = [lap[0]]
    for _ in range(laps):
        pts.extend(lap[1:])
    if reverse:
        pts = list(reversed(pts))
    return pts


class PLMap:
    """Geometric realisation of an end-periodic map on a scene."""

    def __init__(self, scene: Scene, prim, twists: Sequence[PLTwist]):
        self.scene = scene
        self.prim = prim
        self.twists = list(twists)
        if getattr(prim, "flip", False) and scene.portals:
            raise OracleError("flip primitives need a portal-free scene")

    def _move_lines(self, curve: Traced, prim):
        chart = self.scene.chart
        start = prim.line(chart, curve.start) if curve.start else None
        end = prim.line(chart, curve.end) if curve.end else None
        return start, end

    def apply(self, curve: Traced) -> Traced:
        start, end = self._move_lines(curve, self.prim)
        cur = self.scene.apply_affine(curve, primitive_affine(self.prim),
                                      start, end)
        for tw in self.twists:
            cur = tw.apply(cur)
        return cur

    def apply_inverse(self, curve: Traced) -> Traced:
        cur = curve
        for tw in reversed(self.twists):
            cur = tw.apply(cur, power_sign=-1)
        aff = primitive_affine(self.prim)
        inv = Aff(F(1) / aff.a, F(0), F(0), F(1) / aff.d,
                  -aff.e / aff.a, -aff.f / aff.d)
        prim_inv = self.prim.inverse()
        start, end = self._move_lines(cur, prim_inv)
        return self.scene.apply_affine(cur, inv, start, end)

    def apply_power(self, curve: Traced, k: int) -> Traced:
        cur = curve
        for _ in range(abs(k)):
            cur = self.apply(cur) if k > 0 else self.apply_inverse(cur)
        return cur
