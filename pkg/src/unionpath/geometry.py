"""Geometric primitives, object families, instances, validation, generation.

Two object families are supported:

* disks, evaluated in double precision (tolerance numeric.EPS, generated
  with a minimum gap numeric.GAP between distinct critical values),
* homothets of a fixed convex polygon, evaluated in exact rationals.

Every object boundary is a cyclic sequence of x-monotone arcs: two
half-circles for a disk, one segment per edge for a polygon.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DegenerateOverlap, DegeneracyDetected, GenerationFailed
from .numeric import (
    EPS,
    GAP,
    Number,
    Point,
    num_cmp,
    num_eq,
    point_cmp,
    point_eq,
    rational_from_json,
    rational_to_json,
)

INF = math.inf

# Union-complexity notes per family, recorded as metadata only.
FAMILY_INFO = {
    "disks": {
        "max_arc_crossings": 2,
        "union_complexity": "linear (pseudodisks)",
    },
    "polygons": {
        "max_arc_crossings": 1,
        "union_complexity": "linear (homothets of a convex polygon are pseudodisks)",
    },
}


# ---------------------------------------------------------------------------
# Arcs


@dataclass(frozen=True, eq=False)
class Arc:
    """An x-monotone boundary piece: a segment or half-circle sub-arc.

    Endpoints satisfy p0.x < p1.x.  For circular arcs `circle` holds
    (cx, cy, r, upper); `upper` selects the half above/below the center.
    `source` is the owning object id, when the arc is an object boundary.
    """

    p0: Point
    p1: Point
    circle: Optional[tuple] = None
    source: Optional[int] = None

    @property
    def x0(self) -> Number:
        return self.p0.x

    @property
    def x1(self) -> Number:
        return self.p1.x

    @property
    def is_segment(self) -> bool:
        return self.circle is None

    def with_source(self, source: Optional[int]) -> "Arc":
        return Arc(self.p0, self.p1, self.circle, source)

    def _segment_slope(self):
        s = self.__dict__.get("_slope")
        if s is None:
            s = (self.p1.y - self.p0.y) / (self.p1.x - self.p0.x)
            object.__setattr__(self, "_slope", s)
        return s

    def y_at(self, x: Number) -> Number:
        if self.circle is None:
            return self.p0.y + (x - self.p0.x) * self._segment_slope()
        cx, cy, r, upper = self.circle
        dx = x - cx
        h2 = r * r - dx * dx
        if h2 < 0.0:
            h2 = 0.0
        h = math.sqrt(h2)
        return cy + h if upper else cy - h

    def slope_at(self, p: Point, at_left_end: bool) -> float:
        """Tangent slope of the rightward traversal at endpoint p.

        Vertical tangents (circle extremes) map to +/- math.inf.
        """
        if self.circle is None:
            return self._segment_slope()
        cx, cy, r, upper = self.circle
        dy = p.y - cy
        if isinstance(dy, float) and abs(dy) <= EPS * max(1.0, r):
            if upper:
                return INF if at_left_end else -INF
            return -INF if at_left_end else INF
        return -(p.x - cx) / dy

    def curvature(self) -> float:
        if self.circle is None:
            return 0.0
        cx, cy, r, upper = self.circle
        return (-1.0 if upper else 1.0) / float(r)

    def contains_x(self, x: Number, tol: float = EPS) -> bool:
        return num_cmp(self.x0, x, tol) <= 0 and num_cmp(x, self.x1, tol) <= 0

    def point_on(self, p: Point, tol: float = EPS) -> bool:
        """Is p on this arc (within tolerance in float mode)?"""
        if not self.contains_x(p.x, tol):
            return False
        if self.circle is not None:
            cx, cy, r, upper = self.circle
            if upper and num_cmp(p.y, cy, tol) < 0:
                return False
            if not upper and num_cmp(p.y, cy, tol) > 0:
                return False
            d2 = (p.x - cx) ** 2 + (p.y - cy) ** 2
            return abs(d2 - r * r) <= tol * max(1.0, 4.0 * float(r))
        return num_eq(self.y_at(p.x), p.y, tol)

    def bbox(self):
        cached = self.__dict__.get("_bbox")
        if cached is not None:
            return cached
        ys = [self.p0.y, self.p1.y]
        if self.circle is not None:
            cx, cy, r, upper = self.circle
            if self.x0 <= cx <= self.x1:
                ys.append(cy + r if upper else cy - r)
        box = (self.x0, self.x1, min(ys), max(ys))
        object.__setattr__(self, "_bbox", box)
        return box

    def sample_point(self) -> Point:
        """Deterministic interior point of the arc."""
        if isinstance(self.x0, float) or isinstance(self.x1, float):
            xm = (self.x0 + self.x1) / 2.0
        else:
            xm = Fraction(self.x0 + self.x1, 2)
        return Point(xm, self.y_at(xm))

    def split_at(self, points: Sequence[Point]) -> list:
        """Split into sub-arcs at interior points (sorted by x)."""
        if not points:
            return [self]
        pieces = []
        prev = self.p0
        for p in sorted(points, key=lambda q: (q.x, q.y)):
            pieces.append(Arc(prev, p, self.circle, self.source))
            prev = p
        pieces.append(Arc(prev, self.p1, self.circle, self.source))
        return pieces

    def __repr__(self):  # short, for debugging
        kind = "seg" if self.circle is None else ("arcU" if self.circle[3] else "arcL")
        return f"{kind}[{self.source}]({float(self.p0.x):.3g},{float(self.p0.y):.3g})-({float(self.p1.x):.3g},{float(self.p1.y):.3g})"


def segment_arc(a: Point, b: Point, source: Optional[int] = None) -> Arc:
    c = num_cmp(a.x, b.x, 0 if not isinstance(a.x, float) else EPS)
    if c == 0:
        raise DegeneracyDetected(f"vertical segment {a}-{b} is not x-monotone")
    if c > 0:
        a, b = b, a
    return Arc(a, b, None, source)


def disk_arcs(cx: float, cy: float, r: float, source: Optional[int] = None) -> list:
    left = Point(cx - r, cy)
    right = Point(cx + r, cy)
    return [
        Arc(left, right, (cx, cy, r, True), source),
        Arc(left, right, (cx, cy, r, False), source),
    ]


# ---------------------------------------------------------------------------
# Arc x arc intersections


def _same_circle(c1, c2, tol: float) -> bool:
    return (
        abs(c1[0] - c2[0]) <= tol
        and abs(c1[1] - c2[1]) <= tol
        and abs(c1[2] - c2[2]) <= tol
    )


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def arc_intersections(a: Arc, b: Arc) -> list:
    """Proper (transversal) intersection points of two distinct arcs.

    Sorted lexicographically.  Points that are endpoints of both arcs are
    excluded.  Raises DegenerateOverlap when the arcs share a sub-arc.
    Tangential touches are not reported (they violate general position and
    are caught by the validator).
    """
    if a is b:
        raise ValueError("arc_intersections requires two distinct arcs")
    exact = not (isinstance(a.x0, float) or isinstance(b.x0, float))
    tol = 0 if exact else EPS

    ba, bb = a.bbox(), b.bbox()
    if (
        ba[1] < bb[0] - tol
        or bb[1] < ba[0] - tol
        or ba[3] < bb[2] - tol
        or bb[3] < ba[2] - tol
    ):
        return []

    pts: list[Point] = []
    if a.circle is not None and b.circle is not None:
        if _same_circle(a.circle, b.circle, EPS):
            if a.circle[3] == b.circle[3]:
                lo = max(a.x0, b.x0)
                hi = min(a.x1, b.x1)
                if hi - lo > EPS:
                    raise DegenerateOverlap("arcs overlap on a common circle")
            return []
        pts = _circle_circle(a.circle, b.circle)
    elif a.circle is None and b.circle is None:
        return _segment_segment(a, b, exact)
    else:
        seg, arc = (a, b) if a.circle is None else (b, a)
        pts = _segment_circle(seg, arc.circle)

    out = []
    for p in pts:
        if not (a.point_on(p, EPS) and b.point_on(p, EPS)):
            continue
        a_end = point_eq(p, a.p0) or point_eq(p, a.p1)
        b_end = point_eq(p, b.p0) or point_eq(p, b.p1)
        if a_end and b_end:
            continue
        out.append(p)
    out.sort(key=lambda q: (q.x, q.y))
    dedup = []
    for p in out:
        if not dedup or not point_eq(dedup[-1], p):
            dedup.append(p)
    return dedup


def _segment_segment(a: Arc, b: Arc, exact: bool) -> list:
    tol = 0 if exact else EPS
    d1x, d1y = a.p1.x - a.p0.x, a.p1.y - a.p0.y
    d2x, d2y = b.p1.x - b.p0.x, b.p1.y - b.p0.y
    denom = _cross(d1x, d1y, d2x, d2y)
    wx, wy = b.p0.x - a.p0.x, b.p0.y - a.p0.y
    if num_eq(denom, 0, EPS if not exact else 0):
        if num_eq(_cross(d1x, d1y, wx, wy), 0, EPS if not exact else 0):
            lo = max(a.x0, b.x0)
            hi = min(a.x1, b.x1)
            if num_cmp(lo, hi, tol) < 0:
                raise DegenerateOverlap("collinear segments overlap")
        return []
    t = _cross(wx, wy, d2x, d2y) / denom
    p = Point(a.p0.x + t * d1x, a.p0.y + t * d1y)
    if not (a.point_on(p, EPS) and b.point_on(p, EPS)):
        return []
    a_end = point_eq(p, a.p0) or point_eq(p, a.p1)
    b_end = point_eq(p, b.p0) or point_eq(p, b.p1)
    if a_end and b_end:
        return []
    return [p]


def _circle_circle(c1, c2) -> list:
    x1, y1, r1, _ = c1
    x2, y2, r2, _ = c2
    dx, dy = x2 - x1, y2 - y1
    d2 = dx * dx + dy * dy
    d = math.sqrt(d2)
    if d <= EPS:
        return []
    a = (d2 + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    if h2 <= EPS * max(1.0, r1):
        return []  # disjoint, nested, or tangent
    h = math.sqrt(h2)
    mx, my = x1 + a * dx / d, y1 + a * dy / d
    ox, oy = -dy / d * h, dx / d * h
    return [Point(mx + ox, my + oy), Point(mx - ox, my - oy)]


def _segment_circle(seg: Arc, circle) -> list:
    cx, cy, r, _ = circle
    px, py = float(seg.p0.x), float(seg.p0.y)
    dx, dy = float(seg.p1.x - seg.p0.x), float(seg.p1.y - seg.p0.y)
    fx, fy = px - cx, py - cy
    A = dx * dx + dy * dy
    B = 2.0 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - float(r) * float(r)
    disc = B * B - 4.0 * A * C
    if disc <= EPS * max(1.0, A):
        return []  # no crossing, or tangency
    sq = math.sqrt(disc)
    out = []
    for t in ((-B - sq) / (2 * A), (-B + sq) / (2 * A)):
        out.append(Point(px + t * dx, py + t * dy))
    return out


# ---------------------------------------------------------------------------
# Objects


@dataclass(eq=False)
class GeomObject:
    """A constant-complexity topological disk with an x-monotone boundary."""

    id: int
    shape: str  # "disk" | "polygon"
    arcs: list
    disk: Optional[tuple] = None  # (cx, cy, r) floats
    vertices: Optional[list] = None  # polygon corners, CCW, exact coords
    raw: dict = field(default_factory=dict)  # exact parameters for file io

    @property
    def is_disk(self) -> bool:
        return self.shape == "disk"

    def boundary_sample(self) -> Point:
        """A deterministic point on the boundary."""
        return self.arcs[0].p0

    def bbox(self):
        if self.disk is not None:
            cx, cy, r = self.disk
            return (cx - r, cx + r, cy - r, cy + r)
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), max(xs), min(ys), max(ys))


def make_disk(obj_id: int, center, radius) -> GeomObject:
    """Disk object; exact parameters are kept for io, floats for geometry."""
    cx_e, cy_e = Fraction(center[0]), Fraction(center[1])
    r_e = Fraction(radius)
    if r_e <= 0:
        raise DegeneracyDetected("disk radius must be positive")
    cx, cy, r = float(cx_e), float(cy_e), float(r_e)
    return GeomObject(
        id=obj_id,
        shape="disk",
        arcs=disk_arcs(cx, cy, r, obj_id),
        disk=(cx, cy, r),
        raw={"center": (cx_e, cy_e), "radius": r_e},
    )


def make_polygon(obj_id: int, vertices) -> GeomObject:
    """Convex polygon object with exact rational corners, CCW order.

    Vertical edges are rejected (the generator never emits them and the
    file loader surfaces the rejection as a degeneracy).
    """
    verts = [Point(Fraction(x), Fraction(y)) for x, y in vertices]
    if len(verts) < 3:
        raise DegeneracyDetected("polygon needs at least 3 vertices")
    arcs = []
    m = len(verts)
    area2 = 0
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        if a.x == b.x:
            raise DegeneracyDetected(f"polygon {obj_id} has a vertical edge at x={a.x}")
        arcs.append(segment_arc(a, b, obj_id))
        area2 += a.x * b.y - b.x * a.y
    if area2 <= 0:
        raise DegeneracyDetected("polygon vertices must be in CCW order")
    return GeomObject(
        id=obj_id,
        shape="polygon",
        arcs=arcs,
        vertices=verts,
        raw={"vertices": [(v.x, v.y) for v in verts]},
    )


def object_contains_point(obj: GeomObject, p: Point) -> str:
    """Classify p as "interior", "boundary", or "exterior" of the object."""
    if obj.disk is not None:
        cx, cy, r = obj.disk
        d = math.hypot(float(p.x) - cx, float(p.y) - cy)
        if abs(d - r) <= EPS:
            return "boundary"
        return "interior" if d < r else "exterior"
    exact = not isinstance(p.x, float)
    tol = 0 if exact and not isinstance(obj.arcs[0].x0, float) else EPS
    for arc in obj.arcs:
        if arc.point_on(p, EPS):
            return "boundary"
    crossings = 0
    for arc in obj.arcs:
        # half-open x-range [x0, x1) resolves rays through vertices
        if num_cmp(arc.x0, p.x, tol) <= 0 and num_cmp(p.x, arc.x1, tol) < 0:
            if num_cmp(arc.y_at(p.x), p.y, tol) > 0:
                crossings += 1
    return "interior" if crossings % 2 == 1 else "exterior"


def objects_intersect(d1: GeomObject, d2: GeomObject) -> bool:
    """Closed-region intersection test."""
    if d1 is d2 or d1.id == d2.id:
        raise ValueError("objects_intersect requires two distinct objects")
    if d1.disk is not None and d2.disk is not None:
        x1, y1, r1 = d1.disk
        x2, y2, r2 = d2.disk
        return math.hypot(x2 - x1, y2 - y1) <= r1 + r2 + EPS
    b1, b2 = d1.bbox(), d2.bbox()
    if b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]:
        return False
    for a in d1.arcs:
        for b in d2.arcs:
            if arc_intersections(a, b):
                return True
    if object_contains_point(d2, d1.boundary_sample()) != "exterior":
        return True
    if object_contains_point(d1, d2.boundary_sample()) != "exterior":
        return True
    return False


# ---------------------------------------------------------------------------
# Instances


@dataclass
class Instance:
    """A set of objects from one family."""

    objects: list
    family: str  # "disks" | "polygons"
    name: str = "instance"

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def s(self) -> int:
        return FAMILY_INFO[self.family]["max_arc_crossings"]

    @property
    def exact(self) -> bool:
        return self.family == "polygons"

    def all_arcs(self) -> list:
        out = []
        for obj in self.objects:
            out.extend(obj.arcs)
        return out

    def sub_instance(self, ids: Sequence[int], name: str = "sub") -> "Instance":
        """Induced instance on the given object ids, re-indexed 0..k-1."""
        objs = []
        for new_id, old_id in enumerate(sorted(ids)):
            src = self.objects[old_id]
            if src.disk is not None:
                objs.append(make_disk(new_id, src.raw["center"], src.raw["radius"]))
            else:
                objs.append(make_polygon(new_id, src.raw["vertices"]))
        return Instance(objs, self.family, name)


# ---------------------------------------------------------------------------
# Validation


@dataclass
class Violation:
    kind: str
    objects: tuple
    point: Optional[Point] = None
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list

    @property
    def clean(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def _disk_pair_violation(o1: GeomObject, o2: GeomObject, gap: float):
    x1, y1, r1 = o1.disk
    x2, y2, r2 = o2.disk
    d = math.hypot(x2 - x1, y2 - y1)
    if d <= EPS and abs(r1 - r2) <= EPS:
        return Violation("arc-overlap", (o1.id, o2.id), detail="identical disks")
    if abs(d - (r1 + r2)) < gap:
        t = r1 / (r1 + r2)
        pt = Point(x1 + (x2 - x1) * t, y1 + (y2 - y1) * t)
        return Violation("tangency", (o1.id, o2.id), pt, "outer tangency")
    if d > EPS and abs(d - abs(r1 - r2)) < gap:
        return Violation("tangency", (o1.id, o2.id), detail="inner tangency")
    return None


def validate_general_position(inst: Instance, gap: float = GAP) -> ValidationReport:
    """List general-position violations (tangencies, triple points, arc
    overlaps, coincident vertices, critical points closer than `gap`).

    Exact (polygon) instances skip the floating-gap check.
    """
    violations: list[Violation] = []
    ids = [o.id for o in inst.objects]
    if ids != list(range(inst.n)):
        violations.append(Violation("bad-ids", tuple(ids), detail="ids must be 0..n-1"))

    crossing_pts = []  # (Point, frozenset(ids))
    n = inst.n
    grid = _NeighborGrid(inst) if inst.family == "disks" and n > 64 else None
    pairs = grid.candidate_pairs() if grid else [
        (i, j) for i in range(n) for j in range(i + 1, n)
    ]
    for i, j in pairs:
        o1, o2 = inst.objects[i], inst.objects[j]
        if o1.disk is not None and o2.disk is not None:
            v = _disk_pair_violation(o1, o2, gap if not inst.exact else EPS)
            if v is not None:
                violations.append(v)
                continue
            x1, y1, r1 = o1.disk
            x2, y2, r2 = o2.disk
            if math.hypot(x2 - x1, y2 - y1) > r1 + r2:
                continue  # disjoint: no crossings to collect
        b1, b2 = o1.bbox(), o2.bbox()
        if b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]:
            continue
        try:
            for a in o1.arcs:
                for b in o2.arcs:
                    ba, bb = a.bbox(), b.bbox()
                    if ba[1] < bb[0] or bb[1] < ba[0] or ba[3] < bb[2] or bb[3] < ba[2]:
                        continue
                    for p in arc_intersections(a, b):
                        crossing_pts.append((p, (i, j)))
        except DegenerateOverlap as exc:
            violations.append(Violation("arc-overlap", (i, j), detail=str(exc)))
    if inst.exact:
        _polygon_touch_checks(inst, pairs, violations)

    # triple points: two crossings at (nearly) the same point involving
    # three or more distinct objects
    crossing_pts.sort(key=lambda t: (t[0].x, t[0].y))
    for k in range(len(crossing_pts)):
        p, pk = crossing_pts[k]
        for m in range(k + 1, len(crossing_pts)):
            q, qm = crossing_pts[m]
            if num_cmp(q.x, p.x, EPS) > 0:
                break
            if point_eq(p, q) and set(pk) != set(qm):
                violations.append(
                    Violation("triple-point", tuple(sorted(set(pk) | set(qm))), p)
                )

    if not inst.exact:
        crit = [p for p, _ in crossing_pts]
        for obj in inst.objects:
            for arc in obj.arcs:
                crit.append(arc.p0)
                crit.append(arc.p1)
        crit.sort(key=lambda p: (p.x, p.y))
        for k in range(len(crit)):
            p = crit[k]
            for m in range(k + 1, len(crit)):
                q = crit[m]
                if q.x - p.x > gap:
                    break
                d = math.hypot(q.x - p.x, q.y - p.y)
                if EPS < d < gap:
                    violations.append(
                        Violation("close-critical-values", (), p, f"gap {d:.3g}")
                    )
        # a crossing whose x agrees (within snapping distance) with an
        # endpoint of one of its own arcs collides with the endpoint's
        # sweep event; reject such instances as effectively degenerate
        for p, (i, j) in crossing_pts:
            for oid in (i, j):
                for arc in inst.objects[oid].arcs:
                    for e in (arc.p0, arc.p1):
                        if abs(p.x - e.x) <= 3 * EPS and abs(p.y - e.y) > EPS:
                            violations.append(
                                Violation(
                                    "close-critical-values",
                                    (i, j),
                                    p,
                                    "crossing x-aligned with an arc endpoint",
                                )
                            )
    return ValidationReport(violations)


def _polygon_touch_checks(inst, pairs, violations):
    for i, j in pairs:
        o1, o2 = inst.objects[i], inst.objects[j]
        b1, b2 = o1.bbox(), o2.bbox()
        if b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]:
            continue
        for v in o1.vertices:
            if object_contains_point(o2, v) == "boundary":
                violations.append(Violation("coincident-vertex", (i, j), v))
        for v in o2.vertices:
            if object_contains_point(o1, v) == "boundary":
                violations.append(Violation("coincident-vertex", (i, j), v))


class _NeighborGrid:
    """Spatial hash over disk objects for near-linear pair candidates."""

    def __init__(self, inst: Instance):
        self.inst = inst
        rmax = max(o.disk[2] for o in inst.objects) if inst.n else 1.0
        self.cell = 2.0 * rmax
        self.cells: dict = {}
        for o in inst.objects:
            cx, cy, _ = o.disk
            key = (int(cx // self.cell), int(cy // self.cell))
            self.cells.setdefault(key, []).append(o.id)

    def candidate_pairs(self):
        seen = set()
        out = []
        for (gx, gy), members in self.cells.items():
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    other = self.cells.get((gx + dx, gy + dy))
                    if not other:
                        continue
                    for i in members:
                        for j in other:
                            if i < j and (i, j) not in seen:
                                seen.add((i, j))
                                out.append((i, j))
        return sorted(out)

    def adjacency(self):
        """Intersection adjacency restricted to grid-candidate pairs."""
        adj = [[] for _ in range(self.inst.n)]
        for i, j in self.candidate_pairs():
            if objects_intersect(self.inst.objects[i], self.inst.objects[j]):
                adj[i].append(j)
                adj[j].append(i)
        return adj


# ---------------------------------------------------------------------------
# Generation


#: Base polygon for the homothet family: convex, CCW, no vertical edges.
BASE_POLYGON = [
    (Fraction(0), Fraction(0)),
    (Fraction(4, 3), Fraction(0)),
    (Fraction(2), Fraction(1)),
    (Fraction(1), Fraction(5, 3)),
    (Fraction(-1, 3), Fraction(1)),
]


@dataclass
class GeneratorSpec:
    """Parameters for generate_instance; either a preset or a random family."""

    preset: Optional[str] = None  # chain | pair | nest | iso | triangle
    k: int = 3  # chain length for the chain preset
    family: str = "disks"
    n: int = 0
    seed: int = 0
    connected: bool = False
    box: Optional[float] = None  # side of the sampling box (auto if None)
    radius: tuple = (0.5, 1.5)
    scale: tuple = (0.5, 1.5)
    gap: float = GAP
    retries: int = 60
    name: Optional[str] = None


def chain_instance(k: int) -> Instance:
    """k unit disks centered at (1.4*i, 0): the path graph on k nodes."""
    objs = [make_disk(i, (Fraction(7, 5) * i, 0), 1) for i in range(k)]
    return Instance(objs, "disks", f"CH_{k}")


def pair_instance() -> Instance:
    objs = [make_disk(0, (0, 0), 1), make_disk(1, (1, 0), 1)]
    return Instance(objs, "disks", "PAIR")


def nest_instance() -> Instance:
    objs = [make_disk(0, (0, 0), 2), make_disk(1, (Fraction(1, 2), 0), Fraction(1, 2))]
    return Instance(objs, "disks", "NEST")


def iso_instance() -> Instance:
    objs = [make_disk(0, (0, 0), 1), make_disk(1, (5, 0), 1)]
    return Instance(objs, "disks", "ISO")


def triangle_instance() -> Instance:
    """Three mutually overlapping unit disks (a 3-clique)."""
    objs = [
        make_disk(0, (0, 0), 1),
        make_disk(1, (1, 0), 1),
        make_disk(2, (Fraction(1, 2), Fraction(3, 4)), 1),
    ]
    return Instance(objs, "disks", "TRI")


PRESETS = {
    "pair": pair_instance,
    "nest": nest_instance,
    "iso": iso_instance,
    "triangle": triangle_instance,
}


def _auto_box_side(n: int, radius: tuple) -> float:
    # constant expected density: ~5 expected neighbors per disk, slightly
    # above the percolation threshold so one large component dominates
    rbar = (radius[0] + radius[1]) / 2.0
    return max(4.0 * radius[1], 1.6 * rbar * math.sqrt(max(n, 1)))


def _sample_disks(rng: random.Random, spec: GeneratorSpec, side: float) -> Instance:
    objs = []
    for i in range(spec.n):
        cx = Fraction(rng.uniform(0.0, side))
        cy = Fraction(rng.uniform(0.0, side))
        r = Fraction(rng.uniform(*spec.radius))
        objs.append(make_disk(i, (cx, cy), r))
    return Instance(objs, "disks", spec.name or f"disks_n{spec.n}_s{spec.seed}")


def _sample_polygons(rng: random.Random, spec: GeneratorSpec, side: float) -> Instance:
    objs = []
    denom = 1 << 20
    for i in range(spec.n):
        s = Fraction(rng.randint(int(spec.scale[0] * 1024), int(spec.scale[1] * 1024)), 1024)
        tx = Fraction(rng.randint(0, int(side * denom)), denom)
        ty = Fraction(rng.randint(0, int(side * denom)), denom)
        verts = [(x * s + tx, y * s + ty) for x, y in BASE_POLYGON]
        objs.append(make_polygon(i, verts))
    return Instance(objs, "polygons", spec.name or f"polygons_n{spec.n}_s{spec.seed}")


def generate_instance(spec: GeneratorSpec) -> Instance:
    """Deterministic instance generation with validation and retries."""
    if spec.preset is not None:
        key = spec.preset.lower()
        if key.startswith("chain") or key.startswith("ch"):
            inst = chain_instance(spec.k)
        elif key in PRESETS:
            inst = PRESETS[key]()
        else:
            raise GenerationFailed(f"unknown preset {spec.preset!r}")
        report = validate_general_position(inst, spec.gap)
        if not report.clean:
            raise GenerationFailed(f"preset {spec.preset} fails validation: {report.violations}")
        return inst

    rng = random.Random(spec.seed)
    side = spec.box if spec.box is not None else _auto_box_side(spec.n, spec.radius)
    for attempt in range(spec.retries):
        if spec.family == "disks":
            inst = _sample_disks(rng, spec, side)
        elif spec.family == "polygons":
            inst = _sample_polygons(rng, spec, side)
        else:
            raise GenerationFailed(f"unknown family {spec.family!r}")
        if spec.n == 0:
            return inst
        # re-perturb the objects named in violations instead of resampling
        # everything; degeneracies are local, so this converges quickly
        for _ in range(spec.retries):
            report = validate_general_position(inst, spec.gap)
            if report.clean:
                break
            offenders = sorted({o for v in report.violations for o in v.objects})
            if not offenders:
                break
            for obj_id in offenders:
                if spec.family == "disks":
                    inst.objects[obj_id] = make_disk(
                        obj_id,
                        (Fraction(rng.uniform(0.0, side)), Fraction(rng.uniform(0.0, side))),
                        Fraction(rng.uniform(*spec.radius)),
                    )
                else:
                    s = Fraction(rng.randint(int(spec.scale[0] * 1024), int(spec.scale[1] * 1024)), 1024)
                    denom = 1 << 20
                    tx = Fraction(rng.randint(0, int(side * denom)), denom)
                    ty = Fraction(rng.randint(0, int(side * denom)), denom)
                    inst.objects[obj_id] = make_polygon(
                        obj_id, [(x * s + tx, y * s + ty) for x, y in BASE_POLYGON]
                    )
        else:
            continue
        if not report.clean:
            continue
        if spec.connected and not _is_connected(inst):
            side *= 0.97  # densify slightly and retry
            continue
        return inst
    raise GenerationFailed(
        f"could not generate a valid instance after {spec.retries} attempts"
    )


def _is_connected(inst: Instance) -> bool:
    if inst.n <= 1:
        return True
    if inst.family == "disks" and inst.n > 600:
        adj = _NeighborGrid(inst).adjacency()
    else:
        # lazy import: the reference module depends on geometry
        from . import reference

        adj = reference.explicit_graph(inst).adjacency
    seen = [False] * inst.n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == inst.n


# ---------------------------------------------------------------------------
# Instance file io


def instance_to_dict(inst: Instance) -> dict:
    objs = []
    for o in inst.objects:
        if o.shape == "disk":
            cx, cy = o.raw["center"]
            objs.append(
                {
                    "id": o.id,
                    "shape": "disk",
                    "center": [rational_to_json(cx), rational_to_json(cy)],
                    "radius": rational_to_json(o.raw["radius"]),
                }
            )
        else:
            objs.append(
                {
                    "id": o.id,
                    "shape": "polygon",
                    "vertices": [
                        [rational_to_json(x), rational_to_json(y)]
                        for x, y in o.raw["vertices"]
                    ],
                }
            )
    return {"name": inst.name, "objects": objs}


def instance_from_dict(data: dict) -> Instance:
    objs = []
    family = None
    for entry in sorted(data["objects"], key=lambda e: e["id"]):
        if entry["shape"] == "disk":
            fam = "disks"
            obj = make_disk(
                entry["id"],
                (rational_from_json(entry["center"][0]), rational_from_json(entry["center"][1])),
                rational_from_json(entry["radius"]),
            )
        elif entry["shape"] == "polygon":
            fam = "polygons"
            obj = make_polygon(
                entry["id"],
                [(rational_from_json(x), rational_from_json(y)) for x, y in entry["vertices"]],
            )
        else:
            raise ValueError(f"unknown shape {entry['shape']!r}")
        if family is None:
            family = fam
        elif family != fam:
            raise ValueError("mixed families in one instance are not supported")
        objs.append(obj)
    return Instance(objs, family or "disks", data.get("name", "instance"))


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":")) + "\n"


def save_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_instance(inst))


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))
