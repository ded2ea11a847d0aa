"""Brute-force oracles defining ground truth for the other modules.

Everything here is intentionally simple and quadratic-or-worse, computed
with all-pairs primitives from the geometry module only.  These oracles
share no traversal logic with the production sweep/subdivision code, so
they can be used to cross-check it.  Intended input sizes: n <= 60 for
the geometric oracles, a few hundred for the graph oracles.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NotConnected
from .geometry import (
    Arc,
    GeomObject,
    Instance,
    arc_intersections,
    object_contains_point,
    objects_intersect,
)
from .numeric import EPS, Point, num_cmp, num_eq, point_eq

INF = math.inf


# ---------------------------------------------------------------------------
# Explicit intersection graph and textbook graph algorithms


@dataclass
class ExplicitGraph:
    n: int
    adjacency: list  # list of sorted neighbor lists


def explicit_graph(inst: Instance) -> ExplicitGraph:
    """All-pairs intersection tests; O(n^2) object pair tests."""
    adj = [[] for _ in range(inst.n)]
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            if objects_intersect(inst.objects[i], inst.objects[j]):
                adj[i].append(j)
                adj[j].append(i)
    return ExplicitGraph(inst.n, adj)


def bfs(g: ExplicitGraph, src: int) -> list:
    """Hop distances from src; unreachable nodes get math.inf."""
    dist = [INF] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] == INF:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: ExplicitGraph) -> bool:
    if g.n <= 1:
        return True
    return INF not in bfs(g, 0)


def exact_eccentricities(g: ExplicitGraph) -> list:
    if not is_connected(g):
        raise NotConnected("eccentricities need a connected graph")
    return [max(bfs(g, u)) for u in range(g.n)]


def exact_diameter(g: ExplicitGraph) -> int:
    eccs = exact_eccentricities(g)
    return max(eccs) if eccs else 0


# ---------------------------------------------------------------------------
# Brute red-blue intersections


def brute_red_blue(red: Sequence[Arc], blue: Sequence[Arc]) -> list:
    """All red x blue intersections as (blue_index, red_index, point)."""
    out = []
    for bi, b in enumerate(blue):
        for ri, r in enumerate(red):
            if b.source is not None and b.source == r.source:
                continue
            for p in arc_intersections(r, b):
                out.append((bi, ri, p))
    out.sort(key=lambda t: (t[0], t[1], t[2].x, t[2].y))
    return out


# ---------------------------------------------------------------------------
# Point-in-region helpers (parity against a cycle of arcs)


def parity_inside(arcs: Sequence[Arc], p: Point) -> bool:
    """Is p strictly inside the closed curve formed by the arcs?"""
    tol = EPS if isinstance(p.x, float) or (arcs and isinstance(arcs[0].x0, float)) else 0
    crossings = 0
    for arc in arcs:
        if num_cmp(arc.x0, p.x, tol) <= 0 and num_cmp(p.x, arc.x1, tol) < 0:
            if num_cmp(arc.y_at(p.x), p.y, tol) > 0:
                crossings += 1
    return crossings % 2 == 1


def on_cycle(arcs: Sequence[Arc], p: Point) -> bool:
    return any(arc.point_on(p, EPS) for arc in arcs)


def point_in_closed_cycle(arcs: Sequence[Arc], p: Point) -> bool:
    """Closed membership: inside or on the bounding arcs."""
    return on_cycle(arcs, p) or parity_inside(arcs, p)


def _horizontal_hits(arc: Arc, y0, x_max) -> list:
    """x-coordinates where the arc meets the horizontal line y=y0, x<x_max."""
    hits = []
    if arc.circle is None:
        y0f, ya, yb = y0, arc.p0.y, arc.p1.y
        lo, hi = min(ya, yb), max(ya, yb)
        if lo <= y0f <= hi and ya != yb:
            t = (y0f - ya) / (yb - ya)
            hits.append(arc.p0.x + t * (arc.p1.x - arc.p0.x))
    else:
        cx, cy, r, upper = arc.circle
        dy = float(y0) - cy
        h2 = r * r - dy * dy
        if h2 >= 0.0:
            if (upper and dy >= -EPS) or (not upper and dy <= EPS):
                h = math.sqrt(h2)
                for x in (cx - h, cx + h):
                    if arc.contains_x(x):
                        hits.append(x)
    return [x for x in hits if num_cmp(x, x_max, EPS) < 0]


# ---------------------------------------------------------------------------
# Brute arrangement
#
# Crossings come from all-pairs arc intersections.  Faces are extracted with
# an angular walk written independently of the subdivision module; cycle
# orientation uses a sampled shoelace sum, and holes are assigned with a
# leftward ray shot, so both methods differ from the production code paths.


@dataclass
class BruteFace:
    index: int
    outer: list  # arcs of the outer cycle
    holes: list  # list of arc lists
    sample: Point  # interior point


@dataclass
class BruteArrangement:
    vertices: list
    pieces: list  # split arcs
    faces: list  # bounded faces only
    adjacency: list  # sorted list of sorted (fa, fb) pairs, -1 = unbounded
    piece_sides: list  # per piece: (face above, face below), -1 = unbounded

    @property
    def n_bounded_faces(self) -> int:
        return len(self.faces)


class _VertexRegistry:
    def __init__(self, tol: float):
        self.tol = tol
        self.points: list[Point] = []

    def snap(self, p: Point) -> Point:
        for q in self.points:
            if point_eq(q, p, self.tol) if self.tol else q == p:
                return q
        self.points.append(p)
        return p


def _cycle_orientation(cycle: list) -> bool:
    """True for CCW.  cycle: list of (arc, forward) directed pieces."""
    pts = []
    for arc, forward in cycle:
        chain = [arc.p0]
        if arc.circle is not None:
            x0, x1 = float(arc.x0), float(arc.x1)
            for t in (0.25, 0.5, 0.75):
                x = x0 + t * (x1 - x0)
                chain.append(Point(x, arc.y_at(x)))
        chain.append(arc.p1)
        if not forward:
            chain.reverse()
        pts.extend(chain[:-1])
    area2 = 0.0
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        area2 += float(a.x) * float(b.y) - float(b.x) * float(a.y)
    return area2 > 0.0


def _interior_sample(cycle_arcs: list, all_arcs: list, tol) -> Point:
    """A point strictly inside the region bounded by a CCW cycle."""
    vxs = set()
    for arc in all_arcs:
        vxs.add(arc.x0)
        vxs.add(arc.x1)
    v = min((a.p0 for a in cycle_arcs), key=lambda p: (p.x, p.y))
    bigger = [x for x in vxs if num_cmp(x, v.x, tol) > 0]
    limit = min(bigger) if bigger else v.x + 1
    for shrink in range(1, 12):
        if isinstance(v.x, float) or isinstance(limit, float):
            xs = v.x + (float(limit) - float(v.x)) / (2.0 * shrink)
        else:
            xs = v.x + Fraction(limit - v.x, 2 * shrink)
        ys = sorted(a.y_at(xs) for a in cycle_arcs if a.contains_x(xs, 0 if not tol else tol))
        if len(ys) >= 2:
            if isinstance(ys[0], float) or isinstance(ys[1], float):
                cand = Point(xs, (ys[0] + ys[1]) / 2.0)
            else:
                cand = Point(xs, Fraction(ys[0] + ys[1], 2))
            if not any(a.point_on(cand, EPS) for a in all_arcs):
                if parity_inside(cycle_arcs, cand):
                    return cand
    raise RuntimeError("could not place an interior sample point")


def brute_arrangement(arcs: Sequence[Arc]) -> BruteArrangement:
    arcs = list(arcs)
    exact = not any(isinstance(a.x0, float) for a in arcs)
    tol = 0 if exact else EPS
    reg = _VertexRegistry(tol)

    cuts: dict = {id(a): [] for a in arcs}
    for i, a in enumerate(arcs):
        reg.snap(a.p0)
        reg.snap(a.p1)
        for b in arcs[i + 1 :]:
            for p in arc_intersections(a, b):
                q = reg.snap(p)
                for arc in (a, b):
                    if not (point_eq(q, arc.p0, EPS) or point_eq(q, arc.p1, EPS)):
                        cuts[id(arc)].append(q)
    pieces = []
    for a in arcs:
        interior = []
        for q in cuts[id(a)]:
            if not any(point_eq(q, r, EPS) for r in interior):
                interior.append(q)
        for piece in a.split_at(interior):
            pieces.append(
                Arc(reg.snap(piece.p0), reg.snap(piece.p1), piece.circle, piece.source)
            )

    # directed sides: (piece_index, forward); forward means p0 -> p1
    outgoing: dict = {}
    for pi, piece in enumerate(pieces):
        outgoing.setdefault(piece.p0, []).append((pi, True))
        outgoing.setdefault(piece.p1, []).append((pi, False))

    def _dir_key(side):
        # CCW order around a vertex: rightward block by ascending slope
        # (angles -90..90), then leftward block, also ascending slope
        # (angles 90..270 are slope+180).
        pi, forward = side
        piece = pieces[pi]
        if forward:
            s = piece.slope_at(piece.p0, True)
            return (0, s, piece.curvature(), piece.source or -1, pi)
        s = piece.slope_at(piece.p1, False)
        return (1, s, -piece.curvature(), piece.source or -1, pi)

    order: dict = {}
    for v, sides in outgoing.items():
        sides.sort(key=_dir_key)
        order[v] = {side: k for k, side in enumerate(sides)}

    def next_side(side):
        pi, forward = side
        dest = pieces[pi].p1 if forward else pieces[pi].p0
        twin = (pi, not forward)
        sides = outgoing[dest]
        k = order[dest][twin]
        return sides[(k - 1) % len(sides)]

    seen = set()
    cycles = []
    for v, sides in outgoing.items():
        for side in sides:
            if side in seen:
                continue
            cyc = []
            cur = side
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = next_side(cur)
            cycles.append(cyc)

    ccw, cw = [], []
    for cyc in cycles:
        directed = [(pieces[pi], fwd) for pi, fwd in cyc]
        (ccw if _cycle_orientation(directed) else cw).append(cyc)

    faces = []
    side_face: dict = {}
    for fi, cyc in enumerate(ccw):
        cyc_arcs = [pieces[pi] for pi, _ in cyc]
        sample = _interior_sample(cyc_arcs, pieces, tol)
        faces.append(BruteFace(fi, cyc_arcs, [], sample))
        for side in cyc:
            side_face[side] = fi

    # assign each CW cycle to its surrounding face: shoot a ray leftward
    # from the hole's leftmost vertex, take a point halfway to the nearest
    # boundary hit, and find the innermost CCW cycle containing it
    def innermost_ccw(p):
        candidates = [
            fi for fi, face in enumerate(faces) if parity_inside(face.outer, p)
        ]
        if not candidates:
            return -1
        best = candidates[0]
        for fi in candidates[1:]:
            if parity_inside(faces[best].outer, faces[fi].sample):
                best = fi
        return best

    for cyc in cw:
        member = set(cyc)
        v = min(
            (pieces[pi].p0 if fwd else pieces[pi].p1 for pi, fwd in cyc),
            key=lambda p: (p.x, p.y),
        )
        best_x = None
        for pi, piece in enumerate(pieces):
            if (pi, True) in member or (pi, False) in member:
                continue
            for x in _horizontal_hits(piece, v.y, v.x):
                if best_x is None or x > best_x:
                    best_x = x
        if best_x is None:
            fi = -1
        else:
            fi = None
            for denom in (2, 4, 8, 16, 32):
                if isinstance(v.x, float) or isinstance(best_x, float):
                    px = v.x + (float(best_x) - float(v.x)) / denom
                else:
                    px = v.x + Fraction(best_x - v.x, denom)
                p_out = Point(px, v.y)
                if not any(piece.point_on(p_out, EPS) for piece in pieces):
                    fi = innermost_ccw(p_out)
                    break
            if fi is None:
                raise RuntimeError("could not place a hole probe point")
        cyc_arcs = [pieces[pi] for pi, _ in cyc]
        if fi >= 0:
            faces[fi].holes.append(cyc_arcs)
        for side in cyc:
            side_face[side] = fi

    adjacency = []
    piece_sides = []
    for pi in range(len(pieces)):
        fa = side_face.get((pi, True), -1)
        fb = side_face.get((pi, False), -1)
        adjacency.append(tuple(sorted((fa, fb))))
        piece_sides.append((fa, fb))
    adjacency.sort()

    return BruteArrangement(reg.points, pieces, faces, adjacency, piece_sides)


def brute_locate(arr: BruteArrangement, p: Point) -> int:
    """Face index containing p strictly inside; -1 for unbounded.

    Raises if p lies on an arc.
    """
    if any(piece.point_on(p, EPS) for piece in arr.pieces):
        raise ValueError("point on an arrangement arc")
    for face in arr.faces:
        if parity_inside(face.outer, p) and not any(
            parity_inside(h, p) for h in face.holes
        ):
            return face.index
    return -1


# ---------------------------------------------------------------------------
# Brute stacking: arrangement cells merged by their topmost object


@dataclass
class BruteStackingCell:
    owner: int
    samples: list  # interior samples of the member arrangement faces


def brute_stacking(inst: Instance, perm: Sequence[int]) -> list:
    """Cells of the stacking for permutation `perm` (drawing order)."""
    pos = {obj_id: k for k, obj_id in enumerate(perm)}
    arr = brute_arrangement(inst.all_arcs())
    top = {}
    for face in arr.faces:
        containing = [
            o.id
            for o in inst.objects
            if object_contains_point(o, face.sample) == "interior"
        ]
        if containing:
            top[face.index] = max(containing, key=lambda i: pos[i])

    parent = {fi: fi for fi in top}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pi in range(len(arr.pieces)):
        fa, fb = arr.piece_sides[pi]
        if fa in top and fb in top and top[fa] == top[fb]:
            ra, rb = find(fa), find(fb)
            if ra != rb:
                parent[ra] = rb

    groups: dict = {}
    for fi in top:
        groups.setdefault(find(fi), []).append(fi)
    cells = []
    for members in groups.values():
        cells.append(
            BruteStackingCell(
                owner=top[members[0]],
                samples=[arr.faces[fi].sample for fi in sorted(members)],
            )
        )
    cells.sort(key=lambda c: (c.owner, (float(c.samples[0].x), float(c.samples[0].y))))
    return cells




# ---------------------------------------------------------------------------
# Brute conflict lists


def brute_conflict_lists(faces, inst: Instance) -> dict:
    """Conflict sets per face.

    `faces` is a sequence of (face_id, boundary_arcs); boundary arcs carry
    the ids of the objects contributing them.  An object is in conflict
    with a face when its boundary meets the closed face: it crosses the
    boundary, contributes an edge to it, or lies entirely inside.
    """
    out = {}
    face_list = list(faces)
    for face_id, arcs in face_list:
        k = set()
        for arc in arcs:
            if arc.source is not None:
                k.add(arc.source)
        for obj in inst.objects:
            if obj.id in k:
                continue
            hit = False
            for oa in obj.arcs:
                for fa in arcs:
                    if fa.source == obj.id:
                        continue
                    if arc_intersections(fa, oa):
                        hit = True
                        break
                if hit:
                    break
            if not hit:
                # the closed face also meets boundaries that only touch it
                # at an arc endpoint (a crossing at a vertex of the face)
                for oa in obj.arcs:
                    for e in (oa.p0, oa.p1):
                        if any(fa.point_on(e, EPS) for fa in arcs):
                            hit = True
                            break
                    if hit:
                        break
            if hit:
                k.add(obj.id)
        out[face_id] = k
    # objects whose boundary crosses no face boundary and contributes no
    # edge lie entirely inside one face
    for obj in inst.objects:
        if any(obj.id in out[fid] for fid, _ in face_list):
            continue
        probe = obj.boundary_sample()
        for face_id, arcs in face_list:
            if point_in_closed_cycle(arcs, probe):
                out[face_id].add(obj.id)
                break
    return out


# ---------------------------------------------------------------------------
# Brute per-face candidate filter (ground truth for the level expansion)


def _region_pair_meets_in_face(d: GeomObject, u: GeomObject, face_arcs) -> bool:
    """Does (d intersect u) have a point in the closed face?"""
    witnesses = []
    for da in d.arcs:
        for ua in u.arcs:
            witnesses.extend(
                (p, "du") for p in arc_intersections(da, ua)
            )
    for da in d.arcs:
        for fa in face_arcs:
            if fa.source == d.id:
                continue
            witnesses.extend((p, "df") for p in arc_intersections(da, fa))
    for ua in u.arcs:
        for fa in face_arcs:
            if fa.source == u.id:
                continue
            witnesses.extend((p, "uf") for p in arc_intersections(ua, fa))
    for da in d.arcs:
        witnesses.append((da.p0, "don"))
        witnesses.append((da.sample_point(), "don"))
    for ua in u.arcs:
        witnesses.append((ua.p0, "uon"))
        witnesses.append((ua.sample_point(), "uon"))
    for fa in face_arcs:
        witnesses.append((fa.p0, "fon"))
        witnesses.append((fa.sample_point(), "fon"))
    for p, kind in witnesses:
        in_d = kind in ("don", "du", "df") or object_contains_point(d, p) != "exterior"
        if not in_d:
            continue
        in_u = kind in ("uon", "du", "uf") or object_contains_point(u, p) != "exterior"
        if not in_u:
            continue
        in_f = kind in ("fon", "df", "uf") or point_in_closed_cycle(face_arcs, p)
        if in_f:
            return True
    return False


def brute_candidates_hitting_level(
    inst: Instance, face_arcs, candidates: Iterable[int], level: Iterable[int]
) -> set:
    """Candidates whose object meets union(level objects) within the face."""
    hits = set()
    level = list(level)
    for c in candidates:
        d = inst.objects[c]
        for lid in level:
            if _region_pair_meets_in_face(d, inst.objects[lid], face_arcs):
                hits.add(c)
                break
    return hits
