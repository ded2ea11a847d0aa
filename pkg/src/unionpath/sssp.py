"""Level-by-level shortest paths over the simplified stacking.

The search keeps the breadth-first level sets of the intersection graph
without ever materializing its edges.  Each round builds the union of the
previous level, finds the simplified-stacking faces meeting that union by
a multi-source DFS over the face adjacency, and tests the per-face
candidate objects (conflict-set members not yet reached) against the
union clipped to the face, via an overlay of the face by the union
boundary and red-blue sweeps along region boundaries.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import DegeneracyDetected
from .geometry import (
    Arc,
    GeomObject,
    Instance,
    arc_intersections,
    object_contains_point,
    objects_intersect,
)
from .numeric import Point, num_cmp
from .stacking import (
    SimplifiedStacking,
    build_simplified_with_conflicts,
    red_blue_intersections,
)
from .subdivision import (
    Subdivision,
    UnionShape,
    _wedge_sample,
    build_arrangement,
    union_of_objects,
)

INF = math.inf


@dataclass
class RunStats:
    """Structural counters checked during every run."""

    face_visits: dict = field(default_factory=dict)  # face -> number of rounds
    max_face_visits: int = 0
    outside_regions: int = 0
    candidate_tests: int = 0
    rounds: int = 0

    def note_face(self, face: int):
        c = self.face_visits.get(face, 0) + 1
        self.face_visits[face] = c
        if c > self.max_face_visits:
            self.max_face_visits = c
        if c > 3:
            raise AssertionError(
                f"face {face} joined the active face set {c} times (limit 3)"
            )


class LevelUnion:
    """Union of one level's objects, ready for point location."""

    def __init__(self, inst: Instance, ids: Sequence[int]):
        self.ids = sorted(ids)
        self.shape: UnionShape = union_of_objects([inst.objects[i] for i in self.ids])
        self.shape.sub.ensure_slabs()

    def locate(self, p: Point) -> str:
        return self.shape.locate(p)

    def boundary_arcs(self) -> list:
        return self.shape.boundary_arcs()


def initial_levels(inst: Instance, src: int):
    """Level 0 and level 1 by direct intersection tests."""
    if not (0 <= src < inst.n):
        raise ValueError(f"source {src} out of range")
    level1 = [
        obj.id
        for obj in inst.objects
        if obj.id != src and objects_intersect(inst.objects[src], obj)
    ]
    return [src], sorted(level1)


def faces_intersecting_union(
    simp: SimplifiedStacking, lu: LevelUnion, level_prev: Sequence[int]
) -> list:
    """Faces of the simplified stacking meeting the union of the previous
    level: multi-source DFS seeded at faces whose conflict set meets the
    level, expanding only across edges strictly interior to the union."""
    sources = set()
    for obj in level_prev:
        sources.update(simp.incidence[obj])
    visited = set(sources)
    stack = sorted(sources, reverse=True)
    sub = simp.stacking.arrangement
    while stack:
        f = stack.pop()
        for piece, neighbor in simp.neighbors_of_face(f):
            if neighbor is None or neighbor in visited:
                continue
            probe = sub.pieces[piece].sample_point()
            if lu.locate(probe) == "in":
                visited.add(neighbor)
                stack.append(neighbor)
    return sorted(visited)


def candidates_in_face(conflict_set, dist) -> list:
    """Conflict-set members not yet assigned to a level, ascending ids."""
    return sorted(o for o in conflict_set if dist[o] == INF)


class _ObjectUnion:
    """Union of a single object: same interface as UnionShape, no build."""

    def __init__(self, obj: GeomObject):
        self.obj = obj

    def boundary_arcs(self) -> list:
        return self.obj.arcs

    def locate(self, p: Point) -> str:
        kind = object_contains_point(self.obj, p)
        return {"interior": "in", "boundary": "edge", "exterior": "out"}[kind]


class _EmptyUnion:
    def boundary_arcs(self) -> list:
        return []

    def locate(self, p: Point) -> str:
        return "out"


def _union_for(inst: Instance, ids: tuple):
    if not ids:
        return _EmptyUnion()
    if len(ids) == 1:
        return _ObjectUnion(inst.objects[ids[0]])
    shape = union_of_objects([inst.objects[i] for i in ids])
    shape.sub.ensure_slabs()
    return shape


class FaceOverlay:
    """Subdivision of one face induced by the boundary of a level union.

    Regions are the arrangement faces inside the stacking face; each is
    entirely inside or entirely outside the union.  When the union
    boundary never enters the face interior there is exactly one region,
    the face itself, and the arrangement is skipped.
    """

    def __init__(self, face_arcs: list, level_union: UnionShape, tol):
        self.face_arcs = face_arcs
        self.tol = tol
        n_f = len(face_arcs)
        chords = self._clip_chords(face_arcs, level_union)
        self.trivial = not chords
        if self.trivial:
            self.arr = None
            self.n_face_inputs = n_f
            self.regions = [0]
            self.region_index = {0: 0}
            sample = _wedge_sample(face_arcs, tol)
            self._trivial_sample = sample
            verdict = level_union.locate(sample)
            if verdict in ("edge", "vertex"):
                raise DegeneracyDetected("region sample landed on the union boundary")
            self.region_in_union = [verdict == "in"]
            return
        self.arr = build_arrangement(list(face_arcs) + chords, tol)
        self.n_face_inputs = n_f

        # inside-f flags by toggling across face-boundary pieces
        inside_f = [False] * self.arr.n_faces
        seen = [False] * self.arr.n_faces
        seen[self.arr.unbounded] = True
        stack = [self.arr.unbounded]
        while stack:
            f = stack.pop()
            for cyc in [self.arr.faces_outer[f]] + self.arr.faces_holes[f]:
                for he in cyc:
                    g = self.arr.face_of_he[he ^ 1]
                    if not seen[g]:
                        seen[g] = True
                        toggles = self.arr.piece_parent[he >> 1] < n_f
                        inside_f[g] = inside_f[f] ^ toggles
                        stack.append(g)
        self.regions = [f for f in range(self.arr.n_faces) if seen[f] and inside_f[f]]
        self.region_index = {f: i for i, f in enumerate(self.regions)}
        self.inside_f = inside_f

        self.region_in_union = []
        for f in self.regions:
            sample = self.arr.face_sample(f)
            verdict = level_union.locate(sample)
            if verdict in ("edge", "vertex"):
                raise DegeneracyDetected("region sample landed on the union boundary")
            self.region_in_union.append(verdict == "in")

        # sub-pieces of each input face arc, ordered by x
        self.pieces_of_input: dict = {}
        for pi, parent in enumerate(self.arr.piece_parent):
            self.pieces_of_input.setdefault(parent, []).append(pi)
        for lst in self.pieces_of_input.values():
            lst.sort(key=lambda pi: (self.arr.pieces[pi].x0, self.arr.pieces[pi].y_at(self.arr.pieces[pi].x0)))

    def _clip_chords(self, face_arcs: list, level_union: UnionShape) -> list:
        """Union boundary pieces cut at the face boundary, keeping only the
        parts strictly inside the face (runs along the boundary and parts
        outside are dropped)."""
        from .geometry import arc_intersections
        from .errors import DegenerateOverlap

        fx0 = min(a.x0 for a in face_arcs)
        fx1 = max(a.x1 for a in face_arcs)
        fy0 = min(a.bbox()[2] for a in face_arcs)
        fy1 = max(a.bbox()[3] for a in face_arcs)
        chords = []
        for up in level_union.boundary_arcs():
            bx0, bx1, by0, by1 = up.bbox()
            if bx1 < fx0 or bx0 > fx1 or by1 < fy0 or by0 > fy1:
                continue
            cuts = []
            overlap_arcs = []
            for fa in face_arcs:
                try:
                    cuts.extend(arc_intersections(up, fa))
                except DegenerateOverlap:
                    overlap_arcs.append(fa)
            for fa in overlap_arcs:
                for q in (fa.p0, fa.p1):
                    if num_cmp(up.x0, q.x, self.tol) < 0 and num_cmp(q.x, up.x1, self.tol) < 0:
                        cuts.append(q)
            uniq = []
            for q in sorted(cuts, key=lambda q: (q.x, q.y)):
                if not uniq or num_cmp(uniq[-1].x, q.x, self.tol) or num_cmp(uniq[-1].y, q.y, self.tol):
                    uniq.append(q)
            inner = [
                q
                for q in uniq
                if num_cmp(up.x0, q.x, self.tol) < 0 and num_cmp(q.x, up.x1, self.tol) < 0
            ]
            for piece in up.split_at(inner):
                mid = piece.sample_point()
                if any(fa.point_on(mid, max(self.tol, 1e-9)) for fa in face_arcs):
                    continue  # runs along the face boundary
                if self._point_in_face(mid):
                    chords.append(piece)
        return chords

    def _point_in_face(self, p: Point) -> bool:
        tol = self.tol
        crossings = 0
        for arc in self.face_arcs:
            if num_cmp(arc.x0, p.x, tol) <= 0 and num_cmp(p.x, arc.x1, tol) < 0:
                if num_cmp(arc.y_at(p.x), p.y, tol) > 0:
                    crossings += 1
        return crossings % 2 == 1

    # -- region queries ------------------------------------------------------

    def outside_regions(self) -> list:
        return [i for i, flag in enumerate(self.region_in_union) if not flag]

    def region_sample(self, region: int) -> Point:
        if self.trivial:
            return self._trivial_sample
        return self.arr.face_sample(self.regions[region])

    def region_simply_connected(self, region: int) -> bool:
        if self.trivial:
            return True  # simplified-stacking faces are simply connected
        return not self.arr.faces_holes[self.regions[region]]

    def face_side_regions(self, input_index: int, x=None) -> list:
        """Regions inside the face along the given input face arc; when x
        is given, only at the sub-piece(s) containing x."""
        if self.trivial:
            return [0]
        out = []
        for pi in self.pieces_of_input.get(input_index, ()):
            piece = self.arr.pieces[pi]
            if x is not None:
                if num_cmp(piece.x0, x, self.tol) > 0 or num_cmp(x, piece.x1, self.tol) > 0:
                    continue
            fa, fb = self.arr.piece_faces(pi)
            for f in (fa, fb):
                if f in self.region_index:
                    out.append(self.region_index[f])
        return sorted(set(out))

    def region_of_point(self, p: Point) -> Optional[int]:
        if self.trivial:
            return 0
        loc = self.arr.point_locate(p)
        if loc.kind == "face":
            return self.region_index.get(loc.index)
        if loc.kind == "edge":
            if self.arr.piece_parent[loc.index] >= self.n_face_inputs:
                return "on-union"
            fa, fb = self.arr.piece_faces(loc.index)
            for f in (fa, fb):
                if f in self.region_index:
                    return self.region_index[f]
        return None

    def region_boundary(self, region: int) -> list:
        """(piece arc, kind) along the region boundary; kind is "face" for
        stacking-face boundary pieces and "union" for union boundary."""
        if self.trivial:
            return [(arc, "face") for arc in self.face_arcs]
        f = self.regions[region]
        out = []
        for cyc in [self.arr.faces_outer[f]] + self.arr.faces_holes[f]:
            for he in cyc:
                pi = he >> 1
                kind = "face" if self.arr.piece_parent[pi] < self.n_face_inputs else "union"
                out.append((self.arr.pieces[pi], kind))
        return out


def test_candidates(
    simp: SimplifiedStacking,
    face: int,
    lu: LevelUnion,
    cands: list,
    level_prev: set,
    dist: list,
    j: int,
    stats: RunStats,
    union_cache: dict,
) -> set:
    """Candidates in the face that meet the previous level's union there.

    Implements the full cascade: clip the union to the face, detect the
    fully-covered case, then decide each candidate by (i) owning a region
    inside the union or (ii) crossing a region boundary off the face
    boundary, with early deletion of decided candidates.
    """
    inst = simp.inst
    stats.candidate_tests += len(cands)
    face_arcs = simp.face_arcs(face)
    lpf = tuple(sorted(o for o in simp.conflicts[face] if o in level_prev))
    lu_f = union_cache.get(lpf)
    if lu_f is None:
        lu_f = _union_for(inst, lpf)
        union_cache[lpf] = lu_f

    overlay = FaceOverlay(face_arcs, lu_f, simp.stacking.arrangement.tol)
    outside = overlay.outside_regions()
    if not outside:
        return set(cands)  # the union covers the whole face
    probe = overlay.region_sample(outside[0])
    if lu.locate(probe) == "in":
        # an object of the previous level contains the face entirely
        return set(cands)

    # (*) holds: the face is not covered and the owner is not two levels back
    owner = simp.faces[face].owner
    if dist[owner] == j - 2:
        raise AssertionError(
            f"face {face}: owner {owner} in level {j - 2} but candidates {cands} remain"
        )
    for region in outside:
        stats.outside_regions += 1
        if not overlay.region_simply_connected(region):
            raise AssertionError(
                f"face {face}: region {region} outside the union is not simply connected"
            )

    found: set = set()
    region_cands: dict = {}  # outside region -> set of candidate ids

    def assign(obj_id: int, regions):
        for r in regions:
            if overlay.region_in_union[r]:
                found.add(obj_id)
                return
        for r in regions:
            region_cands.setdefault(r, set()).add(obj_id)

    # crossings of candidate boundaries with the face boundary; candidate
    # sets are small, so direct pair tests replace a sweep here
    contributors = {a.source for a in face_arcs}
    crossing_regions: dict = {}
    for obj_id in cands:
        for arc in inst.objects[obj_id].arcs:
            for ri, red in enumerate(face_arcs):
                if red.source == obj_id:
                    continue
                for p in arc_intersections(red, arc):
                    crossing_regions.setdefault(obj_id, set()).update(
                        overlay.face_side_regions(ri, p.x)
                    )

    face_sample = simp.face_sample(face)
    for obj_id in cands:
        regions = set(crossing_regions.get(obj_id, ()))
        if obj_id in contributors:
            for ri, arc in enumerate(face_arcs):
                if arc.source == obj_id:
                    regions.update(overlay.face_side_regions(ri))
        if regions:
            assign(obj_id, regions)
            continue
        obj = inst.objects[obj_id]
        p_d = _boundary_point_in_face(simp, face, obj)
        if p_d is not None:
            r = overlay.region_of_point(p_d)
            if r == "on-union":
                found.add(obj_id)
            elif r is not None:
                assign(obj_id, {r})
            continue
        # the boundary never enters the open face: the object either covers
        # the whole face (report: the face meets the union inside it) or
        # only grazes its closure from outside (leave it to another face)
        if object_contains_point(obj, face_sample) != "exterior":
            found.add(obj_id)

    # condition (ii): sweep each outside region against its candidates
    for region in sorted(region_cands):
        if overlay.region_in_union[region]:
            continue
        pending = sorted(o for o in region_cands[region] if o not in found)
        if not pending:
            continue
        red = overlay.region_boundary(region)
        red_arcs = [arc for arc, _ in red]
        red_kind = [kind for _, kind in red]
        if "union" not in red_kind:
            continue  # nothing off the face boundary to cross
        blue: list = []
        b_obj: list = []
        obj_arcs: dict = {}
        for obj_id in pending:
            obj_arcs[obj_id] = []
            for arc in inst.objects[obj_id].arcs:
                obj_arcs[obj_id].append(len(blue))
                blue.append(arc)
                b_obj.append(obj_id)

        def on_purple(bi, ri, p):
            obj_id = b_obj[bi]
            if obj_id in found:
                return set(obj_arcs[obj_id])
            if red_kind[ri] == "union":
                found.add(obj_id)
                return set(obj_arcs[obj_id])
            return None

        red_blue_intersections(red_arcs, blue, on_purple)

    return found


def _boundary_point_in_face(simp: SimplifiedStacking, face: int, obj: GeomObject):
    """Deterministic point of the object's boundary inside the open face:
    the smallest arc endpoint that lies in the face, else an arc midpoint."""
    candidates = []
    for arc in obj.arcs:
        candidates.append(arc.p0)
        candidates.append(arc.p1)
    candidates.sort(key=lambda p: (p.x, p.y))
    for p in candidates:
        if simp.face_of_point(p) == face:
            return p
    for arc in obj.arcs:
        p = arc.sample_point()
        if simp.face_of_point(p) == face:
            return p
    return None


class SsspEngine:
    """Shared stacking and conflict structure for repeated runs."""

    def __init__(self, inst: Instance, seed: int = 0):
        self.inst = inst
        self.seed = seed
        self.simp = build_simplified_with_conflicts(inst, seed)
        self.last_stats: Optional[RunStats] = None
        self._run_cache: dict = {}

    def run_cached(self, src: int) -> list:
        """Like run(), memoized per source (distances are immutable)."""
        dist = self._run_cache.get(src)
        if dist is None:
            dist = self.run(src)
            self._run_cache[src] = dist
        return dist

    def run(self, src: int, trace: Optional[Callable] = None) -> list:
        inst = self.inst
        simp = self.simp
        dist = [INF] * inst.n
        _, level1 = initial_levels(inst, src)
        dist[src] = 0
        for v in level1:
            dist[v] = 1
        stats = RunStats()
        self.last_stats = stats
        level_prev = level1
        j = 2
        while level_prev:
            stats.rounds += 1
            lu = LevelUnion(inst, level_prev)
            active = faces_intersecting_union(simp, lu, level_prev)
            level_prev_set = set(level_prev)
            union_cache: dict = {}
            new_level: list = []
            found_flag = [False] * inst.n
            for f in active:
                stats.note_face(f)
                cands = candidates_in_face(simp.conflicts[f], dist)
                if trace is not None:
                    trace_rec = {
                        "j": j,
                        "face": f,
                        "candidates": tuple(cands),
                        "level_prev": tuple(level_prev),
                    }
                if not cands:
                    if trace is not None:
                        trace_rec["result"] = ()
                        trace(trace_rec)
                    continue
                hits = test_candidates(
                    simp, f, lu, cands, level_prev_set, dist, j, stats, union_cache
                )
                if trace is not None:
                    trace_rec["result"] = tuple(sorted(hits))
                    trace(trace_rec)
                for v in sorted(hits):
                    if not found_flag[v]:
                        found_flag[v] = True
                        new_level.append(v)
            new_level.sort()
            for v in new_level:
                dist[v] = j
            level_prev = new_level
            j += 1
        return dist


def sssp(inst: Instance, src: int, seed: int = 0, engine: Optional[SsspEngine] = None) -> list:
    """Hop distances from the source object; math.inf for unreachable."""
    if engine is None:
        engine = SsspEngine(inst, seed)
    return engine.run(src)


def dist_to_json(src: int, dist: list) -> str:
    """Output schema: -1 encodes unreachable."""
    data = {
        "schema": 1,
        "source": src,
        "dist": [-1 if d == INF else int(d) for d in dist],
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
