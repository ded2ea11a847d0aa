"""Planar subdivisions: arrangement construction, point location, dual
graphs, unions of objects, and merged cell complexes.

The half-edge structure is stored in flat parallel lists.  Half-edge ids
are 2*piece+0 (rightward, p0 -> p1) and 2*piece+1 (leftward); the face of
a half-edge lies on its left, so the rightward half-edge of a piece sees
the region above the piece.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegeneracyDetected
from .geometry import Arc, GeomObject
from .numeric import EPS, Point, num_cmp
from .sweep import find_all_crossings


@dataclass
class Location:
    kind: str  # "face" | "edge" | "vertex"
    index: int  # face index, piece index, or vertex index


@dataclass
class DualGraph:
    """Dual over bounded faces; one adjacency entry per separating edge."""

    n: int
    neighbors: list  # per node: list of (other_node, piece_index)

    def degree(self, node: int) -> int:
        return len(self.neighbors[node])

    def adjacency_multiset(self):
        pairs = []
        for u, lst in enumerate(self.neighbors):
            for v, _ in lst:
                if u < v:
                    pairs.append((u, v))
        pairs.sort()
        return pairs

    def simple_neighbors(self, node: int):
        return sorted({v for v, _ in self.neighbors[node]})


class Subdivision:
    """A planar subdivision built from interior-disjoint arc pieces."""

    def __init__(self, tol: float):
        self.tol = tol
        self.pieces: list[Arc] = []
        self.piece_parent: list[int] = []  # input arc index per piece
        self.vertices: list[Point] = []
        self.vertex_id: dict = {}
        self.next_he: list[int] = []
        self.face_of_he: list[int] = []
        self.faces_outer: list[list] = []  # per face: half-edge list (CCW)
        self.faces_holes: list[list] = []  # per face: list of half-edge lists
        self.unbounded: int = -1
        self._samples: Optional[list] = None
        self._covers: Optional[list] = None
        self._slabs = None

    # -- basic accessors ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.pieces)

    @property
    def n_faces(self) -> int:
        return len(self.faces_outer)

    @property
    def bounded_faces(self) -> list:
        return [f for f in range(self.n_faces) if f != self.unbounded]

    def he_piece(self, he: int) -> int:
        return he >> 1

    def he_forward(self, he: int) -> bool:
        return (he & 1) == 0

    def he_origin(self, he: int) -> Point:
        piece = self.pieces[he >> 1]
        return piece.p0 if (he & 1) == 0 else piece.p1

    def he_dest(self, he: int) -> Point:
        piece = self.pieces[he >> 1]
        return piece.p1 if (he & 1) == 0 else piece.p0

    def piece_faces(self, piece: int) -> tuple:
        """(face above, face below) of a piece."""
        return self.face_of_he[2 * piece], self.face_of_he[2 * piece + 1]

    def face_boundary_pieces(self, face: int) -> list:
        out = []
        for cyc in [self.faces_outer[face]] + self.faces_holes[face]:
            out.extend(he >> 1 for he in cyc)
        return out

    def face_outer_arcs(self, face: int) -> list:
        return [self.pieces[he >> 1] for he in self.faces_outer[face]]

    def euler_components(self) -> int:
        """Connected components of the edge set (for the Euler relation)."""
        parent = list(range(self.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for piece in self.pieces:
            a, b = find(self.vertex_id[piece.p0]), find(self.vertex_id[piece.p1])
            if a != b:
                parent[a] = b
        return len({find(v) for v in range(self.n_vertices)})

    # -- face samples ---------------------------------------------------------

    def face_sample(self, face: int) -> Point:
        """Deterministic interior point: midpoint of the vertical segment in
        the leftmost wedge of the face."""
        if self._samples is None:
            self._samples = [None] * self.n_faces
        cached = self._samples[face]
        if cached is not None:
            return cached
        if face == self.unbounded:
            raise ValueError("unbounded face has no sample")
        cycles = [self.faces_outer[face]] + self.faces_holes[face]
        sample = _wedge_sample(
            [self.pieces[he >> 1] for cyc in cycles for he in cyc], self.tol
        )
        self._samples[face] = sample
        return sample

    # -- cover sets -----------------------------------------------------------

    def cover_sets(self) -> list:
        """Per face: frozenset of source ids whose object covers the face.

        Crossing a piece toggles membership of its source; the unbounded
        face is covered by nothing.
        """
        if self._covers is not None:
            return self._covers
        covers: list = [None] * self.n_faces
        if self.unbounded < 0:
            self._covers = [frozenset()] * self.n_faces
            return self._covers
        covers[self.unbounded] = frozenset()
        stack = [self.unbounded]
        while stack:
            f = stack.pop()
            for cyc in [self.faces_outer[f]] + self.faces_holes[f]:
                for he in cyc:
                    piece = self.pieces[he >> 1]
                    g = self.face_of_he[he ^ 1]
                    if covers[g] is None:
                        if piece.source is None:
                            raise ValueError("cover sets need sourced arcs")
                        covers[g] = covers[f] ^ {piece.source}
                        stack.append(g)
        for f in range(self.n_faces):
            if covers[f] is None:
                covers[f] = frozenset()  # isolated component is unreachable
        self._covers = covers
        return covers

    # -- point location -------------------------------------------------------

    def find_vertex(self, p: Point) -> Optional[int]:
        tol = self.tol
        if not tol:
            return self.vertex_id.get(p)
        # tolerant scan over the sorted vertex list
        keys = self._vertex_keys()
        i = bisect_left(keys, (p.x - tol,))
        while i < len(keys):
            vx, vy, vid = keys[i]
            if vx > p.x + tol:
                break
            if abs(vy - p.y) <= tol:
                return vid
            i += 1
        return None

    def _vertex_keys(self):
        if not hasattr(self, "_vkeys"):
            self._vkeys = sorted(
                (v.x, v.y, i) for i, v in enumerate(self.vertices)
            )
        return self._vkeys

    def ensure_slabs(self):
        if self._slabs is not None:
            return
        xs = sorted({v.x for v in self.vertices})
        starts: dict = {}
        ends: dict = {}
        for pi, piece in enumerate(self.pieces):
            starts.setdefault(piece.p0.x, []).append(pi)
            ends.setdefault(piece.p1.x, []).append(pi)
        slabs = []
        active: set = set()
        for k, x in enumerate(xs):
            for pi in ends.get(x, ()):
                active.discard(pi)
            for pi in starts.get(x, ()):
                active.add(pi)
            if k + 1 < len(xs):
                xm = (x + xs[k + 1]) / 2 if isinstance(x, float) or isinstance(xs[k + 1], float) else Fraction(x + xs[k + 1], 2)
                ordered = sorted(active, key=lambda pi: self.pieces[pi].y_at(xm))
            else:
                ordered = []
            slabs.append(ordered)
        self._slabs = (xs, slabs)

    def point_locate(self, p: Point) -> Location:
        """Locate p; prepares the slab structure on first use."""
        vid = self.find_vertex(p)
        if vid is not None:
            return Location("vertex", vid)
        self.ensure_slabs()
        xs, slabs = self._slabs
        if not xs:
            return Location("face", self.unbounded)
        tol = self.tol
        k = bisect_right([x for x in xs], p.x) - 1
        if k >= 0 and tol and abs(xs[k] - p.x) <= tol:
            k -= 1  # sit on a slab boundary: use the left slab
        if k < 0 or k >= len(xs) - 1:
            return Location("face", self.unbounded)
        edges = slabs[k]
        lo, hi = 0, len(edges)
        while lo < hi:
            mid = (lo + hi) // 2
            c = num_cmp(self.pieces[edges[mid]].y_at(p.x), p.y, tol)
            if c == 0:
                return Location("edge", edges[mid])
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        if lo == 0:
            return Location("face", self.unbounded)
        below = edges[lo - 1]
        return Location("face", self.face_of_he[2 * below])

    def x_index(self):
        """Bucket index over piece x-ranges for stabbing queries."""
        if getattr(self, "_xbuckets", None) is None:
            if not self.pieces:
                self._xbuckets = ((0.0, 1.0, 1), [[]])
                return self._xbuckets
            lo = min(float(p.p0.x) for p in self.pieces)
            hi = max(float(p.p1.x) for p in self.pieces)
            count = max(1, min(4 * len(self.pieces), int(math.sqrt(len(self.pieces)) * 8)))
            width = max((hi - lo) / count, 1e-12)
            buckets = [[] for _ in range(count + 1)]
            for pi, piece in enumerate(self.pieces):
                b0 = int((float(piece.p0.x) - lo) / width)
                b1 = int((float(piece.p1.x) - lo) / width)
                for b in range(max(0, b0), min(count, b1) + 1):
                    buckets[b].append(pi)
            self._xbuckets = ((lo, width, count), buckets)
        return self._xbuckets

    def pieces_spanning(self, x) -> list:
        (lo, width, count), buckets = self.x_index()
        b = int((float(x) - lo) / width)
        if b < 0 or b > count:
            return []
        return buckets[b]

    def locate_brute(self, p: Point) -> Location:
        """Location by scanning the pieces near p.x; no slab structure."""
        vid = self.find_vertex(p)
        if vid is not None:
            return Location("vertex", vid)
        tol = self.tol
        best = None
        for pi in self.pieces_spanning(p.x):
            piece = self.pieces[pi]
            if num_cmp(piece.p0.x, p.x, tol) >= 0 or num_cmp(p.x, piece.p1.x, tol) > 0:
                # alive just left of p.x: x0 < p.x <= x1
                continue
            y = piece.y_at(p.x)
            c = num_cmp(y, p.y, tol)
            if c == 0 and piece.point_on(p, max(tol, EPS)):
                return Location("edge", pi)
            if c < 0:
                if best is None or num_cmp(y, best[0], 0 if not tol else 0.0) > 0:
                    best = (y, pi)
        if best is None:
            return Location("face", self.unbounded)
        return Location("face", self.face_of_he[2 * best[1]])

    # -- dual graph -----------------------------------------------------------

    def dual_graph(self) -> DualGraph:
        bounded = self.bounded_faces
        index = {f: i for i, f in enumerate(bounded)}
        neighbors = [[] for _ in bounded]
        for pi in range(len(self.pieces)):
            fa, fb = self.piece_faces(pi)
            if fa in index and fb in index and fa != fb:
                neighbors[index[fa]].append((index[fb], pi))
                neighbors[index[fb]].append((index[fa], pi))
        for lst in neighbors:
            lst.sort()
        return DualGraph(len(bounded), neighbors)

    # -- debug dump -----------------------------------------------------------

    def debug_dump(self) -> str:
        def num(v):
            return float(v)

        data = {
            "schema": 1,
            "vertices": [[num(v.x), num(v.y)] for v in self.vertices],
            "edges": [
                {
                    "p0": [num(a.p0.x), num(a.p0.y)],
                    "p1": [num(a.p1.x), num(a.p1.y)],
                    "kind": "segment" if a.circle is None else ("upper" if a.circle[3] else "lower"),
                    "source": a.source,
                }
                for a in self.pieces
            ],
            "faces": [
                {
                    "outer": [he for he in self.faces_outer[f]],
                    "holes": [list(h) for h in self.faces_holes[f]],
                    "unbounded": f == self.unbounded,
                }
                for f in range(self.n_faces)
            ],
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# construction helpers


def _dir_key(piece: Arc, forward: bool, pi: int):
    """CCW ordering key for a directed side leaving its origin.

    Rightward block (angles -90..90) sorts before the leftward block
    (angles 90..270); within each block the slope increases with angle.
    """
    if forward:
        s = piece.slope_at(piece.p0, True)
        return (0, s, piece.curvature(), piece.source if piece.source is not None else -1, pi)
    s = piece.slope_at(piece.p1, False)
    return (1, s, -piece.curvature(), piece.source if piece.source is not None else -1, pi)


def _wedge_sample(boundary: list, tol: float) -> Point:
    """Interior sample for the region left-bounded by `boundary` pieces."""
    v = min((p.p0 for p in boundary), key=lambda q: (q.x, q.y))
    xs = sorted({p.p0.x for p in boundary} | {p.p1.x for p in boundary})
    limit = None
    for x in xs:
        if num_cmp(x, v.x, tol) > 0:
            limit = x
            break
    if limit is None:
        raise DegeneracyDetected("degenerate face with zero width")
    if isinstance(v.x, float) or isinstance(limit, float):
        xm = (float(v.x) + float(limit)) / 2.0
    else:
        xm = Fraction(v.x + limit, 2)
    ys = sorted(
        p.y_at(xm)
        for p in boundary
        if num_cmp(p.x0, xm, tol) < 0 and num_cmp(xm, p.x1, tol) < 0
    )
    if len(ys) < 2:
        raise DegeneracyDetected("face sample: fewer than two boundary arcs hit")
    y0, y1 = ys[0], ys[1]
    if isinstance(y0, float) or isinstance(y1, float):
        ym = (y0 + y1) / 2.0
    else:
        ym = Fraction(y0 + y1, 2)
    return Point(xm, ym)


def build_arrangement(arcs: Sequence[Arc], tol: Optional[float] = None) -> Subdivision:
    """Full arrangement of the arcs as a Subdivision.

    Every input arc is split at its intersection points; faces are
    extracted from the half-edge structure, and hole cycles are attached
    to their surrounding face.
    """
    arcs = list(arcs)
    if tol is None:
        tol = EPS if any(isinstance(a.x0, float) for a in arcs) else 0
    sub = Subdivision(tol)
    if not arcs:
        sub.unbounded = 0
        sub.faces_outer = [[]]
        sub.faces_holes = [[]]
        return sub

    res = find_all_crossings(arcs, tol)
    reg = res.registry

    pieces: list[Arc] = []
    parents: list[int] = []
    for ai, arc in enumerate(arcs):
        p0, p1 = reg.snap(arc.p0), reg.snap(arc.p1)
        base = Arc(p0, p1, arc.circle, arc.source)
        # cuts must be strictly inside by snapped x, or the split would
        # produce a piece that is not x-monotone
        cut_pts = [q for q in res.cuts.get(ai, []) if p0.x < q.x < p1.x]
        for piece in base.split_at(cut_pts):
            pieces.append(piece)
            parents.append(ai)
    sub.pieces = pieces
    sub.piece_parent = parents

    for piece in pieces:
        for p in (piece.p0, piece.p1):
            if p not in sub.vertex_id:
                sub.vertex_id[p] = len(sub.vertices)
                sub.vertices.append(p)

    # angular order around each vertex
    outgoing: dict = {}
    for pi, piece in enumerate(pieces):
        outgoing.setdefault(piece.p0, []).append(2 * pi)
        outgoing.setdefault(piece.p1, []).append(2 * pi + 1)
    rank: dict = {}
    for v, hes in outgoing.items():
        hes.sort(key=lambda he: _dir_key(pieces[he >> 1], (he & 1) == 0, he >> 1))
        for k, he in enumerate(hes):
            rank[he] = k

    n_he = 2 * len(pieces)
    sub.next_he = [0] * n_he
    for he in range(n_he):
        dest = sub.he_dest(he)
        hes = outgoing[dest]
        twin = he ^ 1
        k = rank[twin]
        sub.next_he[he] = hes[(k - 1) % len(hes)]

    # cycles
    cycle_of = [-1] * n_he
    cycles: list[list] = []
    for he in range(n_he):
        if cycle_of[he] >= 0:
            continue
        cyc = []
        cur = he
        while cycle_of[cur] < 0:
            cycle_of[cur] = len(cycles)
            cyc.append(cur)
            cur = sub.next_he[cur]
        cycles.append(cyc)

    def cycle_ccw(cyc: list) -> bool:
        # at the lexicographically smallest vertex the outgoing edge of a
        # CCW cycle lies below the incoming one (compared just right of it)
        best = None
        for idx, he in enumerate(cyc):
            v = sub.he_origin(he)
            if best is None or (v.x, v.y) < best[0]:
                best = ((v.x, v.y), idx)
        idx = best[1]
        out_he = cyc[idx]
        in_he = cyc[idx - 1]
        out_key = _dir_key(pieces[out_he >> 1], (out_he & 1) == 0, out_he >> 1)
        in_tw = in_he ^ 1
        in_key = _dir_key(pieces[in_tw >> 1], (in_tw & 1) == 0, in_tw >> 1)
        return out_key < in_key

    ccw_cycles = []
    cw_cycles = []
    for ci, cyc in enumerate(cycles):
        (ccw_cycles if cycle_ccw(cyc) else cw_cycles).append(ci)

    sub.face_of_he = [-1] * n_he
    face_of_cycle = {}
    for ci in ccw_cycles:
        fi = len(sub.faces_outer)
        face_of_cycle[ci] = fi
        sub.faces_outer.append(cycles[ci])
        sub.faces_holes.append([])
        for he in cycles[ci]:
            sub.face_of_he[he] = fi
    sub.unbounded = len(sub.faces_outer)
    sub.faces_outer.append([])
    sub.faces_holes.append([])

    # attach CW cycles to their surrounding face via the edge directly
    # below the cycle's leftmost vertex
    def below_piece(v: Point) -> Optional[int]:
        best = None
        for pi in sub.pieces_spanning(v.x):
            piece = pieces[pi]
            if num_cmp(piece.p0.x, v.x, tol) >= 0 or num_cmp(v.x, piece.p1.x, tol) > 0:
                continue
            y = piece.y_at(v.x)
            if num_cmp(y, v.y, tol) >= 0:
                continue
            key = (y, -_slope_end(piece), piece.curvature())
            if best is None or _below_better(key, best[0], tol):
                best = (key, pi)
        return None if best is None else best[1]

    def _slope_end(piece: Arc):
        s = piece.slope_at(piece.p1, False)
        return s if not isinstance(s, float) or math.isfinite(s) else math.copysign(1e18, s)

    def _below_better(key, other, tol):
        c = num_cmp(key[0], other[0], tol)
        if c:
            return c > 0
        return key[1:] > other[1:]

    hole_face: dict = {}

    def resolve_cw(ci: int, depth: int = 0) -> int:
        if ci in hole_face:
            return hole_face[ci]
        if depth > len(cycles) + 1:
            raise DegeneracyDetected("cyclic hole containment")
        cyc = cycles[ci]
        v = min((sub.he_origin(he) for he in cyc), key=lambda q: (q.x, q.y))
        pb = below_piece(v)
        if pb is None:
            fi = sub.unbounded
        else:
            up_he = 2 * pb  # rightward half-edge: face above the piece
            up_ci = cycle_of[up_he]
            if up_ci in face_of_cycle:
                fi = face_of_cycle[up_ci]
            else:
                fi = resolve_cw(up_ci, depth + 1)
        hole_face[ci] = fi
        return fi

    for ci in cw_cycles:
        fi = resolve_cw(ci)
        sub.faces_holes[fi].append(cycles[ci])
        for he in cycles[ci]:
            sub.face_of_he[he] = fi

    return sub


# ---------------------------------------------------------------------------
# Union of objects


class UnionShape:
    """Arrangement of the objects' boundaries plus inside flags per face."""

    def __init__(self, sub: Subdivision, inside: list):
        self.sub = sub
        self.inside = inside  # bool per face
        self._boundary = None

    @property
    def tol(self):
        return self.sub.tol

    def boundary_piece_ids(self) -> list:
        if self._boundary is None:
            out = []
            for pi in range(len(self.sub.pieces)):
                fa, fb = self.sub.piece_faces(pi)
                if self.inside[fa] != self.inside[fb]:
                    out.append(pi)
            self._boundary = out
        return self._boundary

    def boundary_arcs(self) -> list:
        return [self.sub.pieces[pi] for pi in self.boundary_piece_ids()]

    def locate(self, p: Point) -> str:
        """"in", "out", or "edge"/"vertex" for boundary hits.

        Interior edges and vertices (strictly inside the union) count as
        "in"; exterior artifacts count as "out".
        """
        loc = self.sub.point_locate(p)
        if loc.kind == "face":
            return "in" if self.inside[loc.index] else "out"
        if loc.kind == "edge":
            fa, fb = self.sub.piece_faces(loc.index)
            if self.inside[fa] != self.inside[fb]:
                return "edge"
            return "in" if self.inside[fa] else "out"
        # vertex: on the union boundary iff incident to a boundary piece
        v = self.sub.vertices[loc.index]
        for pi in self.boundary_piece_ids():
            piece = self.sub.pieces[pi]
            if piece.p0 == v or piece.p1 == v:
                return "vertex"
        # all incident faces share a side; sample one incident piece
        for pi, piece in enumerate(self.sub.pieces):
            if piece.p0 == v or piece.p1 == v:
                fa, _ = self.sub.piece_faces(pi)
                return "in" if self.inside[fa] else "out"
        return "out"

    def inside_component_count(self) -> int:
        comp = 0
        seen = set()
        for f in range(self.sub.n_faces):
            if not self.inside[f] or f in seen:
                continue
            comp += 1
            stack = [f]
            seen.add(f)
            while stack:
                g = stack.pop()
                for cyc in [self.sub.faces_outer[g]] + self.sub.faces_holes[g]:
                    for he in cyc:
                        h = self.sub.face_of_he[he ^ 1]
                        if self.inside[h] and h not in seen:
                            seen.add(h)
                            stack.append(h)
        return comp

    def real_boundary_vertices(self) -> list:
        """Union-boundary vertices that are crossings of two objects or
        polygon corners (circle extreme-x split points are artifacts)."""
        incident: dict = {}
        for pi in self.boundary_piece_ids():
            piece = self.sub.pieces[pi]
            for p in (piece.p0, piece.p1):
                incident.setdefault(p, []).append(piece)
        out = []
        for v, pieces in incident.items():
            sources = {p.source for p in pieces}
            if len(sources) >= 2:
                out.append(v)
                continue
            piece = pieces[0]
            if piece.circle is not None:
                cx, cy, r, _ = piece.circle
                if abs(float(v.x) - (cx - r)) <= EPS or abs(float(v.x) - (cx + r)) <= EPS:
                    continue  # split artifact at an extreme-x point
                out.append(v)
            else:
                dirs = set()
                for q in pieces:
                    s = q.slope_at(q.p0, True)
                    dirs.add(s)
                if len(dirs) >= 2:
                    out.append(v)
        out.sort(key=lambda q: (q.x, q.y))
        return out


def union_of_objects(objs: Sequence[GeomObject], tol: Optional[float] = None) -> UnionShape:
    arcs = []
    for obj in objs:
        arcs.extend(obj.arcs)
    sub = build_arrangement(arcs, tol)
    covers = sub.cover_sets() if arcs else [frozenset()]
    inside = [bool(covers[f]) for f in range(sub.n_faces)]
    return UnionShape(sub, inside)


# ---------------------------------------------------------------------------
# Merged cells (faces grouped by a label, e.g. stacking owner regions)


class CellComplex:
    """Groups of arrangement faces merged across shared edges.

    `label` maps each face to a cell key or None (exterior).  Cells are
    the connected groups of same-label faces; their boundaries are walked
    in the underlying half-edge structure.
    """

    def __init__(self, sub: Subdivision, label: list):
        self.sub = sub
        self.label = label
        self.cell_of_face = [-1] * sub.n_faces
        self.cells: list[list] = []  # cell -> face list
        self.cell_label: list = []
        self._build_cells()
        self._cycles: Optional[list] = None
        self._samples: dict = {}

    def _build_cells(self):
        sub = self.sub
        for f in range(sub.n_faces):
            if self.label[f] is None or self.cell_of_face[f] >= 0:
                continue
            cell = len(self.cells)
            members = [f]
            self.cell_of_face[f] = cell
            stack = [f]
            while stack:
                g = stack.pop()
                for cyc in [sub.faces_outer[g]] + sub.faces_holes[g]:
                    for he in cyc:
                        h = sub.face_of_he[he ^ 1]
                        if (
                            self.cell_of_face[h] < 0
                            and self.label[h] == self.label[g]
                        ):
                            self.cell_of_face[h] = cell
                            members.append(h)
                            stack.append(h)
            self.cells.append(sorted(members))
            self.cell_label.append(self.label[f])

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def is_boundary_he(self, he: int) -> bool:
        sub = self.sub
        f = sub.face_of_he[he]
        g = sub.face_of_he[he ^ 1]
        cf = self.cell_of_face[f] if self.label[f] is not None else -1
        cg = self.cell_of_face[g] if self.label[g] is not None else -1
        return cf != cg

    def next_boundary_he(self, he: int) -> int:
        """Successor along the cell boundary (cell kept on the left)."""
        sub = self.sub
        cell = self.cell_of_face[sub.face_of_he[he]]
        e = sub.next_he[he]
        while not self.is_boundary_he(e):
            e = sub.next_he[e ^ 1]
        return e

    def cell_cycles(self) -> list:
        """Per cell: (outer_cycle, hole_cycles) of boundary half-edges."""
        if self._cycles is not None:
            return self._cycles
        sub = self.sub
        seen = set()
        per_cell: list = [[] for _ in range(self.n_cells)]
        for he in range(2 * len(sub.pieces)):
            f = sub.face_of_he[he]
            if self.label[f] is None:
                continue
            if he in seen or not self.is_boundary_he(he):
                continue
            cyc = []
            cur = he
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = self.next_boundary_he(cur)
            per_cell[self.cell_of_face[f]].append(cyc)
        out = []
        for cell, cycs in enumerate(per_cell):
            outer = None
            holes = []
            for cyc in cycs:
                if self._cycle_ccw(cyc):
                    if outer is not None:
                        raise DegeneracyDetected("cell with two outer cycles")
                    outer = cyc
                else:
                    holes.append(cyc)
            if outer is None:
                raise DegeneracyDetected("cell without an outer cycle")
            out.append((outer, holes))
        self._cycles = out
        return out

    def _cycle_ccw(self, cyc: list) -> bool:
        sub = self.sub
        best = None
        for idx, he in enumerate(cyc):
            v = sub.he_origin(he)
            if best is None or (v.x, v.y) < best[0]:
                best = ((v.x, v.y), idx)
        idx = best[1]
        out_he = cyc[idx]
        in_tw = cyc[idx - 1] ^ 1
        ok = _dir_key(sub.pieces[out_he >> 1], (out_he & 1) == 0, out_he >> 1)
        ik = _dir_key(sub.pieces[in_tw >> 1], (in_tw & 1) == 0, in_tw >> 1)
        return ok < ik

    def cell_sample(self, cell: int) -> Point:
        if cell not in self._samples:
            sub = self.sub
            outer, holes = self.cell_cycles()[cell]
            boundary = [sub.pieces[he >> 1] for cyc in [outer] + holes for he in cyc]
            self._samples[cell] = _wedge_sample(boundary, sub.tol)
        return self._samples[cell]

    def cell_dual(self) -> DualGraph:
        """Planar dual over cells: one entry per boundary piece between
        two distinct cells."""
        neighbors = [[] for _ in range(self.n_cells)]
        for pi in range(len(self.sub.pieces)):
            fa, fb = self.sub.piece_faces(pi)
            ca = self.cell_of_face[fa] if self.label[fa] is not None else -1
            cb = self.cell_of_face[fb] if self.label[fb] is not None else -1
            if ca >= 0 and cb >= 0 and ca != cb:
                neighbors[ca].append((cb, pi))
                neighbors[cb].append((ca, pi))
        for lst in neighbors:
            lst.sort()
        return DualGraph(self.n_cells, neighbors)
