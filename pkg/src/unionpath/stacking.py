"""Random stackings, simplified stackings, owners, and conflict lists.

A stacking draws the objects in a random order, each on top of the
previous ones; its faces are the maximal visible regions, each owned by
the last object in the order that contains it.  The simplified stacking
absorbs faces enclosed by another face's hole so that every face is
simply connected, which is what the level-expansion search needs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import DegeneracyDetected
from .geometry import Arc, Instance
from .numeric import Point
from .subdivision import CellComplex, Subdivision, build_arrangement
from .sweep import red_blue_sweep


class Stacking:
    """Stacking of an instance for a fixed drawing order."""

    def __init__(self, inst: Instance, perm: list):
        self.inst = inst
        self.perm = list(perm)  # drawing order: perm[0] first (bottom)
        pos = {obj_id: k for k, obj_id in enumerate(self.perm)}
        self.position = pos
        self.arrangement = build_arrangement(inst.all_arcs())
        covers = self.arrangement.cover_sets()
        label = []
        for f in range(self.arrangement.n_faces):
            cov = covers[f]
            label.append(max(cov, key=lambda i: pos[i]) if cov else None)
        self.cells = CellComplex(self.arrangement, label)
        self.owner = list(self.cells.cell_label)

    @property
    def n_faces(self) -> int:
        return self.cells.n_cells

    def face_sample(self, cell: int) -> Point:
        return self.cells.cell_sample(cell)

    def face_has_holes(self, cell: int) -> bool:
        return bool(self.cells.cell_cycles()[cell][1])

    def faces_of_owner(self) -> dict:
        out: dict = {}
        for cell, owner in enumerate(self.owner):
            out.setdefault(owner, []).append(cell)
        return out

    def dump(self) -> str:
        data = {
            "schema": 1,
            "permutation": self.perm,
            "faces": [
                {
                    "owner": self.owner[c],
                    "arrangement_faces": self.cells.cells[c],
                    "holes": len(self.cells.cell_cycles()[c][1]),
                }
                for c in range(self.n_faces)
            ],
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def build_stacking(inst: Instance, seed: int) -> Stacking:
    """Stacking for a uniformly random drawing order drawn from the seed."""
    rng = random.Random(seed)
    perm = list(range(inst.n))
    rng.shuffle(perm)
    return Stacking(inst, perm)


@dataclass
class SimpFace:
    """A simply connected face of the simplified stacking."""

    index: int
    owner: int
    outer_hes: list  # half-edge ids in the base arrangement, CCW
    arr_faces: list  # all arrangement faces covered by this face


class SimplifiedStacking:
    """Hole-free faces with owners, conflict sets, and crossing records."""

    def __init__(self, stacking: Stacking):
        self.stacking = stacking
        self.inst = stacking.inst
        self.faces: list[SimpFace] = []
        self.face_of_arr_face: list = [None] * stacking.arrangement.n_faces
        self.conflicts: Optional[list] = None  # per face: set of object ids
        self.crossings: Optional[list] = None  # per face: [(object, Point)]
        self.incidence: Optional[list] = None  # per object: [face ids]
        self._samples: dict = {}
        self._build()

    def _build(self):
        st = self.stacking
        sub = st.arrangement
        cycles = st.cells.cell_cycles()

        absorbed_faces: list = [[] for _ in range(st.n_faces)]
        absorbed_to: dict = {}
        for cell in range(st.n_faces):
            _, holes = cycles[cell]
            for hole in holes:
                blocked = {he >> 1 for he in hole}
                stack = [sub.face_of_he[he ^ 1] for he in hole]
                seen = set()
                while stack:
                    f = stack.pop()
                    if f in seen:
                        continue
                    seen.add(f)
                    for cyc in [sub.faces_outer[f]] + sub.faces_holes[f]:
                        for he in cyc:
                            if (he >> 1) in blocked:
                                continue
                            g = sub.face_of_he[he ^ 1]
                            if g not in seen:
                                stack.append(g)
                for f in seen:
                    other = st.cells.cell_of_face[f]
                    if other >= 0 and other != cell:
                        absorbed_to[other] = cell
                    absorbed_faces[cell].append(f)

        for cell in range(st.n_faces):
            if cell in absorbed_to:
                continue
            outer, _ = cycles[cell]
            members = sorted(set(st.cells.cells[cell]) | set(absorbed_faces[cell]))
            face = SimpFace(len(self.faces), st.owner[cell], outer, members)
            self.faces.append(face)
        for face in self.faces:
            for f in face.arr_faces:
                self.face_of_arr_face[f] = face.index

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def face_arcs(self, index: int) -> list:
        sub = self.stacking.arrangement
        return [sub.pieces[he >> 1] for he in self.faces[index].outer_hes]

    def face_sample(self, index: int) -> Point:
        if index not in self._samples:
            from .subdivision import _wedge_sample

            self._samples[index] = _wedge_sample(
                self.face_arcs(index), self.stacking.arrangement.tol
            )
        return self._samples[index]

    def face_of_point(self, p: Point, brute: bool = False) -> Optional[int]:
        sub = self.stacking.arrangement
        loc = sub.locate_brute(p) if brute else sub.point_locate(p)
        if loc.kind == "face":
            if loc.index == sub.unbounded:
                return None
            return self.face_of_arr_face[loc.index]
        if loc.kind == "edge":
            fa, fb = sub.piece_faces(loc.index)
            sa = self.face_of_arr_face[fa] if fa != sub.unbounded else None
            sb = self.face_of_arr_face[fb] if fb != sub.unbounded else None
            if sa == sb:
                return sa
            return sa if sa is not None else sb
        return None

    def neighbors_of_face(self, index: int):
        """(piece, other simp face or None) along the outer cycle."""
        sub = self.stacking.arrangement
        out = []
        for he in self.faces[index].outer_hes:
            g = sub.face_of_he[he ^ 1]
            other = None if g == sub.unbounded else self.face_of_arr_face[g]
            out.append((he >> 1, other))
        return out

    def dump(self) -> str:
        data = {
            "schema": 1,
            "permutation": self.stacking.perm,
            "faces": [
                {
                    "owner": f.owner,
                    "conflict_count": len(self.conflicts[f.index]) if self.conflicts else None,
                }
                for f in self.faces
            ],
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def simplify_stacking(st: Stacking) -> SimplifiedStacking:
    """Absorb faces enclosed by holes; owners are inherited."""
    return SimplifiedStacking(st)


def red_blue_intersections(
    red: Sequence[Arc],
    blue: Sequence[Arc],
    on_purple: Optional[Callable] = None,
) -> list:
    """All crossings between the red subdivision edges and the blue arcs.

    Returns (blue_index, red_index, point) triples in sweep order; blue x
    blue crossings are never reported.  `on_purple` may return True (or a
    set of blue indices) to delete blue arcs mid-sweep.
    """
    tol = 0
    for a in list(red) + list(blue):
        if isinstance(a.x0, float):
            tol = max(tol, 1e-9)
            break
    return red_blue_sweep(red, blue, tol, on_purple)


def compute_conflict_lists(simp: SimplifiedStacking, inst: Instance) -> SimplifiedStacking:
    """Fill the conflict sets, crossing records, and incidence lists.

    An object is in conflict with a face when its boundary meets the
    closed face.  Every such contact is visible in the base arrangement:
    the object contributes an edge to the face boundary, or one of its
    boundary pieces is incident to a face-boundary vertex (each crossing
    of two boundaries is an arrangement vertex), or the object is wholly
    inside the face and is found by one point-location query.
    """
    sub = simp.stacking.arrangement

    incident_sources: dict = {}  # vertex -> set of piece sources
    for piece in sub.pieces:
        for v in (piece.p0, piece.p1):
            incident_sources.setdefault(v, set()).add(piece.source)

    conflicts = [set() for _ in range(simp.n_faces)]
    crossings = [[] for _ in range(simp.n_faces)]
    for face in simp.faces:
        fi = face.index
        k = conflicts[fi]
        for he in face.outer_hes:
            piece = sub.pieces[he >> 1]
            k.add(piece.source)
        for he in face.outer_hes:
            v = sub.he_origin(he)
            for src in incident_sources[v]:
                if src not in k:
                    k.add(src)
                    crossings[fi].append((src, v))
                elif src != sub.pieces[he >> 1].source:
                    crossings[fi].append((src, v))

    touched = set()
    for k in conflicts:
        touched |= k
    for obj in inst.objects:
        if obj.id in touched:
            continue
        # an untouched boundary keeps its arcs whole, so the arc midpoint
        # is interior to an arrangement edge of this object alone
        probe = obj.arcs[0].sample_point()
        fi = simp.face_of_point(probe, brute=True)
        if fi is None:
            raise DegeneracyDetected(
                f"object {obj.id} has an invisible boundary outside every face"
            )
        conflicts[fi].add(obj.id)

    incidence = [[] for _ in range(inst.n)]
    for fi in range(simp.n_faces):
        for obj in conflicts[fi]:
            incidence[obj].append(fi)
    for lst in incidence:
        lst.sort()

    simp.conflicts = conflicts
    simp.crossings = crossings
    simp.incidence = incidence
    return simp


def build_simplified_with_conflicts(inst: Instance, seed: int) -> SimplifiedStacking:
    """Stacking -> simplified stacking -> conflict lists, in one call."""
    st = build_stacking(inst, seed)
    simp = simplify_stacking(st)
    return compute_conflict_lists(simp, inst)
