import itertools
import random

import pytest

from unionpath import reference as ref
from unionpath.geometry import make_disk, segment_arc
from unionpath.numeric import Point
from unionpath.stacking import (
    Stacking,
    build_simplified_with_conflicts,
    build_stacking,
    compute_conflict_lists,
    red_blue_intersections,
    simplify_stacking,
)

from conftest import random_instance


class TestBuildStacking:
    def test_pair_orders(self, pair):
        st = Stacking(pair, [0, 1])  # draw 0 first, 1 hides it
        assert st.n_faces == 2
        by_owner = st.faces_of_owner()
        assert len(by_owner[1]) == 1  # all of disk 1 in one face
        # owner 1's face covers the lens: sample of each face is inside owner
        for cell in range(st.n_faces):
            smp = st.face_sample(cell)
            owner = st.owner[cell]
            from unionpath.geometry import object_contains_point

            assert object_contains_point(pair.objects[owner], smp) == "interior"

    def test_single_disk(self):
        from unionpath.geometry import Instance

        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        st = Stacking(inst, [0])
        assert st.n_faces == 1 and st.owner == [0]

    def test_nest_annulus_has_hole(self, nest):
        st = Stacking(nest, [0, 1])  # inner drawn on top
        assert st.n_faces == 2
        annulus = st.owner.index(0)
        assert st.face_has_holes(annulus)

    def test_matches_brute_oracle(self):
        for fam in ("disks", "polygons"):
            for seed in range(3):
                for n in (4, 8, 12):
                    inst = random_instance(fam, n, 997 * seed + n)
                    for pseed in range(3):
                        rng = random.Random(pseed)
                        perm = list(range(n))
                        rng.shuffle(perm)
                        st = Stacking(inst, perm)
                        cells = ref.brute_stacking(inst, perm)
                        assert st.n_faces == len(cells)
                        seen = set()
                        for cell in cells:
                            locs = {
                                st.cells.cell_of_face[st.arrangement.point_locate(s).index]
                                for s in cell.samples
                            }
                            assert len(locs) == 1
                            got = locs.pop()
                            assert st.owner[got] == cell.owner
                            assert got not in seen
                            seen.add(got)

    def test_seeded_build_deterministic(self):
        inst = random_instance("disks", 10, 4)
        a = build_stacking(inst, 7)
        b = build_stacking(inst, 7)
        assert a.perm == b.perm and a.owner == b.owner


class TestSimplify:
    def test_nest_absorbs_inner(self, nest):
        st = Stacking(nest, [0, 1])
        simp = simplify_stacking(st)
        assert simp.n_faces == 1
        assert simp.faces[0].owner == 0

    def test_pair_unchanged(self, pair):
        st = Stacking(pair, [0, 1])
        simp = simplify_stacking(st)
        assert simp.n_faces == 2

    def test_single_unchanged(self):
        from unionpath.geometry import Instance

        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        assert simplify_stacking(Stacking(inst, [0])).n_faces == 1

    def test_no_holes_and_same_coverage(self):
        rng = random.Random(9)
        for fam in ("disks", "polygons"):
            for seed in range(3):
                inst = random_instance(fam, 8, 31 * seed + 5)
                st = build_stacking(inst, seed)
                simp = simplify_stacking(st)
                # faces are bounded by their outer cycle only (no holes kept)
                for face in simp.faces:
                    arcs = simp.face_arcs(face.index)
                    assert ref.parity_inside(arcs, simp.face_sample(face.index))
                # sampled points covered identically
                for _ in range(120):
                    i = rng.randrange(inst.n)
                    x0, x1, y0, y1 = inst.objects[i].bbox()
                    p = Point(
                        float(x0) + rng.random() * float(x1 - x0),
                        float(y0) + rng.random() * float(y1 - y0),
                    )
                    loc = st.arrangement.point_locate(p)
                    if loc.kind != "face":
                        continue
                    in_stack = (
                        loc.index != st.arrangement.unbounded
                        and st.cells.cell_of_face[loc.index] >= 0
                    )
                    in_simp = (
                        loc.index != st.arrangement.unbounded
                        and simp.face_of_arr_face[loc.index] is not None
                    )
                    assert in_stack == in_simp


class TestRedBlue:
    def test_quadrilateral_crossed_by_segment(self):
        # a closed 4-gon boundary (no vertical edges) crossed by one blue
        red = [
            segment_arc(Point(0.0, 0.4), Point(0.5, 0.0), 100),
            segment_arc(Point(0.5, 0.0), Point(1.0, 0.6), 101),
            segment_arc(Point(0.5, 1.0), Point(1.0, 0.6), 102),
            segment_arc(Point(0.0, 0.4), Point(0.5, 1.0), 103),
        ]
        blue = [segment_arc(Point(-2.0, 0.3), Point(2.0, 0.3), 200)]
        out = red_blue_intersections(red, blue)
        points = sorted({(round(p.x, 9), round(p.y, 9)) for _, _, p in out})
        assert len(points) == 2

    def test_interior_segments_report_nothing(self):
        red = [
            segment_arc(Point(0.0, 0.4), Point(0.5, 0.0), 100),
            segment_arc(Point(0.5, 0.0), Point(1.0, 0.6), 101),
            segment_arc(Point(0.5, 1.0), Point(1.0, 0.6), 102),
            segment_arc(Point(0.0, 0.4), Point(0.5, 1.0), 103),
        ]
        blue = [
            segment_arc(Point(0.3, 0.45), Point(0.6, 0.5), 200),
            segment_arc(Point(0.4, 0.6), Point(0.7, 0.55), 201),
        ]
        assert red_blue_intersections(red, blue) == []

    def test_matches_brute_on_curved_input(self, triangle):
        red = [a.with_source(50 + i) for i, a in enumerate(triangle.objects[0].arcs)]
        blue = make_disk(9, (0.5, 1.0), 1).arcs
        got = red_blue_intersections(red, blue)
        want = ref.brute_red_blue(red, blue)
        norm = lambda rows: sorted(
            (b, r, round(p.x, 9), round(p.y, 9)) for b, r, p in rows
        )
        assert norm(got) == norm(want)

    def test_blue_blue_never_reported(self):
        red = [segment_arc(Point(-1.0, 0.0), Point(1.0, 0.05), 7)]
        blue = [
            segment_arc(Point(-1.0, -1.0), Point(1.0, 1.0), 100),
            segment_arc(Point(-1.0, 1.0), Point(1.0, -1.0), 101),
        ]
        out = red_blue_intersections(red, blue)
        assert all(ri == 0 for _, ri, _ in out)
        assert len(out) == 2  # each blue crosses the red once

    def test_early_exit_deletion(self):
        red = [
            segment_arc(Point(0.0, 0.4), Point(0.5, 0.0), 100),
            segment_arc(Point(0.5, 0.0), Point(1.0, 0.6), 101),
            segment_arc(Point(0.5, 1.0), Point(1.0, 0.6), 102),
            segment_arc(Point(0.0, 0.4), Point(0.5, 1.0), 103),
        ]
        blue = [segment_arc(Point(-2.0, 0.3), Point(2.0, 0.3), 200)]
        seen = []

        def kill(bi, ri, p):
            seen.append((bi, ri))
            return True  # delete the blue arc at its first hit

        red_blue_intersections(red, blue, kill)
        assert len(seen) == 1  # second crossing suppressed by the deletion


class TestConflictLists:
    def test_pair_conflicts(self, pair):
        simp = compute_conflict_lists(simplify_stacking(Stacking(pair, [0, 1])), pair)
        assert all(c == {0, 1} for c in simp.conflicts)
        assert simp.incidence == [[0, 1], [0, 1]]

    def test_single_disk(self):
        from unionpath.geometry import Instance

        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        simp = build_simplified_with_conflicts(inst, 0)
        assert simp.conflicts == [{0}]

    def test_chain_conflicts_within_distance_one(self):
        inst = random_instance("disks", 3, 0) and None
        from unionpath.geometry import chain_instance

        ch3 = chain_instance(3)
        g = ref.explicit_graph(ch3)
        for perm in itertools.permutations(range(3)):
            simp = compute_conflict_lists(simplify_stacking(Stacking(ch3, list(perm))), ch3)
            for face in simp.faces:
                allowed = {face.owner} | set(g.adjacency[face.owner])
                assert simp.conflicts[face.index] <= allowed

    def test_equals_brute_oracle(self):
        for fam in ("disks", "polygons"):
            for seed in range(4):
                for n in (4, 9, 16):
                    inst = random_instance(fam, n, 17 * seed + n)
                    simp = build_simplified_with_conflicts(inst, seed)
                    faces = [(f.index, simp.face_arcs(f.index)) for f in simp.faces]
                    brute = ref.brute_conflict_lists(faces, inst)
                    for f in simp.faces:
                        assert simp.conflicts[f.index] == brute[f.index]

    def test_dumps_are_stable(self, pair):
        a = build_simplified_with_conflicts(pair, 3)
        b = build_simplified_with_conflicts(pair, 3)
        assert a.dump() == b.dump()
        assert a.stacking.dump() == b.stacking.dump()
