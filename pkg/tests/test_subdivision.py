import math
import random

import pytest

from unionpath import reference as ref
from unionpath.geometry import make_disk, object_contains_point
from unionpath.numeric import Point
from unionpath.subdivision import build_arrangement, union_of_objects

from conftest import random_instance


class TestBuildArrangement:
    def test_single_circle(self):
        one = make_disk(0, (0, 0), 1)
        sub = build_arrangement(one.arcs)
        assert sub.n_vertices == 2
        assert sub.n_edges == 2
        assert sub.n_faces == 2
        assert len(sub.bounded_faces) == 1

    def test_pair(self, pair):
        sub = build_arrangement(pair.all_arcs())
        assert sub.n_vertices == 6
        assert sub.n_edges == 8
        assert len(sub.bounded_faces) == 3

    def test_empty(self):
        sub = build_arrangement([])
        assert sub.n_vertices == 0
        assert sub.n_faces == 1

    def test_euler_relation(self):
        for fam in ("disks", "polygons"):
            for seed in (1, 2, 3):
                inst = random_instance(fam, 9, seed)
                sub = build_arrangement(inst.all_arcs())
                assert sub.n_vertices - sub.n_edges + sub.n_faces == 1 + sub.euler_components()

    def test_matches_brute_oracle(self):
        for fam in ("disks", "polygons"):
            for seed in range(4):
                for n in (3, 7, 12):
                    inst = random_instance(fam, n, 100 * seed + n)
                    arcs = inst.all_arcs()
                    sub = build_arrangement(arcs)
                    brute = ref.brute_arrangement(arcs)
                    assert sub.n_vertices == len(brute.vertices)
                    assert sub.n_edges == len(brute.pieces)
                    assert len(sub.bounded_faces) == brute.n_bounded_faces
                    mapped = set()
                    for face in brute.faces:
                        loc = sub.point_locate(face.sample)
                        assert loc.kind == "face" and loc.index != sub.unbounded
                        mapped.add(loc.index)
                    assert len(mapped) == brute.n_bounded_faces


class TestPointLocate:
    def test_pair_examples(self, pair):
        sub = build_arrangement(pair.all_arcs())
        lens = sub.point_locate(Point(0.5, 0.0))
        assert lens.kind == "face"
        covers = sub.cover_sets()
        assert covers[lens.index] == {0, 1}
        assert sub.point_locate(Point(10.0, 10.0)) .index == sub.unbounded
        assert sub.point_locate(Point(0.0, 1.0)).kind == "edge"

    def test_vertex_hit(self, pair):
        sub = build_arrangement(pair.all_arcs())
        assert sub.point_locate(Point(-1.0, 0.0)).kind == "vertex"

    def test_agrees_with_parity_oracle(self):
        rng = random.Random(5)
        inst = random_instance("disks", 12, 77)
        sub = build_arrangement(inst.all_arcs())
        covers = sub.cover_sets()
        x0, x1 = -2.0, 12.0
        for _ in range(1000):
            p = Point(rng.uniform(x0, x1), rng.uniform(x0, x1))
            loc = sub.point_locate(p)
            if loc.kind != "face":
                continue
            want = {
                o.id for o in inst.objects if object_contains_point(o, p) == "interior"
            }
            got = set(covers[loc.index]) if loc.index != sub.unbounded else set()
            assert got == want

    def test_brute_locate_agrees(self):
        inst = random_instance("disks", 10, 31)
        sub = build_arrangement(inst.all_arcs())
        rng = random.Random(8)
        for _ in range(200):
            p = Point(rng.uniform(-1, 10), rng.uniform(-1, 10))
            a = sub.point_locate(p)
            b = sub.locate_brute(p)
            assert (a.kind, a.index) == (b.kind, b.index)


class TestDualGraph:
    def test_single_circle(self):
        sub = build_arrangement(make_disk(0, (0, 0), 1).arcs)
        dg = sub.dual_graph()
        assert dg.n == 1 and dg.degree(0) == 0

    def test_pair_lens_adjacent_to_both(self, pair):
        sub = build_arrangement(pair.all_arcs())
        dg = sub.dual_graph()
        assert dg.n == 3
        covers = sub.cover_sets()
        bounded = sub.bounded_faces
        lens = next(i for i, f in enumerate(bounded) if covers[f] == {0, 1})
        assert len(dg.simple_neighbors(lens)) == 2

    def test_disjoint_circles(self, iso):
        sub = build_arrangement(iso.all_arcs())
        dg = sub.dual_graph()
        assert dg.n == 2
        assert all(dg.degree(i) == 0 for i in range(2))


class TestUnion:
    def test_single_disk(self):
        u = union_of_objects([make_disk(0, (0, 0), 1)])
        assert sum(u.inside) == 1

    def test_pair_real_boundary_vertices(self, pair):
        u = union_of_objects(pair.objects)
        verts = u.real_boundary_vertices()
        assert len(verts) == 2
        ys = sorted(round(float(v.y), 6) for v in verts)
        assert ys == [-0.866025, 0.866025]

    def test_iso_two_components(self, iso):
        u = union_of_objects(iso.objects)
        assert u.inside_component_count() == 2

    def test_membership_sampling(self):
        rng = random.Random(3)
        inst = random_instance("disks", 10, 55)
        u = union_of_objects(inst.objects)
        for _ in range(1000):
            p = Point(rng.uniform(-1, 9), rng.uniform(-1, 9))
            verdict = u.locate(p)
            inside_any = any(
                object_contains_point(o, p) == "interior" for o in inst.objects
            )
            if verdict == "in":
                assert inside_any
            elif verdict == "out":
                assert not inside_any


class TestDebugDump:
    def test_golden_single_circle(self):
        sub = build_arrangement(make_disk(0, (0, 0), 1).arcs)
        dump = sub.debug_dump()
        assert dump == (
            '{"edges":[{"kind":"upper","p0":[-1.0,0.0],"p1":[1.0,0.0],"source":0},'
            '{"kind":"lower","p0":[-1.0,0.0],"p1":[1.0,0.0],"source":0}],'
            '"faces":[{"holes":[],"outer":[1,2],"unbounded":false},'
            '{"holes":[[0,3]],"outer":[],"unbounded":true}],'
            '"schema":1,"vertices":[[-1.0,0.0],[1.0,0.0]]}\n'
        )

    def test_dump_stable(self, pair):
        sub1 = build_arrangement(pair.all_arcs())
        sub2 = build_arrangement(pair.all_arcs())
        assert sub1.debug_dump() == sub2.debug_dump()
