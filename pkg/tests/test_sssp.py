import math
import random

import pytest

from unionpath import reference as ref
from unionpath.geometry import Instance, chain_instance, make_disk
from unionpath.sssp import SsspEngine, dist_to_json, initial_levels, sssp

from conftest import random_instance

INF = math.inf


class TestExamples:
    def test_chain3(self):
        assert sssp(chain_instance(3), 0, seed=1) == [0, 1, 2]

    def test_single_object(self):
        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        assert sssp(inst, 0) == [0]

    def test_iso_unreachable(self, iso):
        assert sssp(iso, 0) == [0, INF]

    def test_nest_containment_edge(self, nest):
        assert sssp(nest, 1) == [1, 0]

    def test_triangle_clique(self, triangle):
        assert sssp(triangle, 0) == [0, 1, 1]

    def test_json_output(self, iso):
        out = dist_to_json(0, sssp(iso, 0))
        assert out == '{"dist":[0,-1],"schema":1,"source":0}\n'

    def test_bad_source(self, iso):
        with pytest.raises(ValueError):
            sssp(iso, 5)


class TestInitialLevels:
    def test_chain5_middle(self):
        l0, l1 = initial_levels(chain_instance(5), 2)
        assert l0 == [2] and l1 == [1, 3]

    def test_single(self):
        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        assert initial_levels(inst, 0) == ([0], [])

    def test_clique(self, triangle):
        for src in range(3):
            _, l1 = initial_levels(triangle, src)
            assert l1 == sorted(set(range(3)) - {src})


class TestOracleEquivalence:
    def test_randomized_mixed_families(self):
        runs = 0
        for fam in ("disks", "polygons"):
            for seed in range(4):
                for n in (2, 6, 12, 24):
                    inst = random_instance(fam, n, 211 * seed + n)
                    g = ref.explicit_graph(inst)
                    engine = SsspEngine(inst, seed)
                    rng = random.Random(seed)
                    for src in rng.sample(range(n), min(3, n)):
                        assert engine.run(src) == ref.bfs(g, src)
                        runs += 1
        assert runs >= 80

    def test_dense_instances(self):
        for fam in ("disks", "polygons"):
            inst = random_instance(fam, 30, 5, box=6.5)
            g = ref.explicit_graph(inst)
            engine = SsspEngine(inst, 1)
            for src in (0, 10, 29):
                assert engine.run(src) == ref.bfs(g, src)

    def test_connected_instance(self):
        inst = random_instance("disks", 60, 19, connected=True)
        g = ref.explicit_graph(inst)
        engine = SsspEngine(inst, 2)
        d = engine.run(0)
        assert d == ref.bfs(g, 0)
        assert all(x != INF for x in d)


class TestStructuralAsserts:
    def test_face_visits_at_most_three(self):
        worst = 0
        for seed in range(3):
            inst = random_instance("disks", 40, 7 * seed + 1, box=8.0)
            engine = SsspEngine(inst, seed)
            for src in (0, 20):
                engine.run(src)
                worst = max(worst, engine.last_stats.max_face_visits)
        assert worst <= 3

    def test_levels_partition_and_terminate(self):
        inst = random_instance("disks", 25, 13, connected=True)
        engine = SsspEngine(inst, 0)
        d = engine.run(3)
        levels = {}
        for v, dist in enumerate(d):
            levels.setdefault(dist, []).append(v)
        assert levels[0] == [3]
        top = max(k for k in levels if k != INF)
        for j in range(top + 1):
            assert levels.get(j), f"empty level {j} before the last one"


class TestPerFaceCandidates:
    def test_reported_sets_sound_and_complete(self):
        # soundness per face against the closed-face brute filter, and
        # completeness per level via the union of faces
        for fam in ("disks", "polygons"):
            inst = random_instance(fam, 14, 23)
            g = ref.explicit_graph(inst)
            engine = SsspEngine(inst, 0)
            events = []
            got = engine.run(0, trace=lambda rec: events.append(rec))
            assert got == ref.bfs(g, 0)
            simp = engine.simp
            by_level = {}
            for rec in events:
                by_level.setdefault(rec["j"], []).append(rec)
                if rec["result"]:
                    arcs = simp.face_arcs(rec["face"])
                    brute = ref.brute_candidates_hitting_level(
                        inst, arcs, rec["candidates"], rec["level_prev"]
                    )
                    assert set(rec["result"]) <= brute
            for j, recs in by_level.items():
                level_prev = set(recs[0]["level_prev"])
                reported = set()
                for rec in recs:
                    reported |= set(rec["result"])
                expected = {
                    v
                    for v in range(inst.n)
                    if got[v] == j
                }
                assert reported == expected
