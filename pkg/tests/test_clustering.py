import math

import pytest

from unionpath import reference as ref
from unionpath.clustering import (
    StarClustering,
    augment_dual,
    planar_r_division,
    star_clustering,
    verify_r_division,
    verify_star_clustering,
)
from unionpath.errors import NotConnected
from unionpath.geometry import Instance, chain_instance, make_disk
from unionpath.stacking import Stacking, build_stacking

from conftest import random_instance


def grid_adjacency(w, h):
    adj = [[] for _ in range(w * h)]
    for y in range(h):
        for x in range(w):
            i = y * w + x
            if x + 1 < w:
                adj[i].append(i + 1)
                adj[i + 1].append(i)
            if y + 1 < h:
                adj[i].append(i + w)
                adj[i + w].append(i)
    return adj


class TestAugmentDual:
    def test_pair(self, pair):
        aug = augment_dual(pair, Stacking(pair, [0, 1]))
        assert aug.n == 2
        assert aug.adjacency == [[1], [0]]
        assert aug.nodes_of_object == {0: [0], 1: [1]}

    def test_nest_virtual_node(self, nest):
        aug = augment_dual(nest, Stacking(nest, [1, 0]))  # inner owns nothing
        assert aug.n == 2
        kinds = {d[0] for d in aug.node_desc}
        assert kinds == {"face", "virtual"}
        assert aug.nodes_of_object[1] == [1]

    def test_single(self):
        inst = Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        aug = augment_dual(inst, Stacking(inst, [0]))
        assert aug.n == 1


class TestRDivision:
    def test_small_graph_single_region(self):
        p10 = grid_adjacency(10, 1)
        rd = planar_r_division(p10, 20)
        assert len(rd.regions) == 1
        assert rd.boundary == set()

    def test_path_graph(self):
        p10 = grid_adjacency(10, 1)
        rd = planar_r_division(p10, 4)
        assert verify_r_division(p10, rd, 4) == []
        assert all(len(r) <= 4 for r in rd.regions)

    def test_grid(self):
        g = grid_adjacency(8, 8)
        rd = planar_r_division(g, 16)
        assert verify_r_division(g, rd, 16) == []
        max_boundary = max(len(rd.region_boundary(i)) for i in range(len(rd.regions)))
        assert max_boundary <= 8 * math.sqrt(16)

    def test_two_clique_r1(self):
        adj = [[1], [0]]
        rd = planar_r_division(adj, 1)
        assert verify_r_division(adj, rd, 1) == []


class TestStarClustering:
    def test_chain6_r3(self):
        ch6 = chain_instance(6)
        sc = star_clustering(ch6, 3, seed=0)
        assert all(len(c) <= 3 for c in sc.clusters)
        assert verify_star_clustering(ch6, sc, 3).ok

    def test_two_disks_r1(self):
        inst = Instance(
            [make_disk(0, (0, 0), 1), make_disk(1, (1, 0), 1)], "disks", "two"
        )
        sc = star_clustering(inst, 1, seed=0)
        assert sc.clusters == [(0,), (1,)]
        assert sc.centers == [(0,), (1,)]
        assert verify_star_clustering(inst, sc, 1).ok

    def test_large_r_single_cluster(self):
        ch6 = chain_instance(6)
        sc = star_clustering(ch6, 5, seed=0)
        assert verify_star_clustering(ch6, sc, 5).ok

    def test_not_connected_raises(self, iso):
        with pytest.raises(NotConnected):
            star_clustering(iso, 1, 0)

    def test_randomized_verification(self):
        for fam in ("disks", "polygons"):
            for seed in range(3):
                n = 24
                inst = random_instance(fam, n, 311 * seed + n, connected=True)
                for r in (2, 4, max(2, math.isqrt(n))):
                    sc = star_clustering(inst, r, seed=seed)
                    assert verify_star_clustering(inst, sc, r).ok

    def test_stacking_reuse(self):
        inst = random_instance("disks", 30, 8, connected=True)
        st = build_stacking(inst, 5)
        a = star_clustering(inst, 4, seed=5, stacking=st)
        b = star_clustering(inst, 4, seed=5)
        assert a.clusters == b.clusters and a.centers == b.centers

    def test_division_mode_covers(self):
        inst = random_instance("disks", 30, 8, connected=True)
        sc = star_clustering(inst, 4, seed=1, split_components=False)
        covered = set()
        for c in sc.clusters:
            covered.update(c)
        assert covered == set(range(30))

    def test_verify_catches_planted_fault(self):
        ch6 = chain_instance(6)
        sc = star_clustering(ch6, 3, seed=0)
        broken = StarClustering(
            sc.r,
            sc.clusters,
            [tuple()] + list(sc.centers[1:]),
            sc.dual_size,
            sc.region_count,
            sc.region_boundary_sizes,
        )
        report = verify_star_clustering(ch6, broken, 3)
        assert not report.ok
        assert any(kind == "no-star-center" for kind, _ in report.failures)

    def test_verify_catches_oversized_cluster(self):
        ch6 = chain_instance(6)
        sc = star_clustering(ch6, 3, seed=0)
        broken = StarClustering(
            sc.r,
            [tuple(range(6))],
            [tuple(range(6))],
            sc.dual_size,
            sc.region_count,
            sc.region_boundary_sizes,
        )
        report = verify_star_clustering(ch6, broken, 3)
        assert not report.ok

    def test_dump_stable(self):
        ch6 = chain_instance(6)
        assert star_clustering(ch6, 3, 0).dump() == star_clustering(ch6, 3, 0).dump()
