import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unionpath import reference as ref
from unionpath.errors import NotConnected
from unionpath.geometry import Instance, chain_instance, make_disk, segment_arc
from unionpath.numeric import Point

from conftest import random_instance

INF = math.inf


class TestGraphOracles:
    def test_chain4_is_path(self):
        g = ref.explicit_graph(chain_instance(4))
        assert g.adjacency == [[1], [0, 2], [1, 3], [2]]

    def test_iso_isolated(self, iso):
        g = ref.explicit_graph(iso)
        assert g.adjacency == [[], []]

    def test_nest_single_edge(self, nest):
        g = ref.explicit_graph(nest)
        assert g.adjacency == [[1], [0]]

    def test_bfs_hand_traces(self):
        g = ref.explicit_graph(chain_instance(3))
        assert ref.bfs(g, 0) == [0, 1, 2]
        single = ref.explicit_graph(
            Instance([make_disk(0, (0, 0), 1)], "disks", "one")
        )
        assert ref.bfs(single, 0) == [0]

    def test_bfs_unreachable(self, iso):
        g = ref.explicit_graph(iso)
        assert ref.bfs(g, 0) == [0, INF]

    def test_diameter_examples(self, triangle):
        assert ref.exact_diameter(ref.explicit_graph(chain_instance(6))) == 5
        one = ref.explicit_graph(Instance([make_disk(0, (0, 0), 1)], "disks", "one"))
        assert ref.exact_diameter(one) == 0
        assert ref.exact_diameter(ref.explicit_graph(triangle)) == 1

    def test_diameter_needs_connected(self, iso):
        with pytest.raises(NotConnected):
            ref.exact_diameter(ref.explicit_graph(iso))

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=25, deadline=None)
    def test_bfs_triangle_inequality(self, seed):
        inst = random_instance("disks", 12, seed % 1000)
        g = ref.explicit_graph(inst)
        d0 = ref.bfs(g, 0)
        for u in range(g.n):
            du = ref.bfs(g, u)
            for v in range(g.n):
                if d0[u] != INF and du[v] != INF:
                    assert d0[v] <= d0[u] + du[v]

    def test_diameter_is_max_eccentricity(self):
        inst = random_instance("disks", 14, 5, connected=True)
        g = ref.explicit_graph(inst)
        assert ref.exact_diameter(g) == max(ref.exact_eccentricities(g))


class TestBruteGeometry:
    def test_pair_self_consistency(self, pair):
        arr = ref.brute_arrangement(pair.all_arcs())
        assert len(arr.vertices) == 6
        assert arr.n_bounded_faces == 3

    def test_empty(self):
        arr = ref.brute_arrangement([])
        assert arr.vertices == [] and arr.faces == []

    def test_red_blue_square_like(self):
        red = [
            segment_arc(Point(0.0, 0.4), Point(0.5, 0.0), 100),
            segment_arc(Point(0.5, 0.0), Point(1.0, 0.6), 101),
            segment_arc(Point(0.5, 1.0), Point(1.0, 0.6), 102),
            segment_arc(Point(0.0, 0.4), Point(0.5, 1.0), 103),
        ]
        blue = [segment_arc(Point(-2.0, 0.3), Point(2.0, 0.3), 200)]
        assert len(ref.brute_red_blue(red, blue)) == 2

    def test_brute_locate_rejects_on_edge(self, pair):
        arr = ref.brute_arrangement(pair.all_arcs())
        with pytest.raises(ValueError):
            ref.brute_locate(arr, Point(0.0, 1.0))
