"""Patterns, additive-2 eccentricity and diameter estimates, and the
constant-query distance oracle.

Distances to a cluster's star centers compress into patterns (offset
vectors relative to the first center).  For paths that leave a cluster,
the worst node per pattern is precomputed; in-cluster paths come from
all-pairs distances inside the cluster.  Every estimate lands within +2
of the true hop distance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .clustering import StarClustering, star_clustering
from .errors import Disconnected, NotConnected
from .geometry import Instance
from .sssp import SsspEngine

INF = math.inf


def pattern_of(v: int, centers: Sequence[int], dist_from_centers: dict) -> tuple:
    """Offsets d(v, q_i) - d(v, q_0) for the ordered center sequence."""
    base = dist_from_centers[centers[0]][v]
    offsets = []
    for q in centers:
        d = dist_from_centers[q][v]
        if d == INF or base == INF:
            raise Disconnected(f"node {v} unreachable from center {q}")
        offsets.append(int(d - base))
    return tuple(offsets)


def pattern_distance(pattern: Sequence[int], dist_to_centers: Sequence[int]) -> int:
    """min_i (d(u, q_i) + pattern[i])."""
    if len(pattern) != len(dist_to_centers):
        raise ValueError("pattern and distance vectors differ in length")
    return min(int(d) + p for d, p in zip(dist_to_centers, pattern))


@dataclass
class ClusterTables:
    members: tuple  # sorted object ids
    centers: tuple  # Q(C): sorted star centers, q_0 first
    patterns: list  # deduplicated pattern tuples, lexicographic
    pattern_index: list  # per node v: index into patterns
    in_cluster: list  # |C| x |C| distances inside the induced subgraph
    pattern_node_dist: list  # per pattern: list over members of d(P, u)
    far_node: list  # per pattern: (member position, d(P, u)) maximizing d
    _span: int = 0  # max_i d(q_0, q_i): the Delta of the pattern monitor


@dataclass
class DiameterResult:
    eccentricities: list
    diameter: int
    r: int
    monitors: list  # per cluster: (|P_C|, (|S(C)| * Delta)^4)


def _build_tables(inst: Instance, sc: StarClustering, engine: SsspEngine):
    """Distances from every star center plus per-cluster tables."""
    all_centers = sorted({q for cents in sc.centers for q in cents})
    dist_from_centers = {}
    for q in all_centers:
        d = engine.run_cached(q)
        if any(x == INF for x in d):
            raise NotConnected("center SSSP found unreachable nodes")
        dist_from_centers[q] = d

    tables = []
    for ci, members in enumerate(sc.clusters):
        centers = sc.centers[ci]
        if not centers:
            raise AssertionError(f"cluster {ci} has no star center")
        pats = {}
        pattern_index = [0] * inst.n
        per_node = [pattern_of(v, centers, dist_from_centers) for v in range(inst.n)]
        patterns = sorted(set(per_node))
        rank = {p: i for i, p in enumerate(patterns)}
        pattern_index = [rank[p] for p in per_node]

        sub = inst.sub_instance(members, name=f"cluster{ci}")
        sub_engine = SsspEngine(sub, engine.seed)
        size = len(members)
        in_cluster = []
        for pos in range(size):
            row = sub_engine.run(pos)
            if any(x == INF for x in row):
                raise AssertionError(f"cluster {ci} is not internally connected")
            in_cluster.append([int(x) for x in row])

        pattern_node_dist = []
        far_node = []
        for p in patterns:
            row = []
            for u in members:
                dvec = [dist_from_centers[q][u] for q in centers]
                row.append(pattern_distance(p, dvec))
            best = max(range(size), key=lambda k: (row[k], -k))
            pattern_node_dist.append(row)
            far_node.append((best, row[best]))

        t = ClusterTables(
            tuple(members),
            tuple(centers),
            patterns,
            pattern_index,
            in_cluster,
            pattern_node_dist,
            far_node,
        )
        q0 = centers[0]
        t._span = max(int(dist_from_centers[q0][q]) for q in centers)
        tables.append(t)
    return dist_from_centers, tables


def _delta_value(t: ClusterTables, v: int, dist_from_centers: dict) -> int:
    """Largest distance from v to the cluster, up to +2."""
    pidx = t.pattern_index[v]
    q0 = t.centers[0]
    d_v_q0 = int(dist_from_centers[q0][v])
    if v not in t.members:
        return d_v_q0 + t.far_node[pidx][1]
    pos = {u: k for k, u in enumerate(t.members)}
    vk = pos[v]
    best = 0
    for uk in range(len(t.members)):
        via_cluster = t.in_cluster[uk][vk]
        via_pattern = d_v_q0 + t.pattern_node_dist[pidx][uk]
        best = max(best, min(via_cluster, via_pattern))
    return best


def approx_eccentricities(
    inst: Instance,
    r: Optional[int] = None,
    seed: int = 0,
    engine: Optional[SsspEngine] = None,
) -> DiameterResult:
    """Eccentricity estimates within [ecc, ecc+2] for every node.

    A prebuilt engine may be passed to share center runs across calls
    with different r on the same instance.
    """
    from . import reference

    if inst.n == 0:
        raise ValueError("empty instance")
    if inst.n == 1:
        return DiameterResult([0], 0, r or 1, [])
    g = reference.explicit_graph(inst)
    if not reference.is_connected(g):
        raise NotConnected("eccentricity estimation needs a connected graph")
    if r is None:
        r = max(1, min(inst.n - 1, math.ceil(inst.n ** (1.0 / 7.0))))
    sc = star_clustering(inst, r, seed)
    if engine is None:
        engine = SsspEngine(inst, seed)
    dist_from_centers, tables = _build_tables(inst, sc, engine)

    eccs = []
    for v in range(inst.n):
        eccs.append(max(_delta_value(t, v, dist_from_centers) for t in tables))
    monitors = [
        (len(t.patterns), (len(t.centers) * max(t._span, 1)) ** 4) for t in tables
    ]
    return DiameterResult(eccs, max(eccs), r, monitors)


def approx_diameter(inst: Instance, r: Optional[int] = None, seed: int = 0) -> int:
    """Hop diameter up to an additive error of 2."""
    return approx_eccentricities(inst, r, seed).diameter


# ---------------------------------------------------------------------------
# Distance oracle


@dataclass
class DistanceOracle:
    n: int
    r: int
    clusters: list  # sorted member tuples
    centers: list  # Q(C) per cluster
    home: list  # per node: cluster index
    member_pos: list  # per cluster: {node: position}
    in_cluster: list  # per cluster: matrix (storage item 1)
    pattern_rows: list  # per cluster: {node: [d(P, u)] per pattern} for home nodes (item 2)
    node_cluster: list  # per node, per cluster: (pattern index, d(u, q0)) (item 3)

    def storage_cells(self) -> int:
        cells = 0
        for m in self.in_cluster:
            cells += sum(len(row) for row in m)
        for rows in self.pattern_rows:
            cells += sum(len(r) for r in rows.values())
        cells += sum(2 * len(per) for per in self.node_cluster)
        return cells

    def max_pattern_count(self) -> int:
        out = 0
        for rows in self.pattern_rows:
            for r in rows.values():
                out = max(out, len(r))
                break
        return out


def build_distance_oracle(inst: Instance, r: Optional[int] = None, seed: int = 0) -> DistanceOracle:
    """Precompute the three oracle tables; answers are within +2."""
    from . import reference

    if inst.n == 0:
        raise ValueError("empty instance")
    if inst.n == 1:
        return DistanceOracle(1, r or 1, [(0,)], [(0,)], [0], [{0: 0}], [[[0]]], [{0: [0]}], [[(0, 0)]])
    g = reference.explicit_graph(inst)
    if not reference.is_connected(g):
        raise NotConnected("the distance oracle needs a connected graph")
    if r is None:
        r = max(1, min(inst.n - 1, math.ceil(inst.n ** (2.0 / 13.0))))
    sc = star_clustering(inst, r, seed)
    engine = SsspEngine(inst, seed)
    dist_from_centers, tables = _build_tables(inst, sc, engine)

    home = [None] * inst.n
    for ci, members in enumerate(sc.clusters):
        for u in members:
            if home[u] is None:
                home[u] = ci

    member_pos = [{u: k for k, u in enumerate(t.members)} for t in tables]
    pattern_rows = []
    for ci, t in enumerate(tables):
        rows = {}
        for u in t.members:
            if home[u] != ci:
                continue
            uk = member_pos[ci][u]
            rows[u] = [t.pattern_node_dist[p][uk] for p in range(len(t.patterns))]
        pattern_rows.append(rows)

    node_cluster = []
    for u in range(inst.n):
        per = []
        for t in tables:
            q0 = t.centers[0]
            per.append((t.pattern_index[u], int(dist_from_centers[q0][u])))
        node_cluster.append(per)

    return DistanceOracle(
        inst.n,
        r,
        [t.members for t in tables],
        [t.centers for t in tables],
        home,
        member_pos,
        [t.in_cluster for t in tables],
        pattern_rows,
        node_cluster,
    )


def oracle_query(orc: DistanceOracle, u: int, v: int) -> int:
    """Distance estimate in [d(u,v), d(u,v)+2] from a constant number of
    table lookups."""
    if not (0 <= u < orc.n and 0 <= v < orc.n):
        raise ValueError("query node out of range")
    ci = orc.home[v]
    pidx, d_u_q0 = orc.node_cluster[u][ci]
    via_pattern = d_u_q0 + orc.pattern_rows[ci][v][pidx]
    pos = orc.member_pos[ci]
    if u in pos:
        return min(orc.in_cluster[ci][pos[u]][pos[v]], via_pattern)
    return via_pattern


def oracle_to_json(orc: DistanceOracle) -> str:
    data = {
        "schema": 1,
        "kind": "distance-oracle",
        "n": orc.n,
        "r": orc.r,
        "clusters": [list(c) for c in orc.clusters],
        "centers": [list(c) for c in orc.centers],
        "home": orc.home,
        "in_cluster": orc.in_cluster,
        "pattern_rows": [
            {str(u): rows for u, rows in per.items()} for per in orc.pattern_rows
        ],
        "node_cluster": [[list(x) for x in per] for per in orc.node_cluster],
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def oracle_from_json(text: str) -> DistanceOracle:
    data = json.loads(text)
    if data.get("schema") != 1 or data.get("kind") != "distance-oracle":
        raise ValueError("not a distance oracle file")
    clusters = [tuple(c) for c in data["clusters"]]
    return DistanceOracle(
        data["n"],
        data["r"],
        clusters,
        [tuple(c) for c in data["centers"]],
        data["home"],
        [{u: k for k, u in enumerate(c)} for c in clusters],
        data["in_cluster"],
        [{int(u): rows for u, rows in per.items()} for per in data["pattern_rows"]],
        [[tuple(x) for x in per] for per in data["node_cluster"]],
    )
