"""Star-based clusterings of the intersection graph.

The construction works on the planar dual of a (non-simplified) random
stacking, augmented with one node per object that owns no face.  A planar
r-division of that dual yields regions whose boundary nodes become the
star centers; the objects of each region split into connected components
of the induced intersection graph, which are the clusters.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import NotConnected
from .geometry import Instance, objects_intersect
from .numeric import Point
from .stacking import Stacking, build_stacking


# ---------------------------------------------------------------------------
# Augmented dual


@dataclass
class AugmentedDual:
    """Planar dual of a stacking plus one virtual node per faceless object."""

    adjacency: list  # simple adjacency lists (sorted)
    node_desc: list  # ("face", cell) | ("virtual", object id)
    nodes_of_object: dict  # object id -> node ids (V(D))
    rep_points: dict  # object id -> representative point

    @property
    def n(self) -> int:
        return len(self.adjacency)


def augment_dual(inst: Instance, stacking: Stacking) -> AugmentedDual:
    dual = stacking.cells.cell_dual()
    adjacency = [set(dual.simple_neighbors(c)) for c in range(dual.n)]
    node_desc = [("face", c) for c in range(dual.n)]
    nodes_of_object: dict = {}
    rep_points: dict = {}

    owned: dict = {}
    for cell, owner in enumerate(stacking.owner):
        owned.setdefault(owner, []).append(cell)
    for obj_id, cells in owned.items():
        nodes_of_object[obj_id] = list(cells)
        rep_points[obj_id] = stacking.face_sample(cells[0])

    covers = stacking.arrangement.cover_sets()
    for obj in inst.objects:
        if obj.id in nodes_of_object:
            continue
        host_face = None
        for f in range(stacking.arrangement.n_faces):
            if obj.id in covers[f]:
                host_face = f
                break
        if host_face is None:
            raise NotConnected(f"object {obj.id} covers no arrangement face")
        rep = stacking.arrangement.face_sample(host_face)
        host_cell = stacking.cells.cell_of_face[host_face]
        node = len(adjacency)
        adjacency.append({host_cell})
        adjacency[host_cell].add(node)
        node_desc.append(("virtual", obj.id))
        nodes_of_object[obj.id] = [node]
        rep_points[obj.id] = rep

    return AugmentedDual(
        [sorted(s) for s in adjacency], node_desc, nodes_of_object, rep_points
    )


# ---------------------------------------------------------------------------
# Planar r-division


@dataclass
class RDivision:
    regions: list  # list of frozensets of node ids
    boundary: set  # S*: nodes shared between regions or with outside edges

    def region_boundary(self, i: int) -> set:
        return self.regions[i] & self.boundary


def _components(nodes: set, adj) -> list:
    comps = []
    seen = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v in nodes and v not in seen:
                    seen.add(v)
                    comp.add(v)
                    queue.append(v)
        comps.append(comp)
    return comps


def _bfs_levels(nodes: set, adj, root: int) -> list:
    dist = {root: 0}
    queue = deque([root])
    levels = [[root]]
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in nodes and v not in dist:
                dist[v] = dist[u] + 1
                while len(levels) <= dist[v]:
                    levels.append([])
                levels[dist[v]].append(v)
                queue.append(v)
    return levels


def _separator(nodes: set, adj):
    """A BFS-level cut chosen for small size and balance.

    Returns (cut_set, components of nodes minus the cut)."""
    root = min(nodes)
    levels = _bfs_levels(nodes, adj, root)
    far = levels[-1][0]
    levels = _bfs_levels(nodes, adj, far)
    total = len(nodes)
    candidates = []
    prefix = 0
    for i, level in enumerate(levels):
        below = prefix
        above = total - below - len(level)
        prefix += len(level)
        worst = max(below, above)
        candidates.append((0 if worst <= (2 * total) // 3 else 1, len(level), worst, i))
    candidates.sort()
    for _, _, _, i in candidates:
        cut = set(levels[i])
        if len(cut) == total:
            continue
        comps = _components(nodes - cut, adj)
        pieces = _attach_separator(cut, comps, adj)
        if all(len(p) < total for p in pieces):
            return pieces
        # re-attaching the cut regrew a piece to everything: keep the cut
        # as a piece of its own (its neighbors become boundary nodes)
        pieces = comps + [cut]
        if all(len(p) < total for p in pieces):
            return pieces
    raise AssertionError("no usable separator found")


def _attach_separator(cut: set, comps: list, adj) -> list:
    """Each component plus the cut nodes adjacent to it; cut nodes seeing
    no component are attached along cut-internal edges."""
    pieces = [set(c) for c in comps]
    attached: dict = {}
    for s in sorted(cut):
        targets = [k for k, c in enumerate(comps) if any(v in c for v in adj[s])]
        for k in targets:
            pieces[k].add(s)
        if targets:
            attached[s] = targets[0]
    pending = [s for s in sorted(cut) if s not in attached]
    while pending:
        progressed = False
        rest = []
        for s in pending:
            home = next((attached[v] for v in adj[s] if v in attached), None)
            if home is not None:
                pieces[home].add(s)
                attached[s] = home
                progressed = True
            else:
                rest.append(s)
        if not progressed and rest:
            pieces.append({rest.pop()})
            attached[next(iter(pieces[-1]))] = len(pieces) - 1
            progressed = True
        pending = rest
    return [p for p in pieces if p]


def planar_r_division(adjacency: Sequence[Sequence[int]], r: int) -> RDivision:
    """Cover of the graph by regions of at most r nodes.

    Interior nodes (not in the boundary set) belong to exactly one region
    together with all their neighbors; the boundary set is derived from
    the final regions, so those invariants hold by construction.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    n = len(adjacency)
    regions: list = []

    def split(nodes: set, depth: int):
        if depth > 4 * max(1, n):
            raise AssertionError("r-division recursion runaway")
        if len(nodes) <= r:
            regions.append(frozenset(nodes))
            return
        pieces = _separator(nodes, adjacency)
        pieces = _merge_runts(pieces, r)
        for piece in pieces:
            split(piece, depth + 1)

    for comp in _components(set(range(n)), adjacency):
        split(comp, 0)

    region_of: dict = {}
    multi: set = set()
    for i, reg in enumerate(regions):
        for v in reg:
            if v in region_of:
                multi.add(v)
            region_of[v] = i
    boundary: set = set(multi)
    for i, reg in enumerate(regions):
        for v in reg:
            if v not in multi and any(u not in reg for u in adjacency[v]):
                boundary.add(v)
    return RDivision(regions, boundary)


def _merge_runts(pieces: list, r: int) -> list:
    """Greedily combine small pieces so regions do not fragment."""
    small = sorted((p for p in pieces if len(p) <= r // 2), key=len)
    big = [p for p in pieces if len(p) > r // 2]
    merged = []
    bin_: set = set()
    for p in small:
        if bin_ and len(bin_ | p) > r:
            merged.append(bin_)
            bin_ = set(p)
        else:
            bin_ |= p
    if bin_:
        merged.append(bin_)
    return big + merged


def verify_r_division(adjacency, rdiv: RDivision, r: int) -> list:
    """Violations of the r-division invariants (empty when valid)."""
    n = len(adjacency)
    problems = []
    covered = set()
    for reg in rdiv.regions:
        covered |= reg
        if len(reg) > r:
            problems.append(("region-too-big", len(reg)))
    if covered != set(range(n)):
        problems.append(("cover", sorted(set(range(n)) - covered)))
    count: dict = {}
    for reg in rdiv.regions:
        for v in reg:
            count[v] = count.get(v, 0) + 1
    for v in range(n):
        if v in rdiv.boundary:
            continue
        if count.get(v, 0) != 1:
            problems.append(("interior-multiplicity", v))
            continue
        reg = next(r_ for r_ in rdiv.regions if v in r_)
        if any(u not in reg for u in adjacency[v]):
            problems.append(("interior-neighbor-outside", v))
    return problems


# ---------------------------------------------------------------------------
# Star clustering


@dataclass
class StarClustering:
    r: int
    clusters: list  # sorted tuples of object ids
    centers: list  # per cluster: sorted tuple of star centers S(C)
    dual_size: int  # node count of the augmented dual
    region_count: int
    region_boundary_sizes: list  # |S* inter C*| per region

    @property
    def size(self) -> int:
        return len(self.clusters)

    def local_boundary_complexity(self) -> int:
        return max((len(s) for s in self.centers), default=0)

    def global_boundary_complexity(self) -> int:
        return sum(len(s) for s in self.centers)

    def dump(self) -> str:
        data = {
            "schema": 1,
            "r": self.r,
            "clusters": [list(c) for c in self.clusters],
            "centers": [list(s) for s in self.centers],
            "stats": {
                "size": self.size,
                "dual_size": self.dual_size,
                "regions": self.region_count,
                "local_boundary": self.local_boundary_complexity(),
                "global_boundary": self.global_boundary_complexity(),
            },
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def _adjacency_on(inst: Instance, ids: list) -> dict:
    adj = {i: [] for i in ids}
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            if objects_intersect(inst.objects[ids[a]], inst.objects[ids[b]]):
                adj[ids[a]].append(ids[b])
                adj[ids[b]].append(ids[a])
    return adj


def star_clustering(
    inst: Instance,
    r: int,
    seed: int = 0,
    split_components: bool = True,
    stacking: Optional[Stacking] = None,
) -> StarClustering:
    """Star-based r-clustering of a connected intersection graph.

    With split_components False the regions are reported directly
    (a star-based r-division: same properties except connectivity).
    """
    if inst.n < 1:
        raise ValueError("empty instance")
    if inst.n == 1:
        return StarClustering(r, [(0,)], [(0,)], 1, 1, [0])
    if not (1 <= r < inst.n):
        raise ValueError(f"need 1 <= r < n, got r={r}, n={inst.n}")
    if stacking is None:
        stacking = build_stacking(inst, seed)
    if not _stacking_connected(stacking):
        raise NotConnected("star clustering needs a connected intersection graph")

    aug = augment_dual(inst, stacking)
    rdiv = planar_r_division(aug.adjacency, r)

    node_obj = {}
    for obj_id, nodes in aug.nodes_of_object.items():
        for v in nodes:
            node_obj[v] = obj_id

    clusters: list = []
    centers: list = []
    seen_keys = set()
    boundary_sizes = []
    for reg in rdiv.regions:
        boundary_sizes.append(len(reg & rdiv.boundary))
        members = sorted({node_obj[v] for v in reg})
        star_objs = sorted({node_obj[v] for v in (reg & rdiv.boundary)})
        if not members:
            continue
        if split_components:
            adj = _adjacency_on(inst, members)
            comp_seen = set()
            for start in members:
                if start in comp_seen:
                    continue
                comp = {start}
                comp_seen.add(start)
                queue = deque([start])
                while queue:
                    u = queue.popleft()
                    for v in adj[u]:
                        if v not in comp_seen:
                            comp_seen.add(v)
                            comp.add(v)
                            queue.append(v)
                key = tuple(sorted(comp))
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                clusters.append(key)
                centers.append(tuple(sorted(set(star_objs) & comp)))
        else:
            key = tuple(members)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            clusters.append(key)
            centers.append(tuple(star_objs))

    order = sorted(range(len(clusters)), key=lambda i: clusters[i])
    clusters = [clusters[i] for i in order]
    centers = [centers[i] for i in order]
    return StarClustering(
        r, clusters, centers, aug.n, len(rdiv.regions), sorted(boundary_sizes)
    )


def _stacking_connected(stacking: Stacking) -> bool:
    """The intersection graph is connected iff the union is, which is the
    cell dual being connected (plus every object touching the union)."""
    dual = stacking.cells.cell_dual()
    if dual.n == 0:
        return stacking.inst.n == 0
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in dual.simple_neighbors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == dual.n


@dataclass
class ClusteringReport:
    ok: bool
    failures: list


def verify_star_clustering(inst: Instance, sc: StarClustering, r: int) -> ClusteringReport:
    """Brute-force check of the clustering properties with witnesses."""
    from . import reference

    g = reference.explicit_graph(inst)
    failures = []
    covered = set()
    for c in sc.clusters:
        covered.update(c)
    if covered != set(range(inst.n)):
        failures.append(("cover", sorted(set(range(inst.n)) - covered)))
    for ci, cluster in enumerate(sc.clusters):
        members = set(cluster)
        cents = set(sc.centers[ci])
        if len(members) > r:
            failures.append(("size", (ci, len(members))))
        if not cents:
            failures.append(("no-star-center", ci))
        if not cents <= members:
            failures.append(("center-outside-cluster", ci))
        # connectivity of the induced subgraph
        if members:
            start = next(iter(members))
            seen = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in g.adjacency[u]:
                    if v in members and v not in seen:
                        seen.add(v)
                        queue.append(v)
            if seen != members:
                failures.append(("not-connected", ci))
        # property 3
        star_union = set()
        for s in cents:
            star_union.add(s)
            star_union.update(g.adjacency[s])
        interior = members - (members & star_union)
        for v in range(inst.n):
            if v in members:
                continue
            hits_interior = any(u in interior for u in g.adjacency[v])
            if hits_interior and not any(u in cents for u in g.adjacency[v]):
                failures.append(("boundary-property", (v, ci)))
    return ClusteringReport(not failures, failures)
