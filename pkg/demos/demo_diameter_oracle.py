#!/usr/bin/env python3
"""Estimate the diameter within +2 and query the compressed distance oracle."""

import math

from unionpath import reference
from unionpath.diameter import (
    approx_diameter,
    build_distance_oracle,
    oracle_query,
)
from unionpath.geometry import GeneratorSpec, generate_instance


def main():
    inst = generate_instance(
        GeneratorSpec(family="disks", n=48, seed=23, connected=True)
    )
    g = reference.explicit_graph(inst)
    exact = reference.exact_diameter(g)
    est = approx_diameter(inst, seed=1)
    print(f"instance of {inst.n} disks")
    print(f"exact diameter {exact}, estimate {est} (guaranteed within +2)")

    r = max(1, min(inst.n - 1, math.ceil(inst.n ** (2.0 / 13.0))))
    orc = build_distance_oracle(inst, r, seed=1)
    print(f"\noracle with r={r}: {orc.storage_cells()} storage cells")
    dists = [reference.bfs(g, u) for u in range(inst.n)]
    worst = 0
    for u in range(inst.n):
        for v in range(inst.n):
            worst = max(worst, oracle_query(orc, u, v) - dists[u][v])
    print(f"worst additive error over all {inst.n ** 2} ordered queries: {worst}")
    u, v = 0, inst.n - 1
    print(f"sample query ({u}, {v}): oracle {oracle_query(orc, u, v)}, exact {dists[u][v]}")


if __name__ == "__main__":
    main()
