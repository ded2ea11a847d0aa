#!/usr/bin/env python3
"""Build a star-based clustering and check its properties by brute force."""

import math

from unionpath.clustering import star_clustering, verify_star_clustering
from unionpath.geometry import GeneratorSpec, generate_instance


def main():
    inst = generate_instance(
        GeneratorSpec(family="disks", n=60, seed=11, connected=True)
    )
    r = math.isqrt(inst.n)
    sc = star_clustering(inst, r, seed=3)

    print(f"instance of {inst.n} disks, r = {r}")
    print(f"clusters: {sc.size}, augmented dual size: {sc.dual_size}")
    print(f"local boundary complexity:  {sc.local_boundary_complexity()} (O(sqrt(r)) regime)")
    print(f"global boundary complexity: {sc.global_boundary_complexity()}")
    for ci in range(min(5, sc.size)):
        print(f"  cluster {ci}: members {list(sc.clusters[ci])}, star centers {list(sc.centers[ci])}")
    if sc.size > 5:
        print(f"  ... and {sc.size - 5} more")

    report = verify_star_clustering(inst, sc, r)
    print(f"\nbrute-force property check: {'PASS' if report.ok else report.failures}")


if __name__ == "__main__":
    main()
