"""Command-line surface: generation, runs, verification, benchmarks.

Exit codes: 0 success, 1 verification failure, 2 invalid input or
degenerate geometry.  All commands are deterministic for fixed seeds.
The UNIONPATH_THREADS environment variable caps bench parallelism.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from typing import Optional

from . import reference
from .diameter import (
    approx_diameter,
    build_distance_oracle,
    oracle_from_json,
    oracle_query,
    oracle_to_json,
)
from .clustering import star_clustering, verify_star_clustering
from .errors import UnionPathError
from .geometry import (
    GeneratorSpec,
    generate_instance,
    load_instance,
    save_instance,
)
from .sssp import INF, SsspEngine, dist_to_json
from .stacking import build_simplified_with_conflicts, build_stacking

BENCH_SUITES = ("stacking-scaling", "sssp-scaling", "clustering-stats", "diameter-error")


# ---------------------------------------------------------------------------
# verification helpers (also exercised by mutation tests)


def verify_sssp_result(inst, src: int, dist: list) -> bool:
    want = reference.bfs(reference.explicit_graph(inst), src)
    return list(dist) == list(want)


def verify_diameter_result(inst, value: int) -> bool:
    exact = reference.exact_diameter(reference.explicit_graph(inst))
    return exact <= value <= exact + 2


def verify_oracle_answer(inst, u: int, v: int, value: int) -> bool:
    d = reference.bfs(reference.explicit_graph(inst), u)[v]
    if d == INF:
        return False
    return d <= value <= d + 2


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    spec = GeneratorSpec(
        preset=args.preset,
        k=args.k,
        family=args.family,
        n=args.n,
        seed=args.seed,
        connected=args.connected,
        box=args.box,
        radius=(args.radius_min, args.radius_max),
        name=args.name,
    )
    inst = generate_instance(spec)
    save_instance(inst, args.out)
    print(f"wrote {args.out}: {inst.family}, n={inst.n}")
    return 0


def cmd_sssp(args) -> int:
    inst = load_instance(args.instance)
    engine = SsspEngine(inst, args.seed)
    dist = engine.run(args.source)
    payload = dist_to_json(args.source, dist)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.verify and not verify_sssp_result(inst, args.source, dist):
        print("verification failed: distances differ from the reference BFS", file=sys.stderr)
        return 1
    return 0


def cmd_diameter(args) -> int:
    inst = load_instance(args.instance)
    value = approx_diameter(inst, args.r, args.seed)
    payload = json.dumps({"schema": 1, "diameter": value, "r": args.r}, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.verify and not verify_diameter_result(inst, value):
        print("verification failed: estimate outside [exact, exact+2]", file=sys.stderr)
        return 1
    return 0


def cmd_cluster(args) -> int:
    inst = load_instance(args.instance)
    sc = star_clustering(inst, args.r, args.seed, split_components=not args.no_split)
    payload = sc.dump()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.verify:
        report = verify_star_clustering(inst, sc, args.r)
        if not report.ok:
            print(f"verification failed: {report.failures[:3]}", file=sys.stderr)
            return 1
    return 0


def cmd_oracle_build(args) -> int:
    inst = load_instance(args.instance)
    orc = build_distance_oracle(inst, args.r, args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(oracle_to_json(orc))
    print(f"wrote {args.out}: n={orc.n}, r={orc.r}, cells={orc.storage_cells()}")
    return 0


def cmd_oracle_query(args) -> int:
    with open(args.oracle, "r", encoding="utf-8") as fh:
        orc = oracle_from_json(fh.read())
    value = oracle_query(orc, args.u, args.v)
    print(json.dumps({"schema": 1, "u": args.u, "v": args.v, "distance": value}, sort_keys=True))
    if args.verify:
        if not args.instance:
            print("--verify needs --instance", file=sys.stderr)
            return 2
        inst = load_instance(args.instance)
        if not verify_oracle_answer(inst, args.u, args.v, value):
            print("verification failed: answer outside [d, d+2]", file=sys.stderr)
            return 1
    return 0


# ---------------------------------------------------------------------------
# bench suites


def _bench_stacking(task):
    n, seed = task
    spec = GeneratorSpec(family="disks", n=n, seed=seed)
    inst = generate_instance(spec)
    t0 = time.perf_counter()
    st = build_stacking(inst, seed)
    t_build = time.perf_counter() - t0
    t0 = time.perf_counter()
    simp = build_simplified_with_conflicts(inst, seed)
    t_conf = time.perf_counter() - t0
    total_conf = sum(len(c) for c in simp.conflicts)
    return [
        (n, seed, "stacking_faces", st.n_faces, t_build),
        (n, seed, "simplified_faces", simp.n_faces, t_conf),
        (n, seed, "conflict_total", total_conf, t_conf),
    ]


def _bench_sssp(task):
    n, seed = task
    spec = GeneratorSpec(family="disks", n=n, seed=seed)
    inst = generate_instance(spec)
    src = _largest_component_source(inst)
    t0 = time.perf_counter()
    engine = SsspEngine(inst, seed)
    dist = engine.run(src)
    wall = time.perf_counter() - t0
    reach = sum(1 for d in dist if d != INF)
    return [
        (n, seed, "sssp_wall", wall, wall),
        (n, seed, "reachable", reach, wall),
    ]


def _largest_component_source(inst) -> int:
    """Smallest id inside the largest component (grid-accelerated)."""
    from .geometry import _NeighborGrid

    if inst.n <= 1:
        return 0
    adj = _NeighborGrid(inst).adjacency() if inst.family == "disks" else None
    if adj is None:
        adj = reference.explicit_graph(inst).adjacency
    seen = [False] * inst.n
    best = (0, 0)
    for start in range(inst.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        k = 0
        while k < len(comp):
            u = comp[k]
            k += 1
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
        if len(comp) > best[1]:
            best = (min(comp), len(comp))
    return best[0]


def _bench_clustering(task):
    n, seed = task
    spec = GeneratorSpec(family="disks", n=n, seed=seed, connected=True)
    inst = generate_instance(spec)
    r = max(2, math.ceil(n ** (1.0 / 7.0)))
    t0 = time.perf_counter()
    sc = star_clustering(inst, r, seed)
    wall = time.perf_counter() - t0
    return [
        (n, seed, "regions", sc.region_count, wall),
        (n, seed, "clusters", sc.size, wall),
        (n, seed, "dual_size", sc.dual_size, wall),
        (n, seed, "local_boundary", sc.local_boundary_complexity(), wall),
        (n, seed, "global_boundary", sc.global_boundary_complexity(), wall),
    ]


def _bench_diameter(task):
    n, seed = task
    spec = GeneratorSpec(family="disks", n=n, seed=seed, connected=True)
    inst = generate_instance(spec)
    t0 = time.perf_counter()
    approx = approx_diameter(inst, None, seed)
    wall = time.perf_counter() - t0
    exact = reference.exact_diameter(reference.explicit_graph(inst))
    return [
        (n, seed, "diameter_error", approx - exact, wall),
        (n, seed, "diameter_exact", exact, wall),
    ]


_BENCH_FUNCS = {
    "stacking-scaling": (_bench_stacking, [256, 512, 1024, 2048, 4096, 8192], 30),
    "sssp-scaling": (_bench_sssp, [256, 512, 1024, 2048, 4096, 8192], 30),
    "clustering-stats": (_bench_clustering, [64, 128, 256, 512], 10),
    "diameter-error": (_bench_diameter, [8, 12, 16, 24, 32, 48], 34),
}


def run_bench(suite: str, sizes=None, seeds=None, workers: Optional[int] = None):
    """Rows (n, seed, metric, value, wall_time_s) for one suite."""
    func, default_sizes, default_seeds = _BENCH_FUNCS[suite]
    sizes = sizes or default_sizes
    seeds = seeds if seeds is not None else default_seeds
    tasks = [(n, s) for n in sizes for s in range(seeds)]
    if workers is None:
        workers = int(os.environ.get("UNIONPATH_THREADS", "1"))
    rows = []
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(func, tasks):
                rows.extend(chunk)
    else:
        for task in tasks:
            rows.extend(func(task))
    return rows


def cmd_bench(args) -> int:
    if args.suite not in BENCH_SUITES:
        print(f"unknown suite {args.suite!r}; choose from {BENCH_SUITES}", file=sys.stderr)
        return 2
    sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else None
    rows = run_bench(args.suite, sizes, args.seeds)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "seed", "metric", "value", "wall_time_s"])
        for n, seed, metric, value, wall in rows:
            if value == INF:
                value = -1
            writer.writerow([n, seed, metric, value, f"{wall:.6f}"])
    print(f"wrote {args.out}: {len(rows)} rows")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unionpath",
        description="Shortest paths, clusterings, and almost-exact diameters "
        "on intersection graphs of planar objects",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--preset", choices=["chain", "pair", "nest", "iso", "triangle"])
    p.add_argument("--k", type=int, default=3, help="chain length")
    p.add_argument("--family", choices=["disks", "polygons"], default="disks")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--box", type=float)
    p.add_argument("--radius-min", type=float, default=0.5)
    p.add_argument("--radius-max", type=float, default=1.5)
    p.add_argument("--name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sssp", help="single-source hop distances")
    p.add_argument("--instance", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sssp)

    p = sub.add_parser("diameter", help="diameter up to +2")
    p.add_argument("--instance", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("cluster", help="star-based r-clustering")
    p.add_argument("--instance", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-split", action="store_true", help="report regions, skip the component split")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("oracle", help="distance oracle")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    b = osub.add_parser("build")
    b.add_argument("--instance", required=True)
    b.add_argument("--r", type=int)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_oracle_build)
    q = osub.add_parser("query")
    q.add_argument("--oracle", required=True)
    q.add_argument("--u", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--verify", action="store_true")
    q.add_argument("--instance")
    q.set_defaults(func=cmd_oracle_query)

    p = sub.add_parser("bench", help="benchmark suites producing CSV")
    p.add_argument("--suite", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--sizes", help="comma-separated instance sizes")
    p.add_argument("--seeds", type=int, help="seeds per size")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnionPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
