"""Compare the compiled and pure-Python traversal kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--R 14] [--repeat 3]

The workload is an anti-tree realization with a_r = (r+1)^2, which has dense
complete-bipartite layers and is the typical input for volume and metric
computations.
"""
import argparse
import time

import numpy as np

from heatgraph import _kernels_py
from heatgraph.metrics import sigma_path_metric
from heatgraph.symmetric import antitree_spec, realize_graph

try:
    from heatgraph import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--R", type=int, default=14)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    G = realize_graph(antitree_spec("(r+1)^2", args.R))
    indptr, indices, _ = G.csr
    lengths = np.asarray(sigma_path_metric(G).edge_lengths)
    print(f"anti-tree a_r=(r+1)^2, R={args.R}: {G.n} vertices, {G.num_edges} edges")

    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.append(("cython", _compiled))
    else:
        print("compiled kernels unavailable; timing the Python fallback only")

    tasks = {
        "bfs": lambda k: k.bfs_distances(indptr, indices, 0),
        "dijkstra": lambda k: k.dijkstra(indptr, indices, lengths, 0),
        "components": lambda k: k.component_labels(indptr, indices),
    }
    results = {}
    for name, task in tasks.items():
        for label, mod in backends:
            results[name, label] = best_of(lambda: task(mod), args.repeat)

    # both backends must agree before their timings mean anything
    if _compiled is not None:
        for name, task in tasks.items():
            a, b = task(_kernels_py), task(_compiled)
            assert np.array_equal(a, b), f"backends disagree on {name}"

    print(f"{'kernel':<12}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name in tasks:
        py = results[name, "python"]
        cy = results.get((name, "cython"))
        if cy is None:
            print(f"{name:<12}{py:>12.4f}{'-':>12}{'-':>10}")
        else:
            print(f"{name:<12}{py:>12.4f}{cy:>12.4f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
