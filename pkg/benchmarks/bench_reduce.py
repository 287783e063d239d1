"""Time q-reduction with the numba kernel against the numpy fallback.

    python3 benchmarks/bench_reduce.py --repeats 200

Graphs are unit-length chains of genus g, subdivided k times; configurations
are random with a fixed seed, so both kernels see identical work.
"""
import argparse
import time
from fractions import Fraction as F

import numpy as np

from bnchain import _kernels, oracle
from bnchain.chain import Cycle, MetricChain


def chain(g):
    return MetricChain(tuple(Cycle(F(1), F(2)) for _ in range(g)), (F(1),) * (g - 1))


def time_kernel(kernel, G, configs):
    dist = G.distances(G.base)
    t0 = time.perf_counter()
    for c in configs:
        kernel(G.adj, G.lap, dist, c, G.base)
    return (time.perf_counter() - t0) / len(configs)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=200, help="configurations per graph")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--genera", type=int, nargs="+", default=[2, 3, 4, 6])
    parser.add_argument("--subdivide", type=int, nargs="+", default=[1, 3])
    args = parser.parse_args()

    if _kernels.reduce_numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(args.seed)
    warm = oracle.build_graph(chain(2))
    _kernels.reduce_numba(warm.adj, warm.lap, warm.distances(warm.base), np.zeros(warm.n, dtype=np.int64), warm.base)

    print(f"{'g':>3} {'k':>3} {'n':>5} {'numpy us':>10} {'numba us':>10} {'speedup':>8}")
    for g in args.genera:
        for k in args.subdivide:
            G = oracle.build_graph(chain(g), subdivide=k)
            configs = [rng.integers(-3, 4, size=G.n).astype(np.int64) for _ in range(args.repeats)]
            expected = [_kernels.reduce_numpy(G.adj, G.lap, G.distances(G.base), c, G.base) for c in configs]
            got = [_kernels.reduce_numba(G.adj, G.lap, G.distances(G.base), c, G.base) for c in configs]
            assert all((a == b).all() for a, b in zip(expected, got)), "kernels disagree"
            t_np = time_kernel(_kernels.reduce_numpy, G, configs)
            t_nb = time_kernel(_kernels.reduce_numba, G, configs)
            print(f"{g:>3} {k:>3} {G.n:>5} {t_np * 1e6:>10.1f} {t_nb * 1e6:>10.1f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
