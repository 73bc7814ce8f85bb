"""Timing comparison of the pure-Python and compiled kernels.

Run as:  python3 benchmarks/bench_kernels.py [--size N] [--repeats R]
"""

import argparse
import statistics
import time

import numpy as np

from larspath import _kernels_py

try:
    from larspath import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def make_problems(size, rng):
    X = rng.standard_normal((4 * size, size))
    X -= X.mean(axis=0)
    X /= np.linalg.norm(X, axis=0)
    G = np.ascontiguousarray(X.T @ X)
    y = rng.standard_normal(4 * size)
    y -= y.mean()
    c = X.T @ y
    R = np.linalg.cholesky(G + 0.1 * np.eye(size)).T
    return G, c, np.ascontiguousarray(R)


def bench(module, G, c, R, repeats):
    m = G.shape[0]
    out = {}

    def run_cd():
        beta = np.zeros(m)
        module.cd_sweeps(beta, c.copy(), G, 0.2 * np.abs(c).max(), 1e-10, 10000)

    out["cd_sweeps"] = _time(run_cd, repeats)

    traj = np.empty((2000, m))

    def run_stagewise():
        module.stagewise_chunk(np.zeros(m), c.copy(), G, 1e-3, 2000, traj, 0)

    out["stagewise_chunk"] = _time(run_stagewise, repeats)

    def run_downdate():
        work = np.ascontiguousarray(np.delete(R, 0, axis=1))
        module.givens_downdate(work, 0)

    out["givens_downdate"] = _time(run_downdate, repeats)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    G, c, R = make_problems(args.size, rng)

    py = bench(_kernels_py, G, c, R, args.repeats)
    print(f"size={args.size}  repeats={args.repeats} (median)")
    print(f"{'kernel':<18}{'python':>12}{'compiled':>12}{'speedup':>10}")
    if _compiled is None:
        for name, t in py.items():
            print(f"{name:<18}{t * 1e3:>10.2f}ms{'-':>12}{'-':>10}")
        print("compiled extension not available")
        return
    cy = bench(_compiled, G, c, R, args.repeats)
    for name in py:
        ratio = py[name] / cy[name] if cy[name] > 0 else float("inf")
        print(
            f"{name:<18}{py[name] * 1e3:>10.2f}ms{cy[name] * 1e3:>10.2f}ms"
            f"{ratio:>9.1f}x"
        )


if __name__ == "__main__":
    main()
