#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  The first numba call
(compilation or cache load) is timed separately and excluded from the
per-call figures.
"""

import argparse
import time

import numpy as np

from entropy_cf._config import JACOBI_MAX_SWEEPS, JACOBI_TOL, RESCALE_LIMIT
from entropy_cf._kernels import get_kernels


def random_spd(rng, m):
    x = rng.normal(size=(m, m))
    return x @ x.T + m * np.eye(m)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_jacobi(backends, dims, repeat, rng):
    print("cyclic Jacobi (best of %d)" % repeat)
    print(f"{'dim':>6}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for m in dims:
        a = random_spd(rng, m)
        results = {}
        for b in backends:
            kern = get_kernels(b)["jacobi"]
            results[b] = best_of(lambda: kern(a, JACOBI_TOL, JACOBI_MAX_SWEEPS), repeat)
        w_np = np.sort(get_kernels("numpy")["jacobi"](a, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0])
        w_nb = np.sort(get_kernels(backends[-1])["jacobi"](a, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0])
        assert np.allclose(w_np, w_nb, rtol=1e-12, atol=0)
        row = f"{m:>6}" + "".join(f"{results[b] * 1e3:>12.3f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{results['numpy'] / results['numba']:>9.1f}x"
        print(row)


def bench_batch_cf(backends, sizes, depth, repeat, rng):
    print(f"\nbatched scalar continued fractions, depth {depth} (best of {repeat})")
    print(f"{'count':>8}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for count in sizes:
        lam = rng.uniform(0.2, 5.0, size=count)
        phi = (1 - lam) / (1 + lam)
        k = np.arange(1, depth + 1)
        b = -((k - 1) ** 2)[None, :] * (phi**2)[:, None]
        b[:, 0] = -2 * phi
        a = np.broadcast_to(2.0 * k - 1.0, (count, depth)).copy()
        head = np.zeros(count)
        results = {}
        for name in backends:
            kern = get_kernels(name)["batch_cf"]
            results[name] = best_of(lambda: kern(head, b, a, RESCALE_LIMIT), repeat)
        out = get_kernels(backends[-1])["batch_cf"](head, b, a, RESCALE_LIMIT)
        assert np.allclose(out[:, -1], np.log(lam), atol=1e-6)
        row = f"{count:>8}" + "".join(f"{results[n] * 1e3:>12.3f}ms" for n in backends)
        if len(backends) == 2:
            row += f"{results['numpy'] / results['numba']:>9.1f}x"
        print(row)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)

    backends = ["numpy"]
    try:
        nb = get_kernels("numba")
    except ImportError:
        print("numba not installed; timing the numpy kernels only\n")
    else:
        start = time.perf_counter()
        nb["jacobi"](np.eye(2), JACOBI_TOL, JACOBI_MAX_SWEEPS)
        nb["batch_cf"](np.zeros(1), np.ones((1, 1)), np.ones((1, 1)), RESCALE_LIMIT)
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - start:.2f}s\n")
        backends.append("numba")

    bench_jacobi(backends, (6, 50, 150), args.repeat, rng)
    bench_batch_cf(backends, (100, 10_000, 200_000), 40, args.repeat, rng)


if __name__ == "__main__":
    main()
