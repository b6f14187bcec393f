"""Compare the numba and pure-numpy population kernels.

Usage: python benchmarks/bench_population.py [--agents N] [--repeats R]

Both backends consume identical pre-drawn uniforms, so besides timing this
also asserts their outputs are bit-identical.
"""

import argparse
import time

import numpy as np

from qopinion import kernels


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    uniforms = rng.random((n, 5))
    cum = np.array([0.4, 0.85, 1.0])
    p_a1 = np.array([0.2, 0.9, 0.55])
    p_b1 = np.array([0.5, 0.6, 0.1])
    cond = np.array([0.1, 0.9, 0.15, 0.95])
    return uniforms, cum, p_a1, p_b1, cond


def _time(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--agents", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    inputs = _inputs(args.agents)
    print(f"agents: {args.agents}, repeats: {args.repeats} (best-of timing)")

    t_numpy, out_numpy = _time(kernels._simulate_answers_py, inputs, args.repeats)
    rate = args.agents / t_numpy / 1e6
    print(f"numpy backend: {t_numpy * 1e3:8.2f} ms  ({rate:7.1f} M agents/s)")

    if kernels.NUMBA_DISABLED:
        print("numba backend: unavailable (disabled or not installed)")
        return

    jitted = kernels.simulate_answers
    jitted(*_inputs(1000))  # trigger compilation outside the timed region
    t_numba, out_numba = _time(jitted, inputs, args.repeats)
    rate = args.agents / t_numba / 1e6
    print(f"numba backend: {t_numba * 1e3:8.2f} ms  ({rate:7.1f} M agents/s)")
    print(f"speedup: {t_numpy / t_numba:.2f}x")

    assert np.array_equal(out_numpy, out_numba), "backends diverged"
    print("outputs bit-identical: yes")


if __name__ == "__main__":
    main()
