#!/usr/bin/env python3
"""Benchmark the compiled trial kernel against the numpy fallback.

Both kernels implement the same bit-exact derivation, so besides timing
them this also checks that their outcome counts agree.

    python3 benchmarks/bench_trials.py --trials 2000000 --mu 0.2,0.3,0.5
"""

import argparse
import time

import numpy as np

from contextprob import SimulationConfig, simulate
from contextprob import _trials_py

try:
    from contextprob import _trials
except ImportError:
    _trials = None


def time_kernel(kernel, mu, config, repeats):
    best = float("inf")
    report = None
    for _ in range(repeats):
        start = time.perf_counter()
        report = simulate(mu, config, kernel=kernel)
        best = min(best, time.perf_counter() - start)
    return best, report


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--streams", type=int, default=1)
    parser.add_argument("--mu", default="0.2,0.3,0.5", help="comma-separated probabilities")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    mu = np.asarray([float(x) for x in args.mu.split(",")])
    config = SimulationConfig(trials=args.trials, seed=args.seed, streams=args.streams)

    kernels = [("python (numpy)", _trials_py)]
    if _trials is not None:
        kernels.append(("cython", _trials))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"trials={args.trials}  n={mu.size}  seed={args.seed}  streams={args.streams}")
    print(f"{'kernel':<16} {'best time':>10} {'trials/s':>14}")
    results = {}
    for name, kernel in kernels:
        best, report = time_kernel(kernel, mu, config, args.repeats)
        results[name] = (best, report)
        print(f"{name:<16} {best:>9.3f}s {args.trials / best:>14,.0f}")

    if len(results) == 2:
        py_time, py_report = results["python (numpy)"]
        cy_time, cy_report = results["cython"]
        match = py_report.counts == cy_report.counts
        print(f"speedup: {py_time / cy_time:.1f}x   counts identical: {match}")
        if not match:
            raise SystemExit("kernel outputs disagree")


if __name__ == "__main__":
    main()
