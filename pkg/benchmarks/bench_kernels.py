"""Compare the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--states N] [--repeat R]
"""

import argparse
import time

import numpy as np

from tadgame import _kernels_py as py
from tadgame import sampling

try:
    from tadgame import _kernels as cy
except ImportError:
    cy = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(states):
    args = [(s.xT, s.yT, s.xA, s.yA, s.xD, s.yD, s.alpha) for s in states]

    def barrier(k):
        return lambda: [k.barrier_value(*a) for a in args]

    def aim(k):
        return lambda: [k.cdg_aim(*a) for a in args]

    def rollout(k):
        return lambda: [k.rollout(*a, k.A_OPTIMAL, 0.0, k.TEAM_OPTIMAL, 0.0, 0.0, 1e-2, 1e-2, 200)
                        for a in args[:10]]

    return {"barrier_value": barrier, "cdg_aim": aim, "rollout (10 x 200 steps)": rollout}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--states", type=int, default=500)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    states = sampling.random_rc_states(np.random.default_rng(0), args.states)
    print(f"{'kernel':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, make in workloads(states).items():
        tp = best_of(make(py), args.repeat)
        if cy is None:
            print(f"{name:28s} {tp * 1e3:12.2f} {'n/a':>12s} {'n/a':>8s}")
            continue
        tc = best_of(make(cy), args.repeat)
        print(f"{name:28s} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
