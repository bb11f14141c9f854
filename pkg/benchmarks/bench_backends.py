"""Timing comparison of the compiled and pure-numpy kernel backends.

Runs the branch-map kernel, the fidelity reduction, and the public
entry points that sit on top of them, once per available backend.

    python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

import teleportsim
from teleportsim import (ChannelKind, NoiseConfig, NoiseKind, NoiseSpec,
                         ProtocolParams, haar_average, kraus_ops,
                         optimize_angles, set_backend)
from teleportsim.average import _clear_caches  # reset between backends

CONFIG = NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 0.2),
                     alice=NoiseSpec(NoiseKind.DEPOLARIZING, 0.1),
                     bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5))
PARAMS = ProtocolParams(0.6, 0.8)


def time_call(fn, repeat: int) -> float:
    fn()  # warm caches and JIT-free paths alike
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(repeat: int) -> dict[str, float]:
    from teleportsim import _backend
    kernels = _backend.active()
    stacks = [np.ascontiguousarray(np.stack(kraus_ops(s)))
              for s in (CONFIG.input, CONFIG.alice, CONFIG.bob)]

    def superops_once():
        for _ in range(100):
            kernels.superops(0.6, 0.8, 0, *stacks)

    lams = np.ascontiguousarray(np.asarray(
        kernels.superops(0.6, 0.8, 0, *stacks)))
    rng = np.random.default_rng(3)
    rhos = rng.normal(size=(128, 2, 2)) + 1j * rng.normal(size=(128, 2, 2))
    rhos = np.ascontiguousarray(rhos + rhos.conj().transpose(0, 2, 1))

    def fbar_once():
        for _ in range(100):
            kernels.fbar_nodes(lams, rhos)

    def average_once():
        _clear_caches()
        for _ in range(20):
            haar_average(PARAMS, CONFIG)
            _clear_caches()

    def optimize_once():
        _clear_caches()
        optimize_angles(CONFIG)

    return {
        "superops x100": time_call(superops_once, repeat),
        "fbar_nodes x100": time_call(fbar_once, repeat),
        "haar_average (cold) x20": time_call(average_once, repeat),
        "optimize_angles (cold)": time_call(optimize_once, repeat),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best-of (default 5)")
    args = parser.parse_args()

    backends = ["python"]
    if teleportsim.compiled_available():
        backends.insert(0, "compiled")
    else:
        print("compiled backend unavailable; timing the python backend only\n")

    results = {}
    for name in backends:
        set_backend(name)
        results[name] = bench_kernels(args.repeat)
    set_backend(backends[0])

    width = max(len(k) for k in next(iter(results.values())))
    header = f"{'benchmark':<{width}}  " + "  ".join(f"{b:>12}" for b in backends)
    print(header)
    print("-" * len(header))
    for key in next(iter(results.values())):
        cells = "  ".join(f"{results[b][key] * 1e3:>10.3f}ms" for b in backends)
        print(f"{key:<{width}}  {cells}")
    if len(backends) == 2:
        print()
        for key in next(iter(results.values())):
            ratio = results["python"][key] / results["compiled"][key]
            print(f"{key:<{width}}  speedup x{ratio:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
