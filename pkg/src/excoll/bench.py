"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run as ``python -m excoll.bench``.  Reports wall time per kernel on a
representative workload; the same workloads double as an agreement check, so
a silent divergence between the two backends would show up here too.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels
from .fan import build_fan


def _time(fn, *args, repeat: int = 3) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5, help="ambient dimension")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    if "numba" not in _kernels.BACKENDS:
        print("numba is not importable; only the numpy backend is available")
        return 1

    n = args.n
    fan = build_fan(n)
    rays = np.array(fan.rays, dtype=np.int64)

    span = np.arange(-8, 9, dtype=np.int64)
    window = np.stack(
        np.meshgrid(span, span, span, indexing="ij"), axis=-1
    ).reshape(-1, 3)

    coeff = np.zeros(fan.n_rays, dtype=np.int64)
    coeff[2] = 5
    coeff[fan.n_rays - 2] = -5
    coeff[fan.n_rays - 1] = 5
    radius = 5 + n + 2

    jobs = [
        ("forbidden window (17^3 classes)", 0, (n, window)),
        ("presentation box scan", 1, (n, 5, -5, 5, radius)),
        ("character chamber scan", 2, (rays, coeff, radius)),
    ]

    print(f"n={n}, repeat={args.repeat}, active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<34} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, idx, jargs in jobs:
        fn_nb = _kernels.BACKENDS["numba"][idx]
        fn_np = _kernels.BACKENDS["numpy"][idx]
        fn_nb(*jargs)  # warm the JIT outside the timed region
        t_nb, r_nb = _time(fn_nb, *jargs, repeat=args.repeat)
        t_np, r_np = _time(fn_np, *jargs, repeat=args.repeat)
        if idx == 0:
            agree = bool((r_nb == r_np).all())
        elif idx == 1:
            agree = r_nb == r_np
        else:
            agree = set(r_nb) == set(r_np)
        flag = "" if agree else "  <-- BACKENDS DISAGREE"
        print(
            f"{label:<34} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms "
            f"{t_np / t_nb:>7.1f}x{flag}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
