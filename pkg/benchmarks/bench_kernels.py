"""Time the numba and numpy kernel backends on worst-case (witness-free) inputs.

    python3 benchmarks/bench_kernels.py --sizes 12 16 20 --repeat 3
"""
from __future__ import annotations

import argparse
import time

from netgram import _kernels as K


def inputs(n: int) -> dict:
    """Inputs of width ``n`` on which every kernel has to scan all masks."""
    full = (1 << n) - 1
    return {
        "subset_cover": lambda use: K.proper_subset_covers(range(n), n, use=use),
        "horn": lambda use: K.horn_proper_subset([False] * n, [full] * n, [1], use=use),
        "rows": lambda use: K.scan_rows([0], [0, 1], [full], [0] * n, [0] * n, use=use),
        "part_count": lambda use: K.part_count_scan([], [], n, use=use),
    }


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if K.HAVE_NUMBA else [])
    for kernel in inputs(1).values():  # compile once outside the timings
        for use in backends:
            kernel(use)
    print(f"{'kernel':12s} {'width':>5s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for n in args.sizes:
        for name, kernel in inputs(n).items():
            secs = [best_of(lambda: kernel(use), args.repeat) for use in backends]
            ratio = f"{secs[0] / secs[1]:8.1f}x" if len(secs) == 2 and secs[1] > 0 else "       -"
            print(f"{name:12s} {n:5d} " + " ".join(f"{s * 1e3:8.2f}ms" for s in secs) + f"  {ratio}")


if __name__ == "__main__":
    main()
