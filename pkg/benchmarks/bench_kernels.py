"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--radius 5] [--repeat 3]

Times the exhaustive Heisenberg box scan and the noise hash over a batch of
element encodings, checks both backends agree, and prints the speedups.
"""

from __future__ import annotations

import argparse
import sys
import timeit

from jensen_lab import _pykernels
from jensen_lab.groups import Heisenberg, WordSampler

try:
    from jensen_lab import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=5)
    ap.add_argument("--encodings", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    H = Heisenberg()
    encs = [H.encode(x) for x in WordSampler(H, seed=1, max_length=16).elements(args.encodings)]

    def scan(impl):
        return lambda: impl.heisenberg_box_scan(args.radius, 0, 0, 1, -2)

    def noise(impl):
        return lambda: [impl.noise_values(e, 42, 2, 1.0) for e in encs]

    assert scan(_pykernels)() == scan(_ckernels)()
    assert noise(_pykernels)() == noise(_ckernels)()

    n_pairs = (2 * args.radius + 1) ** 6
    rows = [
        (f"box scan R={args.radius} ({n_pairs} pairs)", scan),
        (f"noise hash ({len(encs)} encodings, dim 2)", noise),
    ]
    print(f"{'kernel':<40} {'python s':>10} {'cython s':>10} {'speedup':>9}")
    for label, make in rows:
        tp = best_of(make(_pykernels), args.repeat)
        tc = best_of(make(_ckernels), args.repeat)
        print(f"{label:<40} {tp:>10.4f} {tc:>10.4f} {tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
