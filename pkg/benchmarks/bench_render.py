"""Time the attractor raster kernels: numba against the numpy fallback.

    python benchmarks/bench_render.py [--depth 8] [--size 400] [--repeat 3]

The numba kernel is compiled once before timing.  Both kernels are checked to
produce the same raster.
"""

import argparse
import os
import time
from fractions import Fraction

import numpy as np

from kneading import _kernels
from kneading.symbolic import BinarySeq
from kneading.unimodal import TentMap, tent_from_kneading


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--size", type=int, default=400)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    maps = {
        "tent:2": TentMap(2),
        "tent:9/5": TentMap(Fraction(9, 5)),
        "tent:(1001110)": tent_from_kneading(BinarySeq.parse("(1001110)")),
    }
    print(f"depth {args.depth}, {args.size}x{args.size}, best of {args.repeat}")
    print(f"{'map':<16}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name, m in maps.items():
        kargs = (float(m.t), float(m.a), float(m.b), float(m.c), float(m.fa), args.depth, args.size, args.size)
        t_np, ref = best_of(lambda: _kernels.raster_numpy(*kargs), args.repeat)
        os.environ.pop("KNEADING_DISABLE_NUMBA", None)
        if not _kernels.numba_enabled():
            print(f"{name:<16}{t_np:>10.3f}{'n/a':>10}{'':>9}")
            continue
        _kernels.raster(*kargs)  # compile
        t_nb, out = best_of(lambda: _kernels.raster(*kargs), args.repeat)
        assert np.array_equal(out, ref), name
        print(f"{name:<16}{t_np:>10.3f}{t_nb:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
