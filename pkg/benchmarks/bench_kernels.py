"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from powermap import kernels
from powermap.arith import SpfSieve
from powermap.graph import build
from powermap.groups import GroupSpec, realize
from powermap.harness.scan import prime_power_orders


def workloads():
    rng = np.random.default_rng(7)
    rand = rng.integers(0, 200_000, size=200_000).astype(np.int64)
    sl2 = build(realize(GroupSpec.sl2(13)), 2).succ
    s7 = build(realize(GroupSpec.symmetric(7)), 3).succ
    x = 100_000
    spf = SpfSieve(x).spf
    ordpp = prime_power_orders(2, spf)
    return [
        ("decompose random map (2e5)", "decompose_succ", (rand,)),
        ("decompose SL2(13), a=2", "decompose_succ", (sl2,)),
        ("decompose S7, a=3", "decompose_succ", (s7,)),
        ("cyclic counts n<=1e5, a=2", "cyclic_counts", (1, x + 1, 2, spf, ordpp)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = kernels.backends()
    names = sorted(backends)
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn, fargs in workloads():
        best = {}
        for n in names:
            f = getattr(backends[n], fn)
            best[n] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat))
        row = f"{label:32s}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
