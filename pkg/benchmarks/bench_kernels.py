"""Compiled vs pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--sizes 10 20 40] [--repeat 5]

Times ``rref_int`` and ``rref_modp`` on seeded random integer matrices,
then one end-to-end workload (full faithfulness over SQ1) in a fresh
interpreter per backend.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from milnor_descent.linalg import _kernels_py

try:
    from milnor_descent.linalg import _kernels as compiled
except ImportError:
    compiled = None

END_TO_END = """
import time
from milnor_descent.algebra import sq1_square
from milnor_descent.descent import Descent
from milnor_descent.linalg import BACKEND
from milnor_descent.samples import object_set
sq = sq1_square()
t = time.perf_counter()
assert Descent(sq).verify_fully_faithful(object_set(sq), (-3, 3)).ok
print(BACKEND, time.perf_counter() - t)
"""


def matrices(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-9, 10, size=(n, n))
    # rank-deficient half so pivoting and zero rows both occur
    a[n // 2:] = a[: n - n // 2] * 2 - a[n // 2 - 1]
    return [[int(x) for x in row] for row in a]


def bench(fn, rows, n, repeat, *extra):
    t = timeit.repeat(lambda: fn([r[:] for r in rows], n, *extra), number=1, repeat=repeat)
    return min(t)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels not built; only the pure backend is timed")
    print(f"{'kernel':<10}{'n':>5}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>9}")
    for n in args.sizes:
        rows = matrices(n, n)
        for name, extra in (("rref_int", ()), ("rref_modp", (10007,))):
            tp = bench(getattr(_kernels_py, name), rows, n, args.repeat, *extra)
            if compiled is not None:
                tc = bench(getattr(compiled, name), rows, n, args.repeat, *extra)
                print(f"{name:<10}{n:>5}{tp * 1e3:>12.2f}{tc * 1e3:>15.2f}{tp / tc:>9.1f}")
            else:
                print(f"{name:<10}{n:>5}{tp * 1e3:>12.2f}{'-':>15}{'-':>9}")
    if args.skip_end_to_end:
        return
    print("\nend to end: full faithfulness over SQ1, 36 pairs, window -3..3")
    for pure in ("", "1"):
        env = dict(os.environ)
        env.pop("MILNOR_DESCENT_PURE", None)
        if pure:
            env["MILNOR_DESCENT_PURE"] = pure
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  backend {out[0]:<8} {float(out[1]):.2f}s")


if __name__ == "__main__":
    main()
