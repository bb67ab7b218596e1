"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times raw sparse multiplication on random packed polynomials, then the
worked two-parameter example end to end with each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from ppvgroup._speedups import native, pure
from ppvgroup.algebra.poly import PolyRing


def random_dict(ring, rng, nterms, deg, coeff):
    out = {}
    for _ in range(nterms):
        exps = [rng.randint(0, deg) for _ in range(ring.nvars)]
        c = rng.randint(-coeff, coeff)
        if c:
            k = ring.pack(exps)
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def time_mul(mod, pairs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for a, b in pairs:
            mod.mul(a, b)
        best = min(best, time.perf_counter() - t)
    return best


def time_pipeline(pure_backend, repeat):
    # best of several runs in a fresh interpreter, after one warm-up run
    env = dict(os.environ, PPVGROUP_PURE="1" if pure_backend else "0")
    code = ("import time; from ppvgroup.catalog import example; from ppvgroup.io.report import load_input;"
            "from ppvgroup.engine.pipeline import run_pipeline; f,a1,a0,o=load_input(example('two-param'));"
            "run_pipeline(a1,a0,o); ts=[]\n"
            f"for _ in range({repeat}):\n"
            "    t=time.perf_counter(); run_pipeline(a1,a0,o); ts.append(time.perf_counter()-t)\n"
            "print(min(ts))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if native is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    ring = PolyRing(3)
    print(f"{'terms':>6} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    for nterms in (10, 40, 160):
        pairs = [(random_dict(ring, rng, nterms, 8, 1000), random_dict(ring, rng, nterms, 8, 1000))
                 for _ in range(50)]
        for a, b in pairs:
            assert native.mul(a, b) == pure.mul(a, b)
        tp = time_mul(pure, pairs, args.repeat)
        tc = time_mul(native, pairs, args.repeat)
        print(f"{nterms:>6} {tp:>11.4f} {tc:>11.4f} {tp / tc:>8.2f}")
    tp, tc = time_pipeline(True, args.repeat), time_pipeline(False, args.repeat)
    print(f"worked example pipeline: python {tp:.3f}s, cython {tc:.3f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
