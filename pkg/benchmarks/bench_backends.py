"""Time the compiled replicate kernel against the numpy fallback.

    python3 benchmarks/bench_backends.py [--replicates R] [--repeat K]

Both kernels are run on the same logistic population and weights; the
script also confirms that their outputs agree bit for bit.
"""

import argparse
import time

import numpy as np

from lstat_edgeworth import _fallback
from lstat_edgeworth.population import simulate_logistic
from lstat_edgeworth.weights import weights_from_score

try:
    from lstat_edgeworth import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--replicates", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--N", type=int, default=100)
    ap.add_argument("--n", default="5,15,30")
    args = ap.parse_args()

    pop = simulate_logistic(args.N, 0)
    print(f"N={args.N} R={args.replicates} best of {args.repeat}")
    print(f"{'n':>4} {'numpy s':>10} {'cython s':>10} {'speedup':>8} identical")
    for n in (int(v) for v in args.n.split(",")):
        c = weights_from_score("center", n).c
        t_py, out_py = best_of(lambda: _fallback.lstat_replicates(pop.values, c, 0, 0, args.replicates), args.repeat)
        if _core is None:
            print(f"{n:>4} {t_py:>10.3f} {'n/a':>10} {'n/a':>8} n/a")
            continue
        t_cy, out_cy = best_of(lambda: _core.lstat_replicates(pop.values, c, 0, 0, args.replicates), args.repeat)
        same = np.array_equal(out_py, out_cy)
        print(f"{n:>4} {t_py:>10.3f} {t_cy:>10.3f} {t_py / t_cy:>8.1f} {same}")


if __name__ == "__main__":
    main()
