"""Time the numba and numpy backends of the two dense kernels.

    python benchmarks/bench_kernels.py [A3 B3 A4 ...] [--repeat N]

For each type the Bruhat table and both KL recursions (plain and twisted)
are run with each backend.  The first numba call is timed separately since
it includes JIT compilation (or a load from numba's on-disk cache).
The results of the two backends are compared before any timing is reported.
"""

import argparse
import time

import numpy as np

from heckecat import _kernels, build_group


def kl_inputs(g):
    n = g.order
    parent = np.zeros(n, dtype=np.int64)
    last = np.zeros(n, dtype=np.int64)
    for w in range(1, n):
        last[w] = g.words[w][-1] - 1
        parent[w] = g.rmul(w, g.words[w][-1])
    return g.right, g.length, parent, last


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(name, repeat):
    g = build_group(name)
    jobs = {
        "bruhat": lambda nb: _kernels.bruhat_table(g.left, g.length, g._first_left_descent, use_numba=nb),
        "kl": lambda nb: _kernels.kl_table(*kl_inputs(g), twisted=False, use_numba=nb)[0],
        "kl_twisted": lambda nb: _kernels.kl_table(*kl_inputs(g), twisted=True, use_numba=nb)[0],
    }
    rows = []
    for job, fn in jobs.items():
        t_np, ref = best_of(lambda: fn(False), repeat)
        if _kernels.HAVE_NUMBA:
            t0 = time.perf_counter()
            first = fn(True)
            t_first = time.perf_counter() - t0
            t_nb, out = best_of(lambda: fn(True), repeat)
            if not (np.array_equal(first, ref) and np.array_equal(out, ref)):
                raise SystemExit(f"{name} {job}: numba and numpy results differ")
        else:
            t_first = t_nb = float("nan")
        rows.append((name, g.order, job, t_np, t_first, t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A3", "B3", "A4", "B4"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"numba available: {_kernels.HAVE_NUMBA}")
    print(f"{'type':<5} {'|W|':>5} {'kernel':<11} {'numpy s':>9} {'numba 1st':>10} {'numba s':>9} {'speedup':>8}")
    for name in args.types:
        for t, n, job, t_np, t_first, t_nb in bench(name, args.repeat):
            speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
            print(f"{t:<5} {n:>5} {job:<11} {t_np:9.4f} {t_first:10.4f} {t_nb:9.4f} {speed:7.1f}x")


if __name__ == "__main__":
    main()
