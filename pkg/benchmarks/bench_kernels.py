"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends run in one process: the jitted kernels come from
``mixedsearch._kernels`` and the fallbacks from ``NUMPY_IMPLEMENTATIONS``.
Each result is checked for equality before timings are reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from mixedsearch import _kernels
from mixedsearch.bramble import connected_sets
from mixedsearch.corpus import graphs
from mixedsearch.graph import complete_graph
from mixedsearch.oracle import move_table


def best_of(repeat, f, *args):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = f(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def cases():
    g = graphs()
    return [("c6", g["c6"]), ("sun3", g["sun3"]), ("k4", g["k4"]), ("k5", complete_graph(5))]


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not _kernels.NUMBA_ENABLED:
        raise SystemExit("numba is disabled (MIXEDSEARCH_DISABLE_NUMBA); nothing to compare")
    fallback = _kernels.NUMPY_IMPLEMENTATIONS
    rows = []
    for name, g in cases():
        inc, eu, ev = _kernels.graph_arrays(g)
        table = move_table(g)
        src, dst, fsp, clr = table.upto(3)
        masks = np.array([g.vmask(b) for b in connected_sets(g)], dtype=np.int64)
        jobs = [
            ("fsp_table", _kernels.fsp_table, fallback["fsp_table"],
             (inc, eu, ev, g.m, table.src, table.dst, False, True)),
            ("avms_fixpoint", _kernels.avms_fixpoint, fallback["avms_fixpoint"], (src, dst, fsp, 1 << g.n)),
            ("min_cover", _kernels.min_cover, fallback["min_cover"], (masks, g.n)),
        ]
        if g.m <= 10:
            jobs.append(("mavms_fixpoint", _kernels.mavms_fixpoint, fallback["mavms_fixpoint"],
                         (src, dst, clr, fsp, 1 << g.n, g.m)))
        for kernel, fast, slow, call in jobs:
            fast(*call)  # compile outside the timing
            t_fast, a = best_of(args.repeat, fast, *call)
            t_slow, b = best_of(args.repeat, slow, *call)
            if not np.array_equal(np.asarray(a), np.asarray(b)):
                raise SystemExit(f"{kernel} on {name}: backends disagree")
            rows.append((name, kernel, t_fast, t_slow))
    print(f"{'graph':<6} {'kernel':<15} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, kernel, t_fast, t_slow in rows:
        print(f"{name:<6} {kernel:<15} {t_fast * 1e3:>10.2f} {t_slow * 1e3:>10.2f} {t_slow / max(t_fast, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
