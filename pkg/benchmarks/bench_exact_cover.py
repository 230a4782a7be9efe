"""Compiled vs pure-Python exact-cover kernel on empty-grid pentomino tilings.

    python benchmarks/bench_exact_cover.py [--max-cols 8] [--repeat 3]
"""
import argparse
import time

from cardzkp import exact_cover
from cardzkp.puzzles import FiveCellsPuzzle
from cardzkp.solver import fivecells_placements


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-cols", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if exact_cover.compiled_search is None:
        print("compiled kernel unavailable; build with `pip install -e . --no-build-isolation`")
    print(f"{'grid':>6} {'tilings':>10} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for n in range(5, args.max_cols + 1):
        puz = FiveCellsPuzzle(5, n, {})
        cells, placements = puz.rows * puz.cols, fivecells_placements(puz)
        t_py, (count_py, _) = best_time(lambda: exact_cover.py_search(cells, placements, None, False), args.repeat)
        if exact_cover.compiled_search is None:
            print(f"{'5x%d' % n:>6} {count_py:>10} {'-':>10} {t_py:>10.4f} {'-':>8}")
            continue
        t_cy, (count_cy, _) = best_time(lambda: exact_cover.compiled_search(cells, placements, None, False), args.repeat)
        if count_cy != count_py:
            raise SystemExit(f"backends disagree on 5x{n}: {count_cy} vs {count_py}")
        print(f"{'5x%d' % n:>6} {count_cy:>10} {t_cy:>10.4f} {t_py:>10.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
