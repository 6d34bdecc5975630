"""Time the pure-Python and compiled propagation kernels against each other.

Each (algorithm, puzzle) pair is solved with both backends; the script
checks that nodes, revise calls and the solution agree, then prints the
best-of-N wall time for each backend and the speed-up.

    python3 benchmarks/compare_backends.py puzzles/corpus.txt --trials 3
"""
from __future__ import annotations

import argparse
import sys
import time

from acsudoku import _backend
from acsudoku.consistency import AcAlgorithm
from acsudoku.solver import SearchConfig, solve
from acsudoku.sudoku import read_puzzles


def best_time(grid, config, trials):
    best, res = float("inf"), None
    for _ in range(trials):
        t0 = time.perf_counter()
        res = solve(grid, config)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("puzzles", nargs="+")
    p.add_argument("--ac", default="1,2,2paper,3,4", help="comma-separated algorithms")
    p.add_argument("--trials", type=int, default=3, help="best of N per backend")
    p.add_argument("--limit", type=int, help="only the first N puzzles")
    args = p.parse_args(argv)

    if "compiled" not in _backend.available():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    puzzles = [pz for path in args.puzzles for pz in read_puzzles(path)][: args.limit]
    algs = [AcAlgorithm.parse(a) for a in args.ac.split(",")]

    print(f"{'algorithm':<20}{'puzzle':<12}{'nodes':>7}{'pure s':>10}{'compiled s':>12}{'speed-up':>10}")
    for alg in algs:
        for name, grid in puzzles:
            tp, rp = best_time(grid, SearchConfig(alg, backend="pure"), args.trials)
            tc, rc = best_time(grid, SearchConfig(alg, backend="compiled"), args.trials)
            same = (rp.grid, rp.nodes, rp.propagation.revise_calls) == (rc.grid, rc.nodes, rc.propagation.revise_calls)
            if not same:
                print(f"backends disagree on {alg.label} / {name}", file=sys.stderr)
                return 2
            print(f"{alg.label:<20}{name:<12}{rc.nodes:>7}{tp:>10.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
