"""Repeated-trial timing of the solver across arc-consistency algorithms."""
from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass, field

from acsudoku.consistency import AcAlgorithm
from acsudoku.solver import Heuristic, SearchConfig, solve
from acsudoku.sudoku import SudokuGrid

CSV_COLUMNS = ("algorithm", "puzzle", "trial", "seconds", "nodes", "backtracks", "revise_calls", "outcome")


@dataclass
class TrialRecord:
    algorithm: AcAlgorithm
    puzzle: str
    trial: int
    seconds: float
    nodes: int
    backtracks: int
    revise_calls: int
    outcome: str


@dataclass
class BenchRow:
    algorithm: AcAlgorithm
    puzzle: str
    trials: int
    mean_seconds: float
    per_trial: list[float]
    nodes: int
    backtracks: int
    revise_calls: int
    outcome: str


@dataclass
class BenchReport:
    records: list[TrialRecord] = field(default_factory=list)

    def rows(self) -> list[BenchRow]:
        """One summary row per (algorithm, puzzle), in first-seen order."""
        groups: dict[tuple[AcAlgorithm, str], list[TrialRecord]] = {}
        for rec in self.records:
            groups.setdefault((rec.algorithm, rec.puzzle), []).append(rec)
        out = []
        for (alg, puzzle), recs in groups.items():
            secs = [r.seconds for r in recs]
            outcomes = {r.outcome for r in recs}
            last = recs[-1]
            out.append(BenchRow(
                alg, puzzle, len(recs), statistics.fmean(secs), secs,
                last.nodes, last.backtracks, last.revise_calls,
                outcomes.pop() if len(outcomes) == 1 else "mixed",
            ))
        return out

    def mean(self, alg: AcAlgorithm, puzzle: str) -> float:
        for row in self.rows():
            if row.algorithm is alg and row.puzzle == puzzle:
                return row.mean_seconds
        raise KeyError((alg, puzzle))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow([r.algorithm.value, r.puzzle, r.trial, f"{r.seconds:.6f}", r.nodes,
                        r.backtracks, r.revise_calls, r.outcome])
        return buf.getvalue()

    def to_table(self) -> str:
        header = ("algorithm", "puzzle", "trials", "mean s", "per-trial s", "nodes", "backtracks",
                  "revise calls", "outcome")
        body = [
            (r.algorithm.label, r.puzzle, str(r.trials), f"{r.mean_seconds:.4f}",
             " ".join(f"{s:.4f}" for s in r.per_trial), str(r.nodes), str(r.backtracks),
             str(r.revise_calls), r.outcome)
            for r in self.rows()
        ]
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        fmt = lambda row: "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        lines = [fmt(header), fmt(tuple("-" * w for w in widths))]
        lines.extend(fmt(row) for row in body)
        return "\n".join(lines) + "\n"


def run_bench(
    puzzles: list[tuple[str, SudokuGrid]],
    algorithms: list[AcAlgorithm],
    trials: int = 3,
    warmup: int = 0,
    heuristic: Heuristic = Heuristic.MRV,
    time_limit: float | None = None,
    node_limit: int | None = None,
    backend: str | None = None,
) -> BenchReport:
    """Solve every puzzle ``trials`` times per algorithm, sequentially.

    ``seconds`` covers the whole solve call (CSP construction, root
    propagation and search) and nothing else.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = BenchReport()
    for alg in algorithms:
        config = SearchConfig(alg, heuristic, node_limit, time_limit, backend)
        for name, grid in puzzles:
            for _ in range(warmup):
                solve(grid, config)
            for trial in range(1, trials + 1):
                t0 = time.perf_counter()
                res = solve(grid, config)
                elapsed = time.perf_counter() - t0
                report.records.append(TrialRecord(
                    alg, name, trial, elapsed, res.nodes, res.backtracks,
                    res.propagation.revise_calls, res.outcome.value,
                ))
    return report

