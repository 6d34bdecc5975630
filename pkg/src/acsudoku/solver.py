"""Backtracking search with maintained arc consistency (MAC)."""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

from acsudoku.consistency import AcAlgorithm, PropagationStats, enforce
from acsudoku.csp import CspInstance, iter_bits
from acsudoku.sudoku import SudokuGrid, grid_from_domains, is_solved, to_csp


class Heuristic(enum.Enum):
    MRV = "mrv"
    FIRST = "first"


class Outcome(enum.Enum):
    SOLVED = "solved"
    UNSATISFIABLE = "unsatisfiable"
    LIMIT_EXCEEDED = "limit_exceeded"


@dataclass(frozen=True)
class SearchConfig:
    algorithm: AcAlgorithm = AcAlgorithm.AC3
    heuristic: Heuristic = Heuristic.MRV
    node_limit: int | None = None
    time_limit: float | None = None
    backend: str | None = None

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class SearchResult:
    outcome: Outcome
    grid: SudokuGrid | None = None
    nodes: int = 0
    backtracks: int = 0
    wall_time: float = 0.0
    propagation: PropagationStats = field(default_factory=PropagationStats)

    @property
    def solved(self) -> bool:
        return self.outcome is Outcome.SOLVED


class _LimitExceeded(Exception):
    pass


def select_variable_mrv(csp: CspInstance) -> int | None:
    """Unfixed variable with the smallest domain, lowest index on ties."""
    best = None
    best_size = 0
    for v, m in enumerate(csp.domains.masks):
        size = m.bit_count()
        if size >= 2 and (best is None or size < best_size):
            best, best_size = v, size
            if size == 2:
                break
    return best


def select_variable_first(csp: CspInstance) -> int | None:
    for v, m in enumerate(csp.domains.masks):
        if m & (m - 1):
            return v
    return None


_SELECTORS: dict[Heuristic, Callable[[CspInstance], int | None]] = {
    Heuristic.MRV: select_variable_mrv,
    Heuristic.FIRST: select_variable_first,
}


class _Search:
    def __init__(self, csp: CspInstance, config: SearchConfig, on_solution: Callable[[CspInstance], bool]):
        self.csp = csp
        self.config = config
        self.select = _SELECTORS[config.heuristic]
        self.on_solution = on_solution
        self.stats = PropagationStats()
        self.nodes = 0
        self.backtracks = 0
        self.deadline = None

    def propagate(self) -> bool:
        res = enforce(self.csp, self.config.algorithm, self.config.backend, settle=False)
        self.stats += res.stats
        return res.consistent

    def check_limits(self) -> None:
        limit = self.config.node_limit
        if limit is not None and self.nodes >= limit:
            raise _LimitExceeded
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise _LimitExceeded

    def descend(self) -> bool:
        """Returns True once ``on_solution`` asks to stop."""
        var = self.select(self.csp)
        if var is None:
            return self.on_solution(self.csp)
        store = self.csp.domains
        for value in list(iter_bits(store.masks[var])):
            self.check_limits()
            self.nodes += 1
            token = store.snapshot()
            store.assign(var, value)
            if self.propagate() and self.descend():
                store.restore(token)
                return True
            store.restore(token)
            self.backtracks += 1
        return False

    def run(self) -> Outcome:
        """Search to exhaustion or until ``on_solution`` stops it.

        SOLVED here only means the search finished without hitting a limit;
        callers decide from their own solution record.
        """
        if self.config.time_limit is not None:
            self.deadline = time.perf_counter() + self.config.time_limit
        store = self.csp.domains
        root = store.snapshot()
        if not self.propagate():
            store.restore(root)
            return Outcome.UNSATISFIABLE
        store.discard(root)
        # the post-propagation root state survives; everything below is undone
        base = store.snapshot()
        try:
            self.descend()
        except _LimitExceeded:
            return Outcome.LIMIT_EXCEEDED
        finally:
            store.restore(base)
        return Outcome.SOLVED


def search(csp: CspInstance, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Find the first solution of a Sudoku CSP.

    On return ``csp`` holds its post-root-propagation domains (or the input
    domains if root propagation wiped out).
    """
    found: list[SudokuGrid] = []

    def take(c: CspInstance) -> bool:
        found.append(grid_from_domains(c.domains.as_sets()))
        return True

    t0 = time.perf_counter()
    s = _Search(csp, config, take)
    outcome = s.run()
    if outcome is Outcome.SOLVED and not found:
        outcome = Outcome.UNSATISFIABLE
    grid = found[0] if found else None
    if grid is not None and not is_solved(grid):
        raise AssertionError(f"search produced an invalid grid: {grid.to_string()}")
    return SearchResult(
        outcome,
        grid,
        nodes=s.nodes,
        backtracks=s.backtracks,
        wall_time=time.perf_counter() - t0,
        propagation=s.stats,
    )


def solve(grid: SudokuGrid, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Solve ``grid``; raises InvalidPuzzleError for duplicate clues."""
    return search(to_csp(grid), config)


def count_solutions(grid: SudokuGrid, cap: int, config: SearchConfig = SearchConfig()) -> int:
    """Number of distinct solutions, counting stops at ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    count = 0

    def take(c: CspInstance) -> bool:
        nonlocal count
        count += 1
        return count >= cap

    outcome = _Search(to_csp(grid), config, take).run()
    if outcome is Outcome.LIMIT_EXCEEDED:
        raise TimeoutError(f"search limit reached after {count} solutions")
    return count
