"""Sudoku as a binary CSP, solved by MAC backtracking with AC-1 through AC-4."""
from acsudoku._backend import DEFAULT as BACKEND
from acsudoku.consistency import AcAlgorithm, PropagationStats, enforce
from acsudoku.csp import CspInstance, DomainStore, neighbors, revise
from acsudoku.solver import Heuristic, Outcome, SearchConfig, SearchResult, count_solutions, solve
from acsudoku.sudoku import SudokuGrid, is_solved, parse_grid, serialize_grid, to_csp

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AcAlgorithm",
    "CspInstance",
    "DomainStore",
    "Heuristic",
    "Outcome",
    "PropagationStats",
    "SearchConfig",
    "SearchResult",
    "SudokuGrid",
    "count_solutions",
    "enforce",
    "is_solved",
    "neighbors",
    "parse_grid",
    "revise",
    "serialize_grid",
    "solve",
    "to_csp",
]
