"""9x9 Sudoku grids: text format, units, and the pairwise not-equal CSP."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

from acsudoku.csp import CspInstance, not_equal

SIZE = 9
CELLS = SIZE * SIZE
DIGITS = range(1, 10)


class MalformedInputError(ValueError):
    pass


class InvalidPuzzleError(ValueError):
    pass


@dataclass(frozen=True)
class SudokuGrid:
    """81 cells in row-major order; 0 is blank."""

    cells: tuple[int, ...]

    def __post_init__(self):
        cells = tuple(int(c) for c in self.cells)
        if len(cells) != CELLS:
            raise MalformedInputError(f"grid needs {CELLS} cells, got {len(cells)}")
        for i, c in enumerate(cells):
            if not 0 <= c <= 9:
                raise MalformedInputError(f"cell {i} holds {c}, expected 0..9")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def blank(cls) -> "SudokuGrid":
        return cls((0,) * CELLS)

    def __getitem__(self, idx: int) -> int:
        return self.cells[idx]

    def cell(self, row: int, col: int) -> int:
        return self.cells[row * SIZE + col]

    def clues(self) -> dict[int, int]:
        return {i: v for i, v in enumerate(self.cells) if v}

    def to_string(self) -> str:
        """Single-line 81-character form, blanks as '.'."""
        return "".join(str(c) if c else "." for c in self.cells)

    def __str__(self) -> str:
        return serialize_grid(self)


@dataclass(frozen=True)
class UnitIndex:
    kind: Literal["row", "column", "box"]
    ordinal: int
    members: tuple[int, ...]


def _build_units() -> tuple[UnitIndex, ...]:
    units = []
    for r in range(SIZE):
        units.append(UnitIndex("row", r, tuple(r * SIZE + c for c in range(SIZE))))
    for c in range(SIZE):
        units.append(UnitIndex("column", c, tuple(r * SIZE + c for r in range(SIZE))))
    for b in range(SIZE):
        r0, c0 = 3 * (b // 3), 3 * (b % 3)
        units.append(
            UnitIndex("box", b, tuple((r0 + dr) * SIZE + c0 + dc for dr in range(3) for dc in range(3)))
        )
    return tuple(units)


UNITS = _build_units()


def peers(cell: int) -> list[int]:
    """Cells sharing a row, column or box with ``cell``, ascending."""
    out = set()
    for u in UNITS:
        if cell in u.members:
            out.update(u.members)
    out.discard(cell)
    return sorted(out)


PEERS = tuple(tuple(peers(i)) for i in range(CELLS))


def parse_grid(text: str) -> SudokuGrid:
    """Parse 81 symbols from ``1-9``, ``0`` and ``.``; whitespace is ignored."""
    chars = [ch for ch in text if not ch.isspace()]
    if len(chars) != CELLS:
        raise MalformedInputError(f"expected {CELLS} cell characters, got length {len(chars)}")
    cells = []
    pos = 0
    for ch in text:
        if ch.isspace():
            continue
        if ch in ".0":
            cells.append(0)
        elif "1" <= ch <= "9":
            cells.append(int(ch))
        else:
            raise MalformedInputError(f"invalid character {ch!r} at position {pos}")
        pos += 1
    return SudokuGrid(tuple(cells))


def serialize_grid(grid: SudokuGrid) -> str:
    s = grid.to_string()
    return "\n".join(s[r * SIZE:(r + 1) * SIZE] for r in range(SIZE))


def read_puzzles(path: str | Path) -> list[tuple[str, SudokuGrid]]:
    """Read one puzzle (any layout) or several (one 81-character line each).

    Lines starting with ``#`` are ignored.  Multi-puzzle files name their
    entries ``<stem>#<n>`` counting from 1.
    """
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if not ln.lstrip().startswith("#")]
    body = "".join(ch for ln in lines for ch in ln if not ch.isspace())
    rows = ["".join(ln.split()) for ln in lines if ln.strip()]
    if len(rows) > 1 and all(len(row) == CELLS for row in rows):
        return [(f"{path.stem}#{k}", parse_grid(row)) for k, row in enumerate(rows, 1)]
    return [(path.stem, parse_grid(body))]


def duplicate_clues(grid: SudokuGrid) -> list[tuple[UnitIndex, int]]:
    """(unit, digit) for every digit appearing more than once in a unit."""
    bad = []
    for u in UNITS:
        seen = set()
        for i in u.members:
            v = grid.cells[i]
            if not v:
                continue
            if v in seen:
                bad.append((u, v))
            seen.add(v)
    return bad


def constrained_pairs() -> list[tuple[int, int]]:
    """Unordered pairs ``(i, j)``, ``i < j``, sharing at least one unit; 810 of them."""
    return [(i, j) for i in range(CELLS) for j in PEERS[i] if i < j]


def to_csp(grid: SudokuGrid) -> CspInstance:
    """All 81 cells become variables; clues start as singletons."""
    bad = duplicate_clues(grid)
    if bad:
        unit, digit = bad[0]
        raise InvalidPuzzleError(f"digit {digit} repeated in {unit.kind} {unit.ordinal}")
    domains = [(v,) if v else DIGITS for v in grid.cells]
    return CspInstance(domains, {pair: not_equal for pair in constrained_pairs()})


def grid_from_domains(domain_sets: Iterable[set[int]]) -> SudokuGrid:
    """Singleton domains become digits, everything else blank."""
    return SudokuGrid(tuple(next(iter(d)) if len(d) == 1 else 0 for d in domain_sets))


def is_solved(grid: SudokuGrid) -> bool:
    if 0 in grid.cells:
        return False
    want = set(DIGITS)
    return all({grid.cells[i] for i in u.members} == want for u in UNITS)
