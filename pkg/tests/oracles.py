"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the propagation kernels or the morphology code; the
oracles work on plain Python sets, lists and nested loops.
"""
from __future__ import annotations

import random
from pathlib import Path

PUZZLES = Path(__file__).resolve().parent.parent / "puzzles"
CLASSIC = "530070000600195000098000060800060003400803001700020006060000280000419005000080079"
CLASSIC_SOLUTION = (
    "534678912672195348198342567859761423426853791713924856961537284287419635345286179"
)


# -- arc consistency --------------------------------------------------------

def closure_oracle(domains, allowed):
    """Revise every directed arc over and over until nothing changes.

    ``allowed[(x, y)]`` is a set of permitted ``(a, b)`` pairs; both
    orientations must be present.  Returns ``(consistent, domains)``.
    """
    doms = [set(d) for d in domains]
    changed = True
    while changed:
        changed = False
        for (x, y), pairs in allowed.items():
            keep = {a for a in doms[x] if any((a, b) in pairs for b in doms[y])}
            if keep != doms[x]:
                doms[x] = keep
                changed = True
    return all(doms), doms


def sudoku_allowed():
    """Directed not-equal pair sets for every Sudoku peer pair."""
    peers = sudoku_peers()
    ne = {(a, b) for a in range(1, 10) for b in range(1, 10) if a != b}
    return {(i, j): ne for i in range(81) for j in peers[i]}


def sudoku_peers():
    peers = []
    for i in range(81):
        r, c = divmod(i, 9)
        out = set()
        for j in range(81):
            rj, cj = divmod(j, 9)
            if j != i and (rj == r or cj == c or (rj // 3, cj // 3) == (r // 3, c // 3)):
                out.add(j)
        peers.append(sorted(out))
    return peers


# -- Sudoku search ----------------------------------------------------------

def _ok(cells, i, v):
    r, c = divmod(i, 9)
    for k in range(9):
        if cells[r * 9 + k] == v or cells[k * 9 + c] == v:
            return False
    br, bc = 3 * (r // 3), 3 * (c // 3)
    return all(cells[(br + dr) * 9 + bc + dc] != v for dr in range(3) for dc in range(3))


def dfs_solutions(puzzle: str, cap: int = 1, fewest_first: bool = False):
    """Plain depth-first search with legality checks only, digits ascending.

    Picks the first blank, or with ``fewest_first`` the blank with the fewest
    legal digits (needed for the harder corpus puzzles to finish quickly).
    """
    cells = [0 if ch in ".0" else int(ch) for ch in puzzle]
    rows = [set() for _ in range(9)]
    cols = [set() for _ in range(9)]
    boxes = [set() for _ in range(9)]
    where = [(i // 9, i % 9, (i // 27) * 3 + (i % 9) // 3) for i in range(81)]
    for i, v in enumerate(cells):
        if v:
            r, c, b = where[i]
            rows[r].add(v)
            cols[c].add(v)
            boxes[b].add(v)
    out = []

    def legal(i):
        r, c, b = where[i]
        used = rows[r] | cols[c] | boxes[b]
        return [v for v in range(1, 10) if v not in used]

    def go():
        blanks = [i for i, v in enumerate(cells) if not v]
        if not blanks:
            out.append("".join(map(str, cells)))
            return len(out) >= cap
        i = min(blanks, key=lambda b: len(legal(b))) if fewest_first else blanks[0]
        r, c, b = where[i]
        for v in legal(i):
            cells[i] = v
            rows[r].add(v), cols[c].add(v), boxes[b].add(v)
            if go():
                return True
            rows[r].discard(v), cols[c].discard(v), boxes[b].discard(v)
            cells[i] = 0
        return False

    go()
    return out


def is_valid_solution(s: str) -> bool:
    if len(s) != 81 or "0" in s or "." in s:
        return False
    units = [[r * 9 + c for c in range(9)] for r in range(9)]
    units += [[r * 9 + c for r in range(9)] for c in range(9)]
    units += [[(br + dr) * 9 + bc + dc for dr in range(3) for dc in range(3)]
              for br in (0, 3, 6) for bc in (0, 3, 6)]
    return all(sorted(s[i] for i in u) == list("123456789") for u in units)


# -- random Sudoku states ---------------------------------------------------

def shuffled_solution(rng: random.Random) -> list[int]:
    """A random valid completed grid, obtained by relabelling and permuting the classic solution."""
    digits = list(range(1, 10))
    rng.shuffle(digits)
    base = [digits[int(ch) - 1] for ch in CLASSIC_SOLUTION]
    bands = rng.sample(range(3), 3)
    rows = [3 * b + r for b in bands for r in rng.sample(range(3), 3)]
    stacks = rng.sample(range(3), 3)
    cols = [3 * s + c for s in stacks for c in rng.sample(range(3), 3)]
    grid = [base[rows[r] * 9 + cols[c]] for r in range(9) for c in range(9)]
    if rng.random() < 0.5:
        grid = [grid[c * 9 + r] for r in range(9) for c in range(9)]
    return grid


def random_state(rng: random.Random) -> list[int]:
    """A partially-assigned grid with no duplicate clues.

    Half the states are subsets of a valid solution; the others are built by
    dropping random non-conflicting digits, which often yields states whose
    closure wipes out.
    """
    if rng.random() < 0.5:
        sol = shuffled_solution(rng)
        keep = rng.uniform(0.1, 0.6)
        return [v if rng.random() < keep else 0 for v in sol]
    cells = [0] * 81
    for i in rng.sample(range(81), rng.randint(8, 40)):
        choices = [v for v in range(1, 10) if _ok(cells, i, v)]
        if choices:
            cells[i] = rng.choice(choices)
    return cells


# -- morphology -------------------------------------------------------------

def erode_oracle(bits, offsets, border=False):
    h, w = len(bits), len(bits[0])

    def px(r, c):
        return bits[r][c] if 0 <= r < h and 0 <= c < w else border

    return [[all(px(r + dr, c + dc) for dr, dc in offsets) for c in range(w)] for r in range(h)]


def dilate_oracle(bits, offsets, border=False):
    """Minkowski sum: pixel is set when some ``p - offset`` is set."""
    h, w = len(bits), len(bits[0])

    def px(r, c):
        return bits[r][c] if 0 <= r < h and 0 <= c < w else border

    return [[any(px(r - dr, c - dc) for dr, dc in offsets) for c in range(w)] for r in range(h)]
