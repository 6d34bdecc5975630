"""Built-in 16x16 bitmap font for the digits 1-9 ('#' is ink)."""
import numpy as np

GLYPH_SIZE = 16

_GLYPHS = {
    1: """
................
.......###......
.....#####......
...####.##......
...##...##......
........##......
........##......
........##......
........##......
........##......
........##......
........##......
........##......
........##......
...##########...
...##########...
""",
    2: """
................
....########....
...##......##...
..##........##..
............##..
............##..
...........##...
.........###....
.......###......
.....###........
....##..........
...##...........
..##............
..##............
..############..
..############..
""",
    3: """
................
..############..
..############..
...........##...
..........##....
.........##.....
........##......
.......######...
............##..
.............##.
.............##.
.............##.
..##........##..
...##......##...
....########....
................
""",
    4: """
................
..##......##....
..##......##....
..##......##....
..##......##....
..##......##....
..##......##....
..##############
..##############
..........##....
..........##....
..........##....
..........##....
..........##....
..........##....
................
""",
    5: """
................
..############..
..############..
..##............
..##............
..##............
..##............
..##########....
............##..
.............##.
.............##.
.............##.
............##..
..##########....
..########......
................
""",
    6: """
................
.........##.....
........##......
.......##.......
......##........
.....##.........
....##..........
...##.######....
..####......##..
..##.........##.
..##.........##.
..##.........##.
...##.......##..
....#########...
......#####.....
................
""",
    7: """
................
..############..
..############..
...........##...
..........##....
..........##....
.........##.....
.........##.....
........##......
........##......
.......##.......
.......##.......
......##........
......##........
......##........
................
""",
    8: """
................
.....######.....
....##....##....
....##....##....
....##....##....
.....######.....
.....######.....
...##......##...
..##........##..
..##........##..
..##........##..
..##........##..
...##......##...
....########....
.....######.....
................
""",
    9: """
................
....########....
...##......##...
..##........##..
..##........##..
..##........##..
...##......###..
....########.##.
.............##.
............##..
...........##...
..........##....
.........##.....
........##......
.......##.......
................
""",
}


def _parse(art: str) -> np.ndarray:
    rows = art.strip().splitlines()
    bits = np.array([[ch == "#" for ch in row] for row in rows], dtype=bool)
    if bits.shape != (GLYPH_SIZE, GLYPH_SIZE):
        raise ValueError(f"glyph table row is malformed: shape {bits.shape}")
    return bits


GLYPHS = {digit: _parse(art) for digit, art in _GLYPHS.items()}


def glyph(digit: int) -> np.ndarray:
    """Copy of the ink mask for ``digit``."""
    return GLYPHS[digit].copy()
