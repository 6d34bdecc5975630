"""Binary-image operations for turning a grid picture into classifier inputs.

Images are numpy arrays indexed ``[row, col]`` with the origin at the top
left.  In a :class:`BinaryImage` ``True`` is ink (black) and ``False`` is
background (white).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

GRID = 9


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BinaryImage:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise DimensionError(f"binary image must be a non-empty 2-D array, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def blank(cls, width: int, height: int) -> "BinaryImage":
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.bits, other.bits)

    def __invert__(self) -> "BinaryImage":
        return BinaryImage(~self.bits)

    def count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True, eq=False)
class GrayImage:
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if samples.ndim != 2:
            raise DimensionError(f"gray image must be 2-D, got shape {samples.shape}")
        if samples.size and (samples.min() < 0 or samples.max() > 255):
            raise ValueError("gray samples must lie in 0..255")
        object.__setattr__(self, "samples", samples.astype(np.uint8))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True, eq=False)
class StructuringElement:
    """3x3 neighbourhood mask with its origin at the centre."""

    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (3, 3):
            raise ValueError(f"structuring element must be 3x3, got {mask.shape}")
        if not mask[1, 1]:
            raise ValueError("structuring element must contain its origin")
        object.__setattr__(self, "mask", mask)

    def offsets(self) -> list[tuple[int, int]]:
        return [(int(dr) - 1, int(dc) - 1) for dr, dc in zip(*np.nonzero(self.mask))]

    def reflected(self) -> "StructuringElement":
        return StructuringElement(self.mask[::-1, ::-1])


FULL_3X3 = StructuringElement(np.ones((3, 3), dtype=bool))
CROSS_3X3 = StructuringElement(np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool))


def binarize(img: GrayImage, threshold: int = 128) -> BinaryImage:
    """Ink wherever the intensity is strictly below ``threshold``."""
    return BinaryImage(img.samples < threshold)


def _shifted(bits: np.ndarray, dr: int, dc: int, fill: bool) -> np.ndarray:
    """``out[r, c] = bits[r + dr, c + dc]``, with ``fill`` outside the image."""
    h, w = bits.shape
    padded = np.full((h + 2, w + 2), fill, dtype=bool)
    padded[1:-1, 1:-1] = bits
    return padded[1 + dr:1 + dr + h, 1 + dc:1 + dc + w]


def erode(img: BinaryImage, se: StructuringElement = FULL_3X3, border: bool = False) -> BinaryImage:
    """Ink where every pixel under ``se`` is ink.

    ``border`` is the value assumed outside the image (background by default).
    """
    out = np.ones_like(img.bits)
    for dr, dc in se.offsets():
        out &= _shifted(img.bits, dr, dc, border)
    return BinaryImage(out)


def dilate(img: BinaryImage, se: StructuringElement = FULL_3X3, border: bool = False) -> BinaryImage:
    """Ink where any pixel under the reflected ``se`` is ink."""
    out = np.zeros_like(img.bits)
    for dr, dc in se.offsets():
        out |= _shifted(img.bits, -dr, -dc, border)
    return BinaryImage(out)


def morphological_gradient(img: BinaryImage, se: StructuringElement = FULL_3X3) -> BinaryImage:
    """Dilation minus erosion: the outline band of each ink region."""
    return BinaryImage(dilate(img, se).bits & ~erode(img, se).bits)


def pixel_count_profiles(img: BinaryImage) -> np.ndarray:
    """Ink count of every row followed by the ink count of every column."""
    bits = img.bits.astype(np.int64)
    return np.concatenate([bits.sum(axis=1), bits.sum(axis=0)]).astype(float)


def split_grid(img: BinaryImage, margin_fraction: float = 0.15) -> list[BinaryImage]:
    """Cut a square grid image into 81 row-major cells, trimming grid lines.

    Each cell loses ``floor(margin_fraction * cell_size)`` pixels on every side.
    """
    if not 0 <= margin_fraction < 0.4:
        raise ValueError(f"margin_fraction must be in [0, 0.4), got {margin_fraction}")
    if img.width != img.height:
        raise DimensionError(f"grid image must be square, got {img.width}x{img.height}")
    if img.width % GRID:
        raise DimensionError(f"grid image side {img.width} is not divisible by {GRID}")
    size = img.width // GRID
    m = int(np.floor(margin_fraction * size))
    cells = []
    for r in range(GRID):
        for c in range(GRID):
            y0, x0 = r * size, c * size
            cells.append(BinaryImage(img.bits[y0 + m:y0 + size - m, x0 + m:x0 + size - m]))
    return cells


def resize_nearest(img: BinaryImage, width: int, height: int | None = None) -> BinaryImage:
    height = width if height is None else height
    if (img.width, img.height) == (width, height):
        return img
    rows = (np.arange(height) * img.height) // height
    cols = (np.arange(width) * img.width) // width
    return BinaryImage(img.bits[np.ix_(rows, cols)])


def is_blank_cell(cell: BinaryImage, ink_threshold: float = 0.02) -> bool:
    """True when the ink fraction of ``cell`` is strictly below ``ink_threshold``."""
    if not 0 <= ink_threshold <= 1:
        raise ValueError(f"ink_threshold must be in [0, 1], got {ink_threshold}")
    return cell.bits.mean() < ink_threshold


class Encoding(enum.Enum):
    BASIC = "basic"
    INVERTED = "inverted"
    MORPHOLOGICAL = "morph"
    PIXEL_COUNT = "pcf"

    @classmethod
    def parse(cls, text: str) -> "Encoding":
        aliases = {"morphological": "morph", "pixelcount": "pcf", "pixel_count": "pcf"}
        key = aliases.get(text.lower(), text.lower())
        return cls(key)


def feature_length(encoding: Encoding, width: int, height: int) -> int:
    if encoding is Encoding.PIXEL_COUNT:
        return width + height
    return width * height


def encode(cell: BinaryImage, encoding: Encoding, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Feature vector for one cell.

    ``shape`` is the ``(width, height)`` the classifier was trained on; a
    cell of any other size is rejected, so resize first.
    """
    if shape is not None and (cell.width, cell.height) != tuple(shape):
        raise DimensionError(
            f"cell is {cell.width}x{cell.height}, classifier expects {shape[0]}x{shape[1]}"
        )
    if encoding is Encoding.BASIC:
        return cell.bits.ravel().astype(float)
    if encoding is Encoding.INVERTED:
        return (~cell.bits).ravel().astype(float)
    if encoding is Encoding.MORPHOLOGICAL:
        return morphological_gradient(cell).bits.ravel().astype(float)
    if encoding is Encoding.PIXEL_COUNT:
        return pixel_count_profiles(cell)
    raise ValueError(f"unknown encoding {encoding!r}")
