"""K-nearest-neighbour digit recognition, datasets, and synthetic grid rendering."""
from __future__ import annotations

import gzip
import struct
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from acsudoku.font import GLYPH_SIZE, glyph
from acsudoku.sudoku import CELLS, SIZE, SudokuGrid
from acsudoku.vision import (
    BinaryImage,
    DimensionError,
    Encoding,
    encode,
    is_blank_cell,
    resize_nearest,
    split_grid,
)

K_PRESETS = (5, 10, 20, 50, 100)
IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801


class IdxFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    vectors: np.ndarray  # (count, length) float
    labels: np.ndarray  # (count,) int, digits 1..9
    encoding: Encoding | None = None
    shape: tuple[int, int] | None = None  # (width, height) of the source images

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=float)
        if vectors.ndim == 1:
            vectors = vectors.reshape(-1, 1)
        labels = np.asarray(self.labels, dtype=np.int64).ravel()
        if vectors.ndim != 2 or len(vectors) != len(labels):
            raise ValueError(f"{len(vectors)} vectors but {len(labels)} labels")
        if labels.size and (labels.min() < 1 or labels.max() > 9):
            raise ValueError("labels must be digits 1..9")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def split(self, test_fraction: float, seed: int = 0) -> tuple["LabeledDataset", "LabeledDataset"]:
        order = np.random.default_rng(seed).permutation(len(self))
        cut = len(self) - int(round(test_fraction * len(self)))
        pick = lambda idx: LabeledDataset(self.vectors[idx], self.labels[idx], self.encoding, self.shape)
        return pick(order[:cut]), pick(order[cut:])


@dataclass(frozen=True)
class Prediction:
    label: int
    votes: dict[int, int]


def euclidean_distance(p: Sequence[float], q: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"vector lengths differ: {p.shape} vs {q.shape}")
    return float(np.sqrt(np.sum((q - p) ** 2)))


class KnnModel:
    """Stores the training set; all work happens at prediction time."""

    def __init__(self, dataset: LabeledDataset, k: int = 5):
        if k < 1:
            raise ValueError("k must be positive")
        if k > len(dataset):
            raise ValueError(f"k={k} exceeds the {len(dataset)} training examples")
        self.dataset = dataset
        self.k = k

    @property
    def encoding(self) -> Encoding | None:
        return self.dataset.encoding

    def _check(self, query: np.ndarray) -> np.ndarray:
        query = np.asarray(query, dtype=float).ravel()
        if query.shape[0] != self.dataset.vectors.shape[1]:
            raise DimensionError(
                f"query has {query.shape[0]} features, model expects {self.dataset.vectors.shape[1]}"
            )
        return query

    def predict(self, query: Sequence[float]) -> Prediction:
        """Majority label among the k nearest training vectors.

        Neighbours are ranked by (distance, label), so which of several
        equidistant points fill the last slots does not depend on storage
        order.  Equal vote counts go to the smaller summed distance, then
        the smaller digit.
        """
        query = self._check(query)
        dist = np.sqrt(((self.dataset.vectors - query) ** 2).sum(axis=1))
        labels = self.dataset.labels
        nearest = np.lexsort((labels, dist))[: self.k]
        votes = Counter()
        summed: dict[int, float] = {}
        for i in nearest:
            lab = int(labels[i])
            votes[lab] += 1
            summed[lab] = summed.get(lab, 0.0) + float(dist[i])
        label = min(votes, key=lambda lab: (-votes[lab], summed[lab], lab))
        return Prediction(label, dict(votes))

    def predict_label(self, query: Sequence[float]) -> int:
        return self.predict(query).label


def predict(model: KnnModel, query: Sequence[float]) -> Prediction:
    return model.predict(query)


def evaluate(model: KnnModel, test: LabeledDataset) -> float:
    """Fraction of ``test`` classified correctly."""
    if test.encoding != model.encoding:
        raise ValueError(f"test encoding {test.encoding} does not match model encoding {model.encoding}")
    if not len(test):
        raise ValueError("empty test set")
    hits = sum(model.predict_label(v) == lab for v, lab in zip(test.vectors, test.labels))
    return hits / len(test)


# -- datasets ---------------------------------------------------------------


def _flip(bits: np.ndarray, noise: float, rng: np.random.Generator) -> np.ndarray:
    if noise <= 0:
        return bits.copy()
    return bits ^ (rng.random(bits.shape) < noise)


def synthetic_glyphs(count_per_digit: int, noise: float, seed: int) -> list[tuple[BinaryImage, int]]:
    """Font glyphs 1..9, ``count_per_digit`` each, with independent per-pixel flips."""
    if not 0 <= noise <= 1:
        raise ValueError("noise must be in [0, 1]")
    rng = np.random.default_rng(seed)
    out = []
    for digit in range(1, 10):
        clean = glyph(digit)
        for _ in range(count_per_digit):
            out.append((BinaryImage(_flip(clean, noise, rng)), digit))
    return out


def dataset_from_images(
    items: Sequence[tuple[BinaryImage, int]], encoding: Encoding, size: int = GLYPH_SIZE
) -> LabeledDataset:
    vectors = [encode(resize_nearest(img, size), encoding) for img, _ in items]
    labels = [lab for _, lab in items]
    length = len(vectors[0]) if vectors else (2 * size if encoding is Encoding.PIXEL_COUNT else size * size)
    return LabeledDataset(np.array(vectors).reshape(len(vectors), length), labels, encoding, (size, size))


def generate_synthetic(
    count_per_digit: int,
    noise: float,
    seed: int,
    encoding: Encoding = Encoding.MORPHOLOGICAL,
) -> LabeledDataset:
    """Deterministic training/evaluation set rendered from the built-in font."""
    return dataset_from_images(synthetic_glyphs(count_per_digit, noise, seed), encoding)


def _open(path: Path):
    data = path.read_bytes()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    return data


def load_idx(
    images_path: str | Path,
    labels_path: str | Path,
    encoding: Encoding = Encoding.MORPHOLOGICAL,
    size: int = GLYPH_SIZE,
    threshold: int = 128,
    light_ink: bool = True,
    drop_zero: bool = True,
    limit: int | None = None,
) -> LabeledDataset:
    """Load an IDX image/label pair (optionally gzipped).

    MNIST stores light digits on a dark background, so by default a pixel
    is ink when its value is >= ``threshold``; pass ``light_ink=False`` for
    dark-on-light data.
    """
    img_data = _open(Path(images_path))
    lab_data = _open(Path(labels_path))
    if len(img_data) < 16:
        raise IdxFormatError("images file too short for an IDX header")
    magic, count, rows, cols = struct.unpack(">IIII", img_data[:16])
    if magic != IDX_IMAGES_MAGIC:
        raise IdxFormatError(f"images file has magic 0x{magic:08x}, expected 0x{IDX_IMAGES_MAGIC:08x}")
    if len(lab_data) < 8:
        raise IdxFormatError("labels file too short for an IDX header")
    lmagic, lcount = struct.unpack(">II", lab_data[:8])
    if lmagic != IDX_LABELS_MAGIC:
        raise IdxFormatError(f"labels file has magic 0x{lmagic:08x}, expected 0x{IDX_LABELS_MAGIC:08x}")
    if lcount != count:
        raise IdxFormatError(f"count mismatch: {count} images but {lcount} labels")
    need = count * rows * cols
    if len(img_data) - 16 < need or len(lab_data) - 8 < count:
        raise IdxFormatError("IDX payload shorter than its header declares")
    pixels = np.frombuffer(img_data, dtype=np.uint8, count=need, offset=16).reshape(count, rows, cols)
    labels = np.frombuffer(lab_data, dtype=np.uint8, count=count, offset=8).astype(np.int64)

    keep = labels != 0 if drop_zero else np.ones(count, dtype=bool)
    if not drop_zero and not labels.all():
        raise IdxFormatError("label 0 present; digit classes are 1..9 (use drop_zero=True)")
    if labels.max(initial=0) > 9:
        raise IdxFormatError("labels must be digits")
    idx = np.nonzero(keep)[0]
    if limit is not None:
        idx = idx[:limit]
    items = []
    for i in idx:
        ink = pixels[i] >= threshold if light_ink else pixels[i] < threshold
        items.append((BinaryImage(ink), int(labels[i])))
    return dataset_from_images(items, encoding, size)


def write_idx(images_path: str | Path, labels_path: str | Path, images: np.ndarray, labels: Sequence[int]) -> None:
    """Write uint8 images of shape (count, rows, cols) and their labels as IDX files."""
    images = np.asarray(images, dtype=np.uint8)
    count, rows, cols = images.shape
    Path(images_path).write_bytes(struct.pack(">IIII", IDX_IMAGES_MAGIC, count, rows, cols) + images.tobytes())
    Path(labels_path).write_bytes(
        struct.pack(">II", IDX_LABELS_MAGIC, len(labels)) + bytes(np.asarray(labels, dtype=np.uint8))
    )


# -- grid images ------------------------------------------------------------

CELL_PIXELS = 22  # a 16-pixel glyph plus a 3-pixel frame; matches the default 0.15 margin


def render_grid(grid: SudokuGrid, noise: float = 0.0, seed: int = 0, scale: int = 1) -> BinaryImage:
    """Draw ``grid`` with the built-in font.

    Grid lines sit inside each cell's outer 3-pixel frame so the default
    margin trims them away.  Flip noise is applied to each glyph box only.
    """
    if scale < 1:
        raise ValueError("scale must be >= 1")
    rng = np.random.default_rng(seed)
    cell = CELL_PIXELS * scale
    pad = 3 * scale
    side = SIZE * cell
    bits = np.zeros((side, side), dtype=bool)
    for i, v in enumerate(grid.cells):
        if not v:
            continue
        r, c = divmod(i, SIZE)
        g = _flip(glyph(v), noise, rng)
        if scale > 1:
            g = np.kron(g, np.ones((scale, scale), dtype=bool))
        y0, x0 = r * cell + pad, c * cell + pad
        bits[y0:y0 + GLYPH_SIZE * scale, x0:x0 + GLYPH_SIZE * scale] = g
    for k in range(SIZE + 1):
        thick = (2 if k % 3 == 0 else 1) * scale
        pos = min(k * cell, side - thick)
        bits[pos:pos + thick, :] = True
        bits[:, pos:pos + thick] = True
    return BinaryImage(bits)


def recognize_cells(
    cells: Sequence[BinaryImage],
    model: KnnModel,
    ink_threshold: float = 0.02,
) -> SudokuGrid:
    shape = model.dataset.shape or (GLYPH_SIZE, GLYPH_SIZE)
    values = []
    for cell in cells:
        if is_blank_cell(cell, ink_threshold):
            values.append(0)
            continue
        sized = resize_nearest(cell, *shape)
        values.append(model.predict_label(encode(sized, model.encoding, shape)))
    return SudokuGrid(tuple(values))


def recognize_grid(
    img: BinaryImage,
    model: KnnModel,
    margin_fraction: float = 0.15,
    ink_threshold: float = 0.02,
) -> SudokuGrid:
    """Split ``img`` into cells, leave near-empty ones blank, classify the rest."""
    cells = split_grid(img, margin_fraction)
    if len(cells) != CELLS:
        raise DimensionError(f"expected {CELLS} cells, got {len(cells)}")
    return recognize_cells(cells, model, ink_threshold)


def default_model(
    encoding: Encoding = Encoding.MORPHOLOGICAL,
    k: int = 5,
    count_per_digit: int = 30,
    noise: float = 0.05,
    seed: int = 12345,
) -> KnnModel:
    """KNN model trained on the synthetic font set."""
    return KnnModel(generate_synthetic(count_per_digit, noise, seed, encoding), k)


def cell_accuracy(truth: SudokuGrid, seen: SudokuGrid) -> float:
    """Fraction of the clue cells of ``truth`` that were read back correctly."""
    clues = [i for i, v in enumerate(truth.cells) if v]
    if not clues:
        return 1.0
    return sum(truth.cells[i] == seen.cells[i] for i in clues) / len(clues)

