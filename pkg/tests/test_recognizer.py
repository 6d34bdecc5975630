import gzip
import random
import struct

import numpy as np
import pytest
from hypothesis import given, strategies as st

from acsudoku.font import GLYPH_SIZE, GLYPHS, glyph
from acsudoku.recognizer import (
    IdxFormatError,
    KnnModel,
    LabeledDataset,
    cell_accuracy,
    default_model,
    euclidean_distance,
    evaluate,
    generate_synthetic,
    load_idx,
    predict,
    recognize_grid,
    render_grid,
    synthetic_glyphs,
    write_idx,
)
from acsudoku.sudoku import SudokuGrid, parse_grid
from acsudoku.vision import DimensionError, Encoding

from oracles import CLASSIC


def test_distance_examples():
    assert euclidean_distance([1.5, 2], [1.5, 2]) == 0
    assert euclidean_distance([0, 0], [3, 4]) == 5
    with pytest.raises(ValueError):
        euclidean_distance([0], [0, 1])


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(*[st.lists(st.floats(-100, 100), min_size=n, max_size=n)] * 3)))
def test_distance_is_a_metric(triple):
    p, q, r = triple
    assert euclidean_distance(p, q) == euclidean_distance(q, p) >= 0
    assert euclidean_distance(p, r) <= euclidean_distance(p, q) + euclidean_distance(q, r) + 1e-9


def one_d(points):
    return LabeledDataset([[x] for x, _ in points], [lab for _, lab in points])


def test_predict_examples():
    data = one_d([(0, 1), (1, 1), (10, 7)])
    p = predict(KnnModel(data, 3), [0.5])
    assert p.label == 1 and p.votes == {1: 2, 7: 1}
    assert predict(KnnModel(data, 1), [9]).label == 7
    tie = predict(KnnModel(one_d([(0, 1), (2, 7)]), 2), [1.0])
    assert tie.label == 1 and tie.votes == {1: 1, 7: 1}


def test_vote_tie_prefers_smaller_summed_distance():
    # 2 votes each; label 8 sits closer in total
    data = one_d([(-3, 2), (3, 2), (1, 8), (-1.5, 8)])
    assert predict(KnnModel(data, 4), [0]).label == 8


def test_model_validation():
    data = one_d([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        KnnModel(data, 3)
    with pytest.raises(ValueError):
        KnnModel(data, 0)
    with pytest.raises(DimensionError):
        predict(KnnModel(data, 1), [0, 0])
    with pytest.raises(ValueError):
        LabeledDataset([[0]], [0])


def test_permutation_invariance_with_equidistant_points():
    pts = [(1, d) for d in (3, 5, 2)] + [(-1, d) for d in (4, 9)] + [(2, 6), (-2, 1)]
    rng = random.Random(5)
    queries = [[q] for q in np.linspace(-3, 3, 25)]
    for k in (1, 2, 3, 4, 5):
        base = [predict(KnnModel(one_d(pts), k), q) for q in queries]
        for _ in range(20):
            rng.shuffle(pts)
            again = [predict(KnnModel(one_d(pts), k), q) for q in queries]
            assert again == base


def test_self_accuracy_with_k1():
    data = generate_synthetic(5, 0.1, 1, Encoding.BASIC)
    assert len({v.tobytes() for v in data.vectors}) == len(data)
    assert evaluate(KnnModel(data, 1), data) == 1.0


def test_evaluate_checks_encoding():
    model = KnnModel(generate_synthetic(1, 0, 0, Encoding.BASIC), 1)
    with pytest.raises(ValueError):
        evaluate(model, generate_synthetic(1, 0, 0, Encoding.INVERTED))
    single = LabeledDataset(model.dataset.vectors[:1], [1], Encoding.BASIC)
    assert evaluate(model, single) == 1.0


def test_held_out_accuracy_morph_k5():
    train, test = generate_synthetic(40, 0.05, 3).split(0.25, seed=1)
    assert evaluate(KnnModel(train, 5), test) >= 0.95


def test_accuracy_drops_with_noise():
    model = KnnModel(generate_synthetic(10, 0.05, 4, Encoding.BASIC), 5)
    clean = evaluate(model, generate_synthetic(10, 0.0, 8, Encoding.BASIC))
    noisy = evaluate(model, generate_synthetic(10, 0.2, 8, Encoding.BASIC))
    assert clean >= noisy


def test_font_table():
    assert set(GLYPHS) == set(range(1, 10))
    for d in range(1, 10):
        g = glyph(d)
        assert g.shape == (GLYPH_SIZE, GLYPH_SIZE) and g.any()
        g[:] = False
        assert GLYPHS[d].any()  # glyph() hands out copies
    assert len({GLYPHS[d].tobytes() for d in GLYPHS}) == 9


def test_generator_boundaries():
    clean = synthetic_glyphs(3, 0.0, 11)
    assert all(np.array_equal(img.bits, GLYPHS[lab]) for img, lab in clean)
    flipped = synthetic_glyphs(2, 1.0, 11)
    assert all(np.array_equal(img.bits, ~GLYPHS[lab]) for img, lab in flipped)
    a, b = generate_synthetic(4, 0.3, 99), generate_synthetic(4, 0.3, 99)
    assert np.array_equal(a.vectors, b.vectors) and np.array_equal(a.labels, b.labels)
    assert not np.array_equal(a.vectors, generate_synthetic(4, 0.3, 100).vectors)
    assert [lab for _, lab in clean] == [d for d in range(1, 10) for _ in range(3)]
    with pytest.raises(ValueError):
        synthetic_glyphs(1, 1.5, 0)


def idx_pair(tmp_path, images, labels):
    ip, lp = tmp_path / "img.idx", tmp_path / "lab.idx"
    write_idx(ip, lp, images, labels)
    return ip, lp


def test_idx_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    images = np.zeros((6, 16, 16), dtype=np.uint8)
    labels = [0, 1, 2, 3, 4, 9]
    for i, lab in enumerate(labels):
        if lab:
            images[i][GLYPHS[lab]] = 255
    images[0] = rng.integers(0, 256, (16, 16))
    ip, lp = idx_pair(tmp_path, images, labels)
    assert ip.read_bytes()[:4] == b"\x00\x00\x08\x03"
    data = load_idx(ip, lp, Encoding.BASIC)
    assert data.labels.tolist() == [1, 2, 3, 4, 9]
    for vec, lab in zip(data.vectors, data.labels):
        assert np.array_equal(vec, GLYPHS[lab].ravel().astype(float))
    assert len(load_idx(ip, lp, Encoding.BASIC, limit=2)) == 2
    dark = load_idx(ip, lp, Encoding.BASIC, light_ink=False)
    assert np.array_equal(dark.vectors[0], (~GLYPHS[1]).ravel().astype(float))
    with pytest.raises(IdxFormatError, match="label 0"):
        load_idx(ip, lp, Encoding.BASIC, drop_zero=False)


def test_idx_resizes_and_reads_gzip(tmp_path):
    images = np.zeros((1, 32, 32), dtype=np.uint8)
    images[0][np.kron(GLYPHS[5], np.ones((2, 2), dtype=bool))] = 255
    ip, lp = idx_pair(tmp_path, images, [5])
    gz = tmp_path / "img.idx.gz"
    gz.write_bytes(gzip.compress(ip.read_bytes()))
    data = load_idx(gz, lp, Encoding.BASIC)
    assert np.array_equal(data.vectors[0], GLYPHS[5].ravel().astype(float))


def test_idx_errors(tmp_path):
    ip, lp = idx_pair(tmp_path, np.zeros((100, 4, 4), dtype=np.uint8), [1] * 100)
    swapped = tmp_path / "swapped.idx"
    swapped.write_bytes(b"\x00\x00\x08\x01" + ip.read_bytes()[4:])
    with pytest.raises(IdxFormatError, match="0x00000801"):
        load_idx(swapped, lp)
    short_labels = tmp_path / "short.idx"
    short_labels.write_bytes(struct.pack(">II", 0x801, 99) + bytes([1] * 99))
    with pytest.raises(IdxFormatError, match="100 images but 99 labels"):
        load_idx(ip, short_labels)
    truncated = tmp_path / "trunc.idx"
    truncated.write_bytes(ip.read_bytes()[:-1])
    with pytest.raises(IdxFormatError, match="shorter"):
        load_idx(truncated, lp)


def test_render_and_recognize_round_trip():
    grid = parse_grid(CLASSIC)
    img = render_grid(grid)
    assert img.width == img.height == 9 * 22
    model = default_model()
    assert recognize_grid(img, model) == grid
    assert recognize_grid(render_grid(grid, scale=2), model) == grid


@pytest.mark.parametrize("encoding", list(Encoding))
def test_every_encoding_reads_a_clean_grid(encoding):
    grid = parse_grid(CLASSIC)
    assert recognize_grid(render_grid(grid), default_model(encoding)) == grid


def test_blank_grid_recognized_as_blank():
    assert recognize_grid(render_grid(SudokuGrid.blank()), default_model()) == SudokuGrid.blank()


def test_cell_accuracy():
    truth = parse_grid(CLASSIC)
    assert cell_accuracy(truth, truth) == 1.0
    wrong = list(truth.cells)
    wrong[0] = 6
    assert cell_accuracy(truth, SudokuGrid(tuple(wrong))) == pytest.approx(29 / 30)
