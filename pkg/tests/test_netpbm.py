import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from acsudoku.netpbm import (
    FormatError,
    encode_pbm,
    encode_pgm,
    load_binary_image,
    parse_netpbm,
    write_pbm,
    write_pgm,
)
from acsudoku.vision import BinaryImage, GrayImage

shapes = st.tuples(st.integers(1, 20), st.integers(1, 20))


@given(arrays(bool, shapes))
def test_p4_round_trip(bits):
    assert parse_netpbm(encode_pbm(BinaryImage(bits))) == BinaryImage(bits)


@given(arrays(np.uint8, shapes))
def test_p5_round_trip(samples):
    out = parse_netpbm(encode_pgm(GrayImage(samples)))
    assert np.array_equal(out.samples, samples)


@given(arrays(bool, shapes))
def test_p1_ascii(bits):
    h, w = bits.shape
    body = "\n".join(" ".join("1" if b else "0" for b in row) for row in bits)
    data = f"P1\n# made by hand\n{w} {h}\n{body}\n".encode()
    assert parse_netpbm(data) == BinaryImage(bits)


def test_p1_digits_may_run_together():
    assert parse_netpbm(b"P1 3 2 101 010").bits.tolist() == [[1, 0, 1], [0, 1, 0]]


def test_p2_ascii_with_comments_and_maxval_scaling():
    data = b"P2\n# comment\n3 1\n# another\n15\n0 15 5\n"
    assert parse_netpbm(data).samples.tolist() == [[0, 255, 85]]


def test_rejects_other_magic():
    with pytest.raises(FormatError, match="P6"):
        parse_netpbm(b"P6\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(FormatError):
        parse_netpbm(b"GIF89a")


def test_rejects_bad_headers_and_truncation():
    with pytest.raises(FormatError):
        parse_netpbm(b"P2\n2 2\n")
    with pytest.raises(FormatError, match="maxval"):
        parse_netpbm(b"P5\n1 1\n300\n\x00")
    with pytest.raises(FormatError, match="truncated"):
        parse_netpbm(b"P5\n4 4\n255\n\x00")
    with pytest.raises(FormatError, match="truncated"):
        parse_netpbm(b"P4\n16 2\n\x00")
    with pytest.raises(FormatError):
        parse_netpbm(b"P2\n1 1\n10\n11\n")


def test_load_binary_image_thresholds_pgm(tmp_path):
    p = tmp_path / "g.pgm"
    write_pgm(p, GrayImage(np.array([[0, 127, 128, 255]])))
    assert load_binary_image(p).bits.tolist() == [[True, True, False, False]]
    q = tmp_path / "b.pbm"
    write_pbm(q, BinaryImage(np.array([[True, False]])))
    assert load_binary_image(q).bits.tolist() == [[True, False]]
