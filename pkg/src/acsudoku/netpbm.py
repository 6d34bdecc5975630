"""Reading and writing PBM (P1/P4) and PGM (P2/P5) images."""
from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from acsudoku.vision import BinaryImage, GrayImage, binarize


class FormatError(ValueError):
    pass


_TOKEN = re.compile(rb"#[^\n\r]*[\n\r]?|\S+")


def _header(data: bytes, count: int) -> tuple[list[int], int]:
    """Read ``count`` integers after the magic; returns them and the offset just past them."""
    values = []
    pos = 2
    while len(values) < count:
        m = _TOKEN.search(data, pos)
        if m is None:
            raise FormatError("truncated netpbm header")
        pos = m.end()
        tok = m.group()
        if tok.startswith(b"#"):
            continue
        if not tok.isdigit():
            raise FormatError(f"bad header field {tok[:20]!r}")
        values.append(int(tok))
    return values, pos


def parse_netpbm(data: bytes) -> BinaryImage | GrayImage:
    magic = data[:2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise FormatError(f"unsupported netpbm magic {magic!r}; expected P1, P2, P4 or P5")
    bitmap = magic in (b"P1", b"P4")
    (width, height, *rest), pos = _header(data, 2 if bitmap else 3)
    if width < 1 or height < 1:
        raise FormatError(f"bad image size {width}x{height}")
    maxval = 1 if bitmap else rest[0]
    if not 1 <= maxval <= 255:
        raise FormatError(f"maxval {maxval} not supported (must be 1..255)")
    n = width * height

    if magic == b"P4":
        # exactly one whitespace byte separates the header from the raster
        body = data[pos + 1:]
        row_bytes = (width + 7) // 8
        if len(body) < row_bytes * height:
            raise FormatError(f"P4 raster truncated: need {row_bytes * height} bytes, got {len(body)}")
        packed = np.frombuffer(body[:row_bytes * height], dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(packed, axis=1)[:, :width].astype(bool)
        return BinaryImage(bits)
    if magic == b"P5":
        body = data[pos + 1:]
        if len(body) < n:
            raise FormatError(f"P5 raster truncated: need {n} bytes, got {len(body)}")
        raw = np.frombuffer(body[:n], dtype=np.uint8).reshape(height, width)
    elif magic == b"P1":
        text = re.sub(rb"#[^\n\r]*", b"", data[pos:])
        digits = re.sub(rb"\s", b"", text)
        if len(digits) < n or not set(digits[:n]) <= {ord("0"), ord("1")}:
            raise FormatError("P1 raster must hold width*height 0/1 digits")
        return BinaryImage(
            (np.frombuffer(digits[:n], dtype=np.uint8) - ord("0")).astype(bool).reshape(height, width)
        )
    else:  # P2
        text = re.sub(rb"#[^\n\r]*", b"", data[pos:])
        fields = text.split()
        if len(fields) < n:
            raise FormatError(f"P2 raster truncated: need {n} samples, got {len(fields)}")
        raw = np.array([int(f) for f in fields[:n]], dtype=np.int64).reshape(height, width)
    if raw.max(initial=0) > maxval:
        raise FormatError(f"sample exceeds maxval {maxval}")
    if maxval != 255:
        raw = raw.astype(np.int64) * 255 // maxval
    return GrayImage(raw)


def read_netpbm(path: str | Path) -> BinaryImage | GrayImage:
    return parse_netpbm(Path(path).read_bytes())


def load_binary_image(path: str | Path, threshold: int = 128) -> BinaryImage:
    """Read a PBM as-is or a PGM binarized at ``threshold``."""
    img = read_netpbm(path)
    if isinstance(img, GrayImage):
        return binarize(img, threshold)
    return img


def encode_pbm(img: BinaryImage) -> bytes:
    header = f"P4\n{img.width} {img.height}\n".encode()
    return header + np.packbits(img.bits, axis=1).tobytes()


def encode_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode()
    return header + img.samples.astype(np.uint8).tobytes()


def write_pbm(path: str | Path, img: BinaryImage) -> None:
    Path(path).write_bytes(encode_pbm(img))


def write_pgm(path: str | Path, img: GrayImage) -> None:
    Path(path).write_bytes(encode_pgm(img))
