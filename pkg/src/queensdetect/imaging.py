"""Grayscale frame I/O (Netpbm PGM) and block averaging."""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import BadMagic, FrameTooSmall, MaxvalUnsupported, PGMError, Truncated


@dataclass(frozen=True, eq=False)
class Frame:
    """A captured luma image; ``luma`` is a (height, width) uint8 array."""

    luma: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.luma)
        if arr.ndim != 2:
            raise ValueError(f"luma must be 2-D, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("luma values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "luma", arr)

    @classmethod
    def from_bytes(cls, width: int, height: int, data: bytes) -> "Frame":
        if len(data) != width * height:
            raise ValueError(f"expected {width * height} samples, got {len(data)}")
        return cls(np.frombuffer(bytes(data), dtype=np.uint8).reshape(height, width))

    @property
    def width(self) -> int:
        return self.luma.shape[1]

    @property
    def height(self) -> int:
        return self.luma.shape[0]

    @property
    def nbytes(self) -> int:
        return self.luma.size

    def tobytes(self) -> bytes:
        return self.luma.tobytes()

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return np.array_equal(self.luma, other.luma)

    def __repr__(self):
        return f"Frame({self.width}x{self.height})"


@dataclass(eq=False)
class BlockGrid:
    """Block-averaged frame. ``values`` is a (rows, cols) int64 array."""

    values: np.ndarray
    block_size: int = 1

    def __post_init__(self):
        self.values = np.array(self.values, dtype=np.int64, copy=True)
        if self.values.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {self.values.shape}")

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def copy(self) -> "BlockGrid":
        return BlockGrid(self.values, self.block_size)

    def __eq__(self, other):
        if not isinstance(other, BlockGrid):
            return NotImplemented
        return self.block_size == other.block_size and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"BlockGrid({self.rows}x{self.cols}, block_size={self.block_size})"


_TOKEN = re.compile(rb"#[^\n]*|\S+")


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the last one.
    """
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < count:
        m = _TOKEN.search(data, pos)
        if m is None:
            raise Truncated("incomplete PGM header")
        pos = m.end()
        if not m.group().startswith(b"#"):
            tokens.append(m.group())
    return tokens, pos


def decode_pgm(data: bytes) -> Frame:
    """Decode a binary (P5) or ASCII (P2) PGM with maxval <= 255."""
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise BadMagic(f"unsupported magic {magic!r}; expected P5 or P2")
    tokens, pos = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise PGMError(f"non-numeric PGM header: {tokens[1:4]}") from exc
    if width < 1 or height < 1:
        raise PGMError(f"bad dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise MaxvalUnsupported(f"maxval {maxval} not in [1, 255]")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1: pos + 1 + count]
        if len(raster) < count:
            raise Truncated(f"expected {count} samples, got {len(raster)}")
        samples = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < count:
            raise Truncated(f"expected {count} samples, got {len(body)}")
        try:
            samples = np.array([int(t) for t in body[:count]], dtype=np.int64)
        except ValueError as exc:
            raise PGMError("non-numeric sample in P2 raster") from exc
    if samples.size and samples.max() > maxval:
        raise PGMError(f"sample exceeds maxval {maxval}")
    return Frame(samples.reshape(height, width).astype(np.uint8))


def encode_pgm(frame: Frame) -> bytes:
    """Canonical binary PGM: ``P5\\n<w> <h>\\n255\\n`` followed by the raster."""
    header = f"P5\n{frame.width} {frame.height}\n255\n".encode("ascii")
    return header + frame.tobytes()


def read_pgm(path) -> Frame:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def write_pgm(path, frame: Frame) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(frame))


def to_block_grid(frame: Frame, block_size: int = 8) -> BlockGrid:
    """Average each block_size x block_size tile to one integer (floored).

    Partial tiles on the right and bottom edges are dropped.
    """
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    if frame.width < block_size or frame.height < block_size:
        raise FrameTooSmall(
            f"{frame.width}x{frame.height} frame is smaller than one {block_size}px block")
    rows, cols = frame.height // block_size, frame.width // block_size
    tiles = frame.luma[: rows * block_size, : cols * block_size].astype(np.int64)
    sums = tiles.reshape(rows, block_size, cols, block_size).sum(axis=(1, 3))
    return BlockGrid(sums // (block_size * block_size), block_size)
