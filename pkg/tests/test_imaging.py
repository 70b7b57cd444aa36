import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from queensdetect.errors import BadMagic, FrameTooSmall, MaxvalUnsupported, Truncated
from queensdetect.imaging import Frame, decode_pgm, encode_pgm, to_block_grid


def test_decode_p5():
    f = decode_pgm(b"P5 2 2 255\n" + bytes([0, 64, 128, 255]))
    assert (f.width, f.height) == (2, 2)
    assert f.luma.tolist() == [[0, 64], [128, 255]]


def test_decode_p2():
    f = decode_pgm(b"P2 1 1 255\n7\n")
    assert f.luma.tolist() == [[7]]


def test_decode_comments():
    data = b"P2\n# made by hand\n3 1 # width height\n255\n1 2\n# tail\n3\n"
    assert decode_pgm(data).luma.tolist() == [[1, 2, 3]]
    binary = b"P5\n# comment\n2 1\n255\n" + bytes([9, 10])
    assert decode_pgm(binary).luma.tolist() == [[9, 10]]


def test_bad_magic():
    with pytest.raises(BadMagic):
        decode_pgm(b"P6 1 1 255\n" + bytes(3))


def test_maxval_unsupported():
    with pytest.raises(MaxvalUnsupported):
        decode_pgm(b"P5 1 1 65535\n" + bytes(2))


@pytest.mark.parametrize("data", [
    b"P5 2 2 255\n" + bytes(3),
    b"P2 2 2 255\n1 2 3\n",
    b"P5 2 2",
])
def test_truncated(data):
    with pytest.raises(Truncated):
        decode_pgm(data)


def test_encode_round_trip_bytes():
    data = b"P5\n2 2\n255\n" + bytes([0, 64, 128, 255])
    assert encode_pgm(decode_pgm(data)) == data
    assert encode_pgm(decode_pgm(b"P5 2 2 255\n" + bytes([0, 64, 128, 255]))) == data


def test_smallest_payload():
    out = encode_pgm(Frame(np.zeros((1, 1), np.uint8)))
    assert out == b"P5\n1 1\n255\n\x00"


@settings(max_examples=60)
@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))))
def test_round_trip_law(luma):
    f = Frame(luma)
    assert decode_pgm(encode_pgm(f)) == f


def test_320x240_grid_dims():
    g = to_block_grid(Frame(np.zeros((240, 320), np.uint8)), 8)
    assert (g.rows, g.cols) == (30, 40)


def test_constant_frame():
    g = to_block_grid(Frame(np.full((24, 16), 77, np.uint8)), 8)
    assert (g.values == 77).all()


def test_half_black_half_white_block():
    luma = np.zeros((8, 8), np.uint8)
    luma[4:] = 255
    assert to_block_grid(Frame(luma), 8).values.tolist() == [[127]]


def test_edge_blocks_cropped():
    luma = np.zeros((255, 176), np.uint8)
    luma[248:, :] = 200  # partial bottom row of blocks
    g = to_block_grid(Frame(luma), 8)
    assert (g.rows, g.cols) == (31, 22)
    assert g.values.max() == 0


def test_frame_too_small():
    with pytest.raises(FrameTooSmall):
        to_block_grid(Frame(np.zeros((4, 10), np.uint8)), 8)


def block_mean_oracle(luma, bs):
    rows, cols = luma.shape[0] // bs, luma.shape[1] // bs
    out = [[0] * cols for _ in range(rows)]
    for R in range(rows):
        for C in range(cols):
            total = 0
            for y in range(R * bs, R * bs + bs):
                for x in range(C * bs, C * bs + bs):
                    total += int(luma[y, x])
            out[R][C] = total // (bs * bs)
    return out


@settings(max_examples=60)
@given(st.data())
def test_block_grid_properties(data):
    bs = data.draw(st.integers(1, 5))
    h = data.draw(st.integers(bs, 17))
    w = data.draw(st.integers(bs, 17))
    luma = data.draw(arrays(np.uint8, (h, w)))
    g = to_block_grid(Frame(luma), bs)
    assert g.rows * bs <= h < (g.rows + 1) * bs
    assert g.cols * bs <= w < (g.cols + 1) * bs
    assert g.values.tolist() == block_mean_oracle(luma, bs)
    for R in range(g.rows):
        for C in range(g.cols):
            tile = luma[R * bs:(R + 1) * bs, C * bs:(C + 1) * bs]
            assert tile.min() <= g.values[R, C] <= tile.max()


@given(st.integers(0, 255), st.integers(1, 6))
def test_constant_frame_any_block(value, bs):
    g = to_block_grid(Frame(np.full((13, 11), value, np.uint8)), bs)
    assert (g.values == value).all()


def test_frame_rejects_bad_values():
    with pytest.raises(ValueError):
        Frame(np.array([[300]]))
    with pytest.raises(ValueError):
        Frame(np.zeros(4, np.uint8))
