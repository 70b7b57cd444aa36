import numpy as np
import pytest

from queensdetect.imaging import Frame, write_pgm


def constant_frame(width, height, value):
    return Frame(np.full((height, width), value, dtype=np.uint8))


def paint_block(frame, row, col, value, block_size=8):
    luma = frame.luma.copy()
    luma[row * block_size:(row + 1) * block_size, col * block_size:(col + 1) * block_size] = value
    return Frame(luma)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def frame_dir(tmp_path):
    """Factory writing a list of frames as zero-padded PGM files."""
    def make(frames, name="frames"):
        d = tmp_path / name
        d.mkdir()
        for i, f in enumerate(frames):
            write_pgm(d / f"f{i:03d}.pgm", f)
        return d
    return make


_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Log one acceptance line and assert it."""
    def _record(label, ok, detail):
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, f"{label}: {detail}"
    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
