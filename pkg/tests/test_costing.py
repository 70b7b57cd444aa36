import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import constant_frame, paint_block
from queensdetect.costing import (
    REFERENCE_TABLE, Counts, EnergyCoefficients, calibrate, cost_report, default_coefficients,
    estimate_energy, savings_factor, tally,
)
from queensdetect.detection import DetectorConfig, SessionReport, run_pipeline
from queensdetect.errors import DegenerateInput
from queensdetect.placement import grid_placement


def test_reference_table_values():
    assert REFERENCE_TABLE == ((256, 23.19), (32, 2.9), (704, 63.78), (64, 5.79))


def test_calibrate_against_lstsq():
    x = np.array([p[0] for p in REFERENCE_TABLE], float)[:, None]
    y = np.array([p[1] for p in REFERENCE_TABLE])
    slope = np.linalg.lstsq(x, y, rcond=None)[0][0]
    assert calibrate(REFERENCE_TABLE) == pytest.approx(slope, rel=1e-12)
    assert calibrate(REFERENCE_TABLE) == pytest.approx(0.0906, abs=5e-5)


def test_calibrate_trivial():
    assert calibrate([(100, 1.0)]) == pytest.approx(0.01)
    assert calibrate([(5, 0), (9, 0)]) == 0
    with pytest.raises(DegenerateInput):
        calibrate([(0, 3.0)])
    with pytest.raises(DegenerateInput):
        calibrate([])


def test_estimate_energy_table_cells():
    coeffs = default_coefficients()
    assert estimate_energy(Counts(comparisons=256), coeffs) == pytest.approx(23.19, rel=0.02)
    assert estimate_energy(Counts(comparisons=32), coeffs) == pytest.approx(2.9, rel=0.02)
    assert estimate_energy(Counts(), coeffs) == 0


def test_linear_form():
    c = EnergyCoefficients(0.5, 0.25, 0.001)
    counts = Counts(comparisons=10, updates=4, frames_transmitted=1, bytes_transmitted=1000)
    assert estimate_energy(counts, c) == 0.5 * 10 + 0.25 * 4 + 0.001 * 1000
    rep = cost_report(counts, c)
    assert rep.energy_mj == estimate_energy(counts, c)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_proportional_to_comparisons(a, b):
    c = EnergyCoefficients(per_comparison=0.125)
    assert estimate_energy(Counts(comparisons=a + b), c) == (
        estimate_energy(Counts(comparisons=a), c) + estimate_energy(Counts(comparisons=b), c))


def test_negative_coefficient_rejected():
    with pytest.raises(ValueError):
        EnergyCoefficients(per_update=-1)


def test_parse_coefficients():
    c = EnergyCoefficients.parse("# energy\nper_comparison = 0.1\n\nper_tx_byte=2e-4\n")
    assert c == EnergyCoefficients(0.1, 0.0, 2e-4)
    with pytest.raises(ValueError):
        EnergyCoefficients.parse("per_flop = 1")


def test_tally_empty():
    assert tally(SessionReport()) == Counts()


def test_tally_queens_scans():
    frames = [constant_frame(256, 256, 40)] * 11
    cells = grid_placement(32, 32, double=False)
    rep = run_pipeline(frames, cells, DetectorConfig(5))
    assert tally(rep).comparisons == 320


def test_tally_bytes():
    base = constant_frame(128, 128, 0)
    cells = grid_placement(16, 16)
    r, c = cells.cells[0]
    hit = paint_block(base, r, c, 255)
    rep = run_pipeline([base, hit, base, hit], cells, DetectorConfig(10), tx_ratio=0.5)
    counts = tally(rep)
    assert counts.frames_transmitted == 2
    assert counts.bytes_transmitted == 2 * 128 * 128 * 0.5


def test_savings_factor():
    assert savings_factor(16, 32) == 8.0
    assert 23.19 / 2.9 == pytest.approx(8.0, rel=0.005)
    assert savings_factor(16, 16) == 16.0
    assert savings_factor(2, 4) == 1.0


@pytest.mark.parametrize("n", range(1, 65))
def test_savings_factor_identity(n):
    assert savings_factor(n, 2 * n) == n / 2
