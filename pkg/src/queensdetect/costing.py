"""Linear energy model over exact operation counts."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

from .errors import DegenerateInput

# (comparisons, measured mJ) for one processed image: full scan and double
# queens scan at 128x128 (16x16 blocks) and 176x255 (704 blocks).
REFERENCE_TABLE: tuple[tuple[int, float], ...] = (
    (256, 23.19),
    (32, 2.9),
    (704, 63.78),
    (64, 5.79),
)


@dataclass(frozen=True)
class Counts:
    comparisons: int = 0
    updates: int = 0
    frames_transmitted: int = 0
    bytes_transmitted: float = 0


@dataclass(frozen=True)
class EnergyCoefficients:
    per_comparison: float = 0.0
    per_update: float = 0.0
    per_tx_byte: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    @classmethod
    def parse(cls, text: str) -> "EnergyCoefficients":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        known = {f for f in cls.__dataclass_fields__}
        values = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (p.strip() for p in line.partition("="))
            if not sep:
                raise ValueError(f"line {lineno}: expected 'key = value'")
            if key not in known:
                raise ValueError(f"line {lineno}: unknown coefficient {key!r}")
            values[key] = float(value)
        return cls(**values)


@dataclass(frozen=True)
class CostReport:
    comparisons: int
    updates: int
    frames_transmitted: int
    bytes_transmitted: float
    energy_mj: float

    def to_dict(self) -> dict:
        return asdict(self)


def tally(report) -> Counts:
    """Column sums of a SessionReport."""
    rows = report.rows
    return Counts(
        comparisons=sum(r.outcome.comparisons for r in rows),
        updates=sum(r.outcome.updates for r in rows),
        frames_transmitted=sum(1 for r in rows if r.outcome.alarmed),
        bytes_transmitted=sum(r.bytes_tx for r in rows),
    )


def estimate_energy(counts: Counts, coeffs: EnergyCoefficients) -> float:
    return (coeffs.per_comparison * counts.comparisons
            + coeffs.per_update * counts.updates
            + coeffs.per_tx_byte * counts.bytes_transmitted)


def cost_report(counts: Counts, coeffs: EnergyCoefficients) -> CostReport:
    return CostReport(counts.comparisons, counts.updates, counts.frames_transmitted,
                      counts.bytes_transmitted, estimate_energy(counts, coeffs))


def calibrate(table: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope through the origin of energy against comparisons."""
    table = list(table)
    sxx = sum(x * x for x, _ in table)
    if sxx == 0:
        raise DegenerateInput("calibration needs at least one point with comparisons > 0")
    return sum(x * y for x, y in table) / sxx


def default_coefficients() -> EnergyCoefficients:
    return EnergyCoefficients(per_comparison=calibrate(REFERENCE_TABLE))


def savings_factor(n: int, placement_size: int) -> float:
    """Full-scan comparisons over decimated comparisons on an n x n grid."""
    if placement_size < 1:
        raise ValueError("placement_size must be >= 1")
    return n * n / placement_size
