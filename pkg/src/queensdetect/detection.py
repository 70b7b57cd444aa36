"""Background-subtraction motion detectors over block grids.

Two scans share one background model:

* ``scan_queens`` probes only the decimation cells, stops at the first cell
  whose difference exceeds the threshold, and nudges every probed
  below-threshold cell one step toward the current frame.
* ``scan_full`` is the baseline: every block is compared, no early exit.

``run_pipeline`` drives a frame stream through either scan (optionally
interleaving full scans every k-th frame) and hands alarmed frames to a sink.
"""
from __future__ import annotations

import csv
import enum
import io
import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import DimensionMismatch, EmptySource, OutOfBounds, SinkUnavailable
from .imaging import BlockGrid, Frame, encode_pgm, to_block_grid
from .placement import GridCells

log = logging.getLogger(__name__)


class ZeroDiffPolicy(str, enum.Enum):
    HOLD = "hold"
    LITERAL_DECREMENT = "literal_decrement"


@dataclass(frozen=True)
class DetectorConfig:
    threshold: int
    zero_diff_policy: ZeroDiffPolicy = ZeroDiffPolicy.HOLD
    update_step: int = 1

    def __post_init__(self):
        if not isinstance(self.threshold, (int, np.integer)) or not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must be an integer in [0, 255], got {self.threshold!r}")
        if not isinstance(self.update_step, (int, np.integer)) or not 1 <= self.update_step <= 255:
            raise ValueError(f"update_step must be an integer in [1, 255], got {self.update_step!r}")
        object.__setattr__(self, "zero_diff_policy", ZeroDiffPolicy(self.zero_diff_policy))


@dataclass
class BackgroundModel:
    grid: BlockGrid

    @property
    def values(self) -> np.ndarray:
        return self.grid.values

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape

    def copy(self) -> "BackgroundModel":
        return BackgroundModel(self.grid.copy())


@dataclass(frozen=True)
class DetectionOutcome:
    alarmed: bool
    trigger: Optional[tuple[int, int, int]]  # (row, col, signed diff)
    comparisons: int
    updates: int


@dataclass(frozen=True)
class HybridSchedule:
    """Run the full scan on frames whose index is a multiple of ``k``."""

    k: Optional[int] = None

    def __post_init__(self):
        if self.k is not None and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"hybrid period must be a positive integer, got {self.k!r}")

    def detector_for(self, index: int) -> str:
        if self.k is not None and index % self.k == 0:
            return "full"
        return "queens"


def init_background(grid: BlockGrid) -> BackgroundModel:
    return BackgroundModel(grid.copy())


def _check_dims(bg: BackgroundModel, cur: BlockGrid) -> None:
    if bg.shape != cur.shape:
        raise DimensionMismatch(f"background is {bg.shape}, current grid is {cur.shape}")


def _step_toward(bg: int, s: int, cfg: DetectorConfig) -> int:
    if s > 0:
        return min(bg + cfg.update_step, 255)
    if s < 0 or cfg.zero_diff_policy is ZeroDiffPolicy.LITERAL_DECREMENT:
        return max(bg - cfg.update_step, 0)
    return bg


def scan_queens(bg: BackgroundModel, cur: BlockGrid, cells: GridCells | Iterable,
                cfg: DetectorConfig) -> DetectionOutcome:
    """Decimated scan with early exit; mutates ``bg`` in place."""
    _check_dims(bg, cur)
    rows, cols = bg.shape
    b, c = bg.values, cur.values
    comparisons = updates = 0
    for r, q in cells:
        if not (0 <= r < rows and 0 <= q < cols):
            raise OutOfBounds(f"queen cell {(r, q)} outside {rows}x{cols} grid")
        comparisons += 1
        old = int(b[r, q])
        s = int(c[r, q]) - old
        if abs(s) > cfg.threshold:
            return DetectionOutcome(True, (r, q, s), comparisons, updates)
        new = _step_toward(old, s, cfg)
        if new != old:
            b[r, q] = new
            updates += 1
    return DetectionOutcome(False, None, comparisons, updates)


def scan_full(bg: BackgroundModel, cur: BlockGrid, cfg: DetectorConfig) -> DetectionOutcome:
    """Compare every block (row-major); mutates ``bg`` in place.

    The first above-threshold block in row-major order is reported as the
    trigger. Above-threshold blocks keep their background value.
    """
    _check_dims(bg, cur)
    b = bg.values
    s = cur.values - b
    above = np.abs(s) > cfg.threshold
    new = b.copy()
    new[s > 0] += cfg.update_step
    lower = s < 0
    if cfg.zero_diff_policy is ZeroDiffPolicy.LITERAL_DECREMENT:
        lower |= s == 0
    new[lower] -= cfg.update_step
    np.clip(new, 0, 255, out=new)
    new[above] = b[above]
    updates = int(np.count_nonzero(new != b))
    b[...] = new

    trigger = None
    hits = np.flatnonzero(above)
    if hits.size:
        r, q = divmod(int(hits[0]), b.shape[1])
        trigger = (r, q, int(s[r, q]))
    return DetectionOutcome(trigger is not None, trigger, int(s.size), updates)


@dataclass(frozen=True)
class DeliveryRecord:
    frame_index: int
    path: str
    trigger: Optional[tuple[int, int, int]]
    bytes: float


MANIFEST_HEADER = ["frame_index", "trigger_row", "trigger_col", "diff", "bytes"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


class DirectorySink:
    """Stores alarmed frames as ``frame_<index>.pgm`` plus an ``alarms.csv`` manifest."""

    def __init__(self, directory):
        self.directory = os.fspath(directory)
        self.manifest = os.path.join(self.directory, "alarms.csv")
        self._ready = False

    def open(self) -> None:
        """Create the directory and a fresh manifest. Idempotent."""
        if self._ready:
            return
        try:
            os.makedirs(self.directory, exist_ok=True)
            with open(self.manifest, "w", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerow(MANIFEST_HEADER)
        except OSError as exc:
            raise SinkUnavailable(f"cannot write sink {self.directory!r}: {exc}") from exc
        self._ready = True

    def deliver(self, index: int, frame: Frame, outcome: DetectionOutcome,
                nbytes: float) -> DeliveryRecord:
        self.open()
        path = os.path.join(self.directory, f"frame_{index:04d}.pgm")
        trig = outcome.trigger or (None, None, None)
        try:
            with open(path, "wb") as fh:
                fh.write(encode_pgm(frame))
            with open(self.manifest, "a", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerow(
                    [index, *(_fmt(t) for t in trig), _fmt(nbytes)])
        except OSError as exc:
            raise SinkUnavailable(f"cannot write sink {self.directory!r}: {exc}") from exc
        return DeliveryRecord(index, path, outcome.trigger, nbytes)


class MemorySink:
    """Keeps deliveries in a list; handy for tests and library use."""

    def __init__(self):
        self.deliveries: list[tuple[int, Frame, DetectionOutcome, float]] = []

    def deliver(self, index, frame, outcome, nbytes):
        self.deliveries.append((index, frame, outcome, nbytes))
        return DeliveryRecord(index, "", outcome.trigger, nbytes)


def send_alarm(index: int, frame: Frame, outcome: DetectionOutcome, sink,
               nbytes: float | None = None) -> DeliveryRecord:
    if nbytes is None:
        nbytes = float(frame.nbytes)
    return sink.deliver(index, frame, outcome, nbytes)


@dataclass(frozen=True)
class ReportRow:
    frame_index: int
    detector: str
    outcome: DetectionOutcome
    bytes_tx: float


REPORT_HEADER = ["frame_index", "detector", "alarmed", "trigger_row", "trigger_col",
                 "diff", "comparisons", "updates", "bytes_tx"]


@dataclass
class SessionReport:
    rows: list[ReportRow] = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    @property
    def totals(self) -> dict:
        return {
            "frames": len(self.rows),
            "alarms": sum(r.outcome.alarmed for r in self.rows),
            "comparisons": sum(r.outcome.comparisons for r in self.rows),
            "updates": sum(r.outcome.updates for r in self.rows),
            "bytes": sum(r.bytes_tx for r in self.rows),
        }

    def alarm_indices(self) -> list[int]:
        return [r.frame_index for r in self.rows if r.outcome.alarmed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for row in self.rows:
            o = row.outcome
            trig = o.trigger or (None, None, None)
            w.writerow([row.frame_index, row.detector, int(o.alarmed), *(_fmt(t) for t in trig),
                        o.comparisons, o.updates, _fmt(row.bytes_tx)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SessionReport":
        reader = csv.DictReader(io.StringIO(text))
        missing = set(REPORT_HEADER) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"report CSV lacks columns: {sorted(missing)}")
        rows = []
        for rec in reader:
            alarmed = rec["alarmed"].strip() in ("1", "true", "True")
            trigger = None
            if alarmed:
                trigger = (int(rec["trigger_row"]), int(rec["trigger_col"]), int(rec["diff"]))
            outcome = DetectionOutcome(alarmed, trigger, int(rec["comparisons"]), int(rec["updates"]))
            rows.append(ReportRow(int(rec["frame_index"]), rec["detector"], outcome,
                                  float(rec["bytes_tx"] or 0)))
        return cls(rows)


def run_pipeline(frames: Iterable[Frame], cells: GridCells, cfg: DetectorConfig,
                 schedule: HybridSchedule | None = None, sink=None, *,
                 block_size: int = 8, tx_ratio: float = 1.0) -> SessionReport:
    """Run the detector over a frame stream.

    Frame 0 seeds the background. Each later frame ``i`` is block-averaged
    and scanned; on alarm the original frame goes to ``sink`` and the report
    records ``frame.nbytes * tx_ratio`` transmitted bytes. The background is
    never reset or overwritten on alarm.
    """
    schedule = schedule or HybridSchedule()
    if tx_ratio < 0:
        raise ValueError(f"tx_ratio must be non-negative, got {tx_ratio}")
    it = iter(frames)
    try:
        first = next(it)
    except StopIteration:
        raise EmptySource("frame source is empty") from None
    dims = (first.width, first.height)
    bg = init_background(to_block_grid(first, block_size))
    if (cells.rows, cells.cols) != bg.shape:
        raise DimensionMismatch(
            f"placement is for a {cells.rows}x{cells.cols} grid, frames give {bg.shape}")
    if sink is not None and hasattr(sink, "open"):
        sink.open()
    report = SessionReport()
    for i, frame in enumerate(it, start=1):
        if (frame.width, frame.height) != dims:
            raise DimensionMismatch(
                f"frame {i} is {frame.width}x{frame.height}, expected {dims[0]}x{dims[1]}")
        cur = to_block_grid(frame, block_size)
        detector = schedule.detector_for(i)
        if detector == "full":
            outcome = scan_full(bg, cur, cfg)
        else:
            outcome = scan_queens(bg, cur, cells, cfg)
        nbytes = 0.0
        if outcome.alarmed:
            nbytes = frame.nbytes * tx_ratio
            log.info("frame %d: alarm at %s", i, outcome.trigger)
            if sink is not None:
                try:
                    send_alarm(i, frame, outcome, sink, nbytes)
                except SinkUnavailable as exc:
                    report.rows.append(ReportRow(i, detector, outcome, nbytes))
                    exc.report = report
                    raise
        report.rows.append(ReportRow(i, detector, outcome, nbytes))
    return report
