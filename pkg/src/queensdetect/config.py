"""Run configuration: ``key = value`` files plus command-line overrides."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping, Optional

from .detection import DetectorConfig, HybridSchedule, ZeroDiffPolicy
from .errors import MissingRequired, RangeError, UnknownKey

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class RunConfig:
    threshold: int
    block_size: int = 8
    queens_n: Optional[int] = None  # None: min(grid rows, grid cols)
    double: bool = True
    hybrid_k: Optional[int] = None
    zero_diff_policy: ZeroDiffPolicy = ZeroDiffPolicy.HOLD
    update_step: int = 1
    tx_ratio: float = 1.0
    seed: int = 0
    sink_dir: str = "sink"
    report_csv: str = "report.csv"
    summary_json: str = "summary.json"

    def __post_init__(self):
        _in_range("threshold", self.threshold, 0, 255)
        _in_range("block_size", self.block_size, 1, None)
        if self.queens_n is not None:
            _in_range("queens_n", self.queens_n, 1, None)
        if self.hybrid_k is not None:
            _in_range("hybrid_k", self.hybrid_k, 1, None)
        _in_range("update_step", self.update_step, 1, 255)
        if self.tx_ratio < 0:
            raise RangeError("tx_ratio", self.tx_ratio, "must be >= 0")

    def detector_config(self) -> DetectorConfig:
        return DetectorConfig(self.threshold, self.zero_diff_policy, self.update_step)

    def schedule(self) -> HybridSchedule:
        return HybridSchedule(self.hybrid_k)

    def echo(self) -> dict:
        d = asdict(self)
        d["zero_diff_policy"] = self.zero_diff_policy.value
        return d


def _in_range(key, value, lo, hi):
    if value < lo or (hi is not None and value > hi):
        bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise RangeError(key, value, f"must be {bound}")


def _optional_int(text: str) -> Optional[int]:
    return None if text.lower() in ("", "none") else int(text)


def _bool(text: str) -> bool:
    t = text.lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "threshold": int,
    "block_size": int,
    "queens_n": _optional_int,
    "double": _bool,
    "hybrid_k": _optional_int,
    "zero_diff_policy": ZeroDiffPolicy,
    "update_step": int,
    "tx_ratio": float,
    "seed": int,
    "sink_dir": str,
    "report_csv": str,
    "summary_json": str,
}
KEYS = tuple(f.name for f in fields(RunConfig))


def parse_pairs(text: str) -> dict[str, str]:
    """Split config text into raw string values. Later lines win."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (p.strip() for p in line.partition("="))
        if not sep or not key:
            raise UnknownKey(f"{line!r} (line {lineno}: expected 'key = value')")
        if key not in _CONVERTERS:
            raise UnknownKey(key)
        raw[key] = value
    return raw


def build_config(values: Mapping[str, Any]) -> RunConfig:
    """Validate a mapping of raw strings or already-typed values."""
    typed = {}
    for key, value in values.items():
        if key not in _CONVERTERS:
            raise UnknownKey(key)
        if isinstance(value, str):
            try:
                value = _CONVERTERS[key](value)
            except ValueError as exc:
                raise RangeError(key, value, str(exc)) from None
        typed[key] = value
    if "threshold" not in typed:
        raise MissingRequired("threshold")
    return RunConfig(**typed)


def parse_config(text: str, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Parse a config file; non-None ``overrides`` (CLI flags) take precedence."""
    values: dict[str, Any] = dict(parse_pairs(text))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return build_config(values)
