import pytest

from queensdetect.config import parse_config
from queensdetect.detection import ZeroDiffPolicy
from queensdetect.errors import MissingRequired, RangeError, UnknownKey


def test_threshold_only():
    cfg = parse_config("threshold = 10\n")
    assert cfg.threshold == 10
    assert (cfg.block_size, cfg.queens_n, cfg.double, cfg.hybrid_k) == (8, None, True, None)
    assert cfg.zero_diff_policy is ZeroDiffPolicy.HOLD
    assert (cfg.tx_ratio, cfg.seed) == (1.0, 0)


def test_range_error():
    with pytest.raises(RangeError) as info:
        parse_config("threshold = 300")
    assert info.value.key == "threshold"


def test_missing_threshold():
    with pytest.raises(MissingRequired):
        parse_config("")


def test_unknown_key():
    with pytest.raises(UnknownKey):
        parse_config("threshold = 1\ncolour = red")


def test_comments_and_types():
    cfg = parse_config("""
        # detector
        threshold = 20   # strict >
        double = false
        hybrid_k = 5
        zero_diff_policy = literal_decrement
        tx_ratio = 0.1
        queens_n = none
    """)
    assert cfg.double is False and cfg.hybrid_k == 5 and cfg.tx_ratio == 0.1
    assert cfg.zero_diff_policy is ZeroDiffPolicy.LITERAL_DECREMENT
    assert cfg.queens_n is None


def test_overrides_win():
    cfg = parse_config("threshold = 10\nblock_size = 4", {"threshold": 30, "block_size": None})
    assert (cfg.threshold, cfg.block_size) == (30, 4)
    assert parse_config("", {"threshold": 7}).threshold == 7


@pytest.mark.parametrize("line", ["block_size = 0", "hybrid_k = 0", "update_step = 256",
                                  "tx_ratio = -1", "threshold = ten", "double = maybe"])
def test_bad_values(line):
    with pytest.raises(RangeError):
        parse_config("threshold = 5\n" + line)
