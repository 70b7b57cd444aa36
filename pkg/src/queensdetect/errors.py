"""Exception hierarchy shared by every subsystem."""


class QueensDetectError(Exception):
    """Base class for all errors raised by this package."""


class NoSolution(QueensDetectError, ValueError):
    def __init__(self, n):
        super().__init__(f"no solution for n={n}")
        self.n = n


class OutOfBounds(QueensDetectError, ValueError):
    pass


class GridTooSmall(QueensDetectError, ValueError):
    pass


class PGMError(QueensDetectError, ValueError):
    """Malformed or unsupported Netpbm input."""


class BadMagic(PGMError):
    pass


class MaxvalUnsupported(PGMError):
    pass


class Truncated(PGMError):
    pass


class FrameTooSmall(QueensDetectError, ValueError):
    pass


class DimensionMismatch(QueensDetectError, ValueError):
    pass


class EmptySource(QueensDetectError, ValueError):
    pass


class SinkUnavailable(QueensDetectError, OSError):
    """The sink could not be written. ``report`` holds the partial session, if any."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateInput(QueensDetectError, ValueError):
    pass


class ConfigError(QueensDetectError, ValueError):
    def __init__(self, key, message=None):
        super().__init__(message or key)
        self.key = key


class UnknownKey(ConfigError):
    def __init__(self, key):
        super().__init__(key, f"unknown config key: {key}")


class MissingRequired(ConfigError):
    def __init__(self, key):
        super().__init__(key, f"missing required config key: {key}")


class RangeError(ConfigError):
    def __init__(self, key, value, detail=""):
        msg = f"{key}={value!r} out of range"
        if detail:
            msg += f" ({detail})"
        super().__init__(key, msg)
        self.value = value
