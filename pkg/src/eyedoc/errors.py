"""Error types shared across the package.

Class names double as wire error codes in the HTTP protocol, so they must
stay stable.
"""

from __future__ import annotations


class EyedocError(Exception):
    """Base class; `code` is the protocol error identifier."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NonMonotonicTimestamp(EyedocError):
    pass


class InvalidConfig(EyedocError):
    pass


class InsufficientCalibration(EyedocError):
    pass


class DegenerateCalibration(EyedocError):
    pass


class TraceParseError(EyedocError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TraceNonMonotonic(EyedocError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidSpec(EyedocError):
    pass


class TrackerUnreachable(EyedocError):
    pass


class GenerationSkew(EyedocError):
    pass


class UnknownSession(EyedocError):
    pass


class BadSeq(EyedocError):
    pass


class SchemaError(EyedocError):
    pass


class WrongSourceKind(EyedocError):
    pass


class SourceUnavailable(EyedocError):
    pass


class RootNotFound(EyedocError):
    pass


class LogParseError(EyedocError):
    pass


class SeqGap(EyedocError):
    pass
