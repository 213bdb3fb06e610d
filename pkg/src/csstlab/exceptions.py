"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CsstError(Exception):
    """Base class for all errors raised by csstlab."""


class DimensionError(CsstError, ValueError):
    """Lengths or shapes of the operands do not agree."""


class ContainmentError(CsstError, ValueError):
    """A pair of codes that must be nested is not."""


class InvalidGeneratorError(CsstError, ValueError):
    """A polynomial does not generate a cyclic code of the requested length."""


class UndefinedDistanceError(CsstError, ValueError):
    """Distance requested for an empty set of words (zero code or equal codes)."""


class ResourceGuardError(CsstError, RuntimeError):
    """An enumeration would exceed a fixed size guard."""


class PreconditionError(CsstError, ValueError):
    """A construction was refused because a named condition failed.

    ``violated`` is a short machine-readable tag, e.g. ``"c2_self_orthogonal"``.
    """

    def __init__(self, violated: str, message: str | None = None):
        self.violated = violated
        super().__init__(message or violated)


class ParseError(CsstError, ValueError):
    """Malformed input file or input string."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += source
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)
