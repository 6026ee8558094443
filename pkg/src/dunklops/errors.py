"""Exception hierarchy shared by all dunklops modules."""

from __future__ import annotations


class DunklopsError(Exception):
    """Base class for every error raised deliberately by this package."""


class FieldError(DunklopsError, ValueError):
    """Bad scalar-field request (unsupported k, mixed contexts, ...)."""


class ScalarInversionError(DunklopsError, ZeroDivisionError):
    """Inversion of the zero scalar or the zero rational function."""


class CoeffError(DunklopsError, ValueError):
    """Invalid coefficient-ring operation (non-factorable denominator, ...)."""


class AlgebraError(DunklopsError, ValueError):
    """Invalid operator-algebra operation."""


class ParseError(DunklopsError, ValueError):
    """Malformed expression text.  Carries the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int, text: str | None = None):
        super().__init__(message)
        self.pos = pos
        self.text = text

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        base = super().__str__()
        return f"{base} (at position {self.pos})"


class OracleError(DunklopsError, RuntimeError):
    """Numeric oracle could not produce a verdict (e.g. redraw cap hit)."""
