"""Exact rational numbers.

Everything in this package that is "a rational" is an instance of ``RAT``:
``gmpy2.mpq`` when gmpy2 is importable (markedly faster), ``fractions.Fraction``
otherwise.  Both are arbitrary precision and expose ``.numerator`` /
``.denominator``, so the rest of the code never needs to know which one it got.
"""

from __future__ import annotations

try:  # pragma: no cover - exercised implicitly by the whole suite
    from gmpy2 import mpq as RAT

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    from fractions import Fraction as RAT

    HAVE_GMPY2 = False


def rat(num, den=1):
    """Build a rational from ints (or a ``p/q`` string)."""
    return RAT(num, den)


RAT_ZERO = rat(0)
RAT_ONE = rat(1)
