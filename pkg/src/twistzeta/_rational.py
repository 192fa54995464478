"""Exact rational scalar type shared by every module.

gmpy2.mpq is preferred because the recursion spends most of its time
multiplying small rationals and mpq is several times faster than
fractions.Fraction on that workload.  Fraction is the drop-in fallback;
both expose .numerator / .denominator and hash equal values equally.
Set TWISTZETA_RATIONAL=fraction (or =gmpy2) to force a choice.
"""

from __future__ import annotations

import os

_forced = os.environ.get("TWISTZETA_RATIONAL", "")
if _forced not in ("", "gmpy2", "fraction"):
    raise RuntimeError("TWISTZETA_RATIONAL must be 'gmpy2' or 'fraction'")

if _forced == "fraction":
    from fractions import Fraction as Rational

    RATIONAL_BACKEND = "fraction"
else:
    try:
        from gmpy2 import mpq as Rational

        RATIONAL_BACKEND = "gmpy2"
    except ImportError:
        if _forced == "gmpy2":
            raise
        from fractions import Fraction as Rational

        RATIONAL_BACKEND = "fraction"

ZERO = Rational(0)
ONE = Rational(1)


def rat(num: int | str, den: int = 1):
    """Build a Rational from ints or from a 'p/q' string.

    >>> rat(3, 6) == rat("1/2")
    True
    """
    if isinstance(num, str):
        if den != 1:
            raise ValueError("string form takes no separate denominator")
        return parse_rational(num)
    return Rational(num, den)


def parse_rational(text: str):
    """Parse 'p' or 'p/q'; the denominator must be positive.

    >>> parse_rational("-4/6") == rat(-2, 3)
    True
    """
    body = text.strip()
    num, sep, den = body.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if d <= 0:
        raise ValueError(f"denominator must be positive: {text!r}")
    return Rational(n, d)


def format_rational(q) -> str:
    """Canonical text: 'p' when the denominator is 1, else 'p/q'."""
    n = q.numerator
    d = q.denominator
    return f"{n}" if d == 1 else f"{n}/{d}"
