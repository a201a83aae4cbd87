"""Exact scalars: helpers around fractions.Fraction and the text form "p" / "p/q".

Every number that crosses a file or CLI boundary uses this text form; no
floating point appears anywhere in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" with optional leading "-"; anything else is rejected."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ParseError(f"not a rational: {text!r}", 0)
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator: {text!r}", s.index("/") + 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(q: Fraction) -> str:
    """Canonical text form: "p" for integers, "p/q" with q > 0 otherwise."""
    return str(q)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rational coordinates, e.g. "1,0,-1/2"."""
    return tuple(parse_rational(part) for part in text.split(","))


def format_vector(coords: Iterable[Fraction]) -> str:
    return ",".join(str(q) for q in coords)
