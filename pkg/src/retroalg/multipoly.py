"""Sparse multivariate polynomials over the rationals.

Used to evaluate identities at a generic element whose coordinates are the
indeterminates t_0..t_{n-1}.  Coefficients are stored as integers over one
shared positive denominator, so the multiply-accumulate inner loop runs on
plain integers and normalizes (one gcd) only once per operation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterator, Mapping, Sequence, Union

Scalar = Union[Fraction, int]


class MultiPoly:
    """Immutable sparse polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "num", "den")

    def __init__(self, nvars: int, num: Mapping[tuple[int, ...], int] | None = None,
                 den: int = 1) -> None:
        self.nvars = nvars
        terms = {e: int(c) for e, c in (num or {}).items() if c}
        if den < 0:
            den = -den
            terms = {e: -c for e, c in terms.items()}
        if not terms:
            self.num, self.den = {}, 1
            return
        g = den
        for c in terms.values():
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            terms = {e: c // g for e, c in terms.items()}
            den //= g
        self.num, self.den = terms, den

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "MultiPoly":
        q = Fraction(value)
        return cls(nvars, {(0,) * nvars: q.numerator}, q.denominator)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range")
        exps = tuple(1 if k == index else 0 for k in range(nvars))
        return cls(nvars, {exps: 1})

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def terms(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        for e, c in self.num.items():
            yield e, Fraction(c, self.den)

    def coeff(self, exps: tuple[int, ...]) -> Fraction:
        return Fraction(self.num.get(exps, 0), self.den)

    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.num), default=-1)

    def max_var_degree(self) -> int:
        """Largest exponent of any single variable; -1 for zero."""
        return max((max(e) for e in self.num), default=-1)

    def __add__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.constant(self.nvars, other)
        da, db = self.den, other.den
        out = {e: c * db for e, c in self.num.items()}
        for e, c in other.num.items():
            out[e] = out.get(e, 0) + c * da
        return MultiPoly(self.nvars, out, da * db)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.num = {e: -c for e, c in self.num.items()}
        p.den = self.den
        return p

    def __sub__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return self + (-other)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self + (-Fraction(other))

    def __mul__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if isinstance(other, MultiPoly):
            out: dict[tuple[int, ...], int] = {}
            get = out.get
            for ea, ca in self.num.items():
                for eb, cb in other.num.items():
                    e = tuple(map(int.__add__, ea, eb))
                    out[e] = get(e, 0) + ca * cb
            return MultiPoly(self.nvars, out, self.den * other.den)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        q = Fraction(other)
        if not q:
            return MultiPoly(self.nvars)
        out = {e: c * q.numerator for e, c in self.num.items()}
        return MultiPoly(self.nvars, out, self.den * q.denominator)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute(self, values: Sequence[Scalar]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [Fraction(v) for v in values]
        acc = Fraction(0)
        for e, c in self.num.items():
            term = Fraction(c)
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            acc += term
        return acc / self.den

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for e in sorted(self.num, reverse=True):
            c = Fraction(self.num[e], self.den)
            mono = "*".join(
                f"t{i}" if k == 1 else f"t{i}^{k}"
                for i, k in enumerate(e) if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"
