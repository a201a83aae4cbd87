"""Free commutative nonassociative polynomials in one indeterminate X.

Monomials are binary product trees kept in canonical form: the children of
every node are ordered (degree first, then structure), so commutatively
equal products are structurally identical objects.

Text grammar (whitespace insignificant)::

    poly    := [sign] term { sign term }        sign := "+" | "-"
    term    := [ rational "*" ] factor | rational
    factor  := atom [ "*" atom ]                (the product is binary)
    atom    := "X" [ power ] | "(" poly ")"
    power   := "^" integer | "^[" integer "]"   (integer >= 1)

X^k denotes the principal power x(x(x...)), X^[k] the plenary power.
Chains like "X*X*X" are rejected: without parentheses the grouping of a
nonassociative product is ambiguous.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError

Scalar = Union[Fraction, int]


class MagmaTerm:
    """A commutative binary product tree over the single indeterminate X."""

    __slots__ = ("left", "right", "degree", "key", "_hash")

    def __init__(self, left: "MagmaTerm | None" = None,
                 right: "MagmaTerm | None" = None) -> None:
        if left is None or right is None:
            self.left = self.right = None
            self.degree = 1
            self.key: tuple = (1,)
        else:
            if right.key < left.key:
                left, right = right, left
            self.left = left
            self.right = right
            self.degree = left.degree + right.degree
            self.key = (self.degree, left.key, right.key)
        self._hash = hash(self.key)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __mul__(self, other: "MagmaTerm") -> "MagmaTerm":
        return MagmaTerm(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagmaTerm):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other: "MagmaTerm") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MagmaTerm({term_text(self)})"


X = MagmaTerm()


def principal_term(k: int) -> MagmaTerm:
    """x^k = x * x^(k-1); requires k >= 1."""
    if k < 1:
        raise ValueError("power must be >= 1")
    t = X
    for _ in range(k - 1):
        t = X * t
    return t


def plenary_term(k: int) -> MagmaTerm:
    """x^[k] = x^[k-1] * x^[k-1]; requires k >= 1."""
    if k < 1:
        raise ValueError("power must be >= 1")
    t = X
    for _ in range(k - 1):
        t = t * t
    return t


def principal_exponent(t: MagmaTerm) -> int | None:
    """k such that t = x^k, or None."""
    k = 1
    while not t.is_leaf:
        if not t.left.is_leaf:
            return None
        t = t.right
        k += 1
    return k


def plenary_exponent(t: MagmaTerm) -> int | None:
    """k such that t = x^[k], or None."""
    k = 1
    while not t.is_leaf:
        if t.left != t.right:
            return None
        t = t.left
        k += 1
    return k


class MagmaPoly:
    """Linear combination of canonical magma terms with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[MagmaTerm, Scalar] |
                 Iterable[tuple[MagmaTerm, Scalar]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[MagmaTerm, Fraction] = {}
        for t, c in items:
            q = acc.get(t, Fraction(0)) + Fraction(c)
            if q:
                acc[t] = q
            else:
                acc.pop(t, None)
        self.terms = acc

    @classmethod
    def zero(cls) -> "MagmaPoly":
        return cls()

    @classmethod
    def from_term(cls, t: MagmaTerm, c: Scalar = 1) -> "MagmaPoly":
        return cls([(t, c)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagmaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "MagmaPoly") -> "MagmaPoly":
        out = dict(self.terms)
        for t, c in other.terms.items():
            q = out.get(t, Fraction(0)) + c
            if q:
                out[t] = q
            else:
                out.pop(t, None)
        p = MagmaPoly()
        p.terms = out
        return p

    def __neg__(self) -> "MagmaPoly":
        p = MagmaPoly()
        p.terms = {t: -c for t, c in self.terms.items()}
        return p

    def __sub__(self, other: "MagmaPoly") -> "MagmaPoly":
        return self + (-other)

    def __rmul__(self, scalar: Scalar) -> "MagmaPoly":
        q = Fraction(scalar)
        p = MagmaPoly()
        p.terms = {} if not q else {t: c * q for t, c in self.terms.items()}
        return p

    def degree(self) -> int:
        """Maximum term degree; 0 for the zero polynomial."""
        return max((t.degree for t in self.terms), default=0)

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def homogeneous_split(self) -> dict[int, "MagmaPoly"]:
        """Decomposition by term degree, keyed by degree."""
        out: dict[int, MagmaPoly] = {}
        for t, c in self.terms.items():
            out.setdefault(t.degree, MagmaPoly()).terms[t] = c
        return out

    def is_homogeneous(self) -> bool:
        return len(self.homogeneous_split()) <= 1

    def __repr__(self) -> str:
        return f"MagmaPoly({print_poly(self)})"


# ---------------------------------------------------------------------------
# printing

def _atom_text(t: MagmaTerm) -> str:
    k = principal_exponent(t)
    if k is not None:
        return "X" if k == 1 else f"X^{k}"
    k = plenary_exponent(t)
    if k is not None:
        return f"X^[{k}]"
    return f"({term_text(t)})"


def term_text(t: MagmaTerm) -> str:
    """Canonical text of a single term (without coefficient)."""
    k = principal_exponent(t)
    if k is not None:
        return "X" if k == 1 else f"X^{k}"
    k = plenary_exponent(t)
    if k is not None:
        return f"X^[{k}]"
    return f"{_atom_text(t.left)}*{_atom_text(t.right)}"


def print_poly(p: MagmaPoly) -> str:
    """Text form that re-parses to an equal polynomial."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for t in sorted(p.terms, key=lambda t: t.key, reverse=True):
        c = p.terms[t]
        mag = abs(c)
        body = term_text(t) if mag == 1 else f"{mag}*{term_text(t)}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_SYMBOLS = {"*": "STAR", "+": "PLUS", "-": "MINUS", "^": "CARET", "/": "SLASH",
            "(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch in ("X", "x"):
            tokens.append(("X", ch, i))
            i += 1
            continue
        kind = _SYMBOLS.get(ch)
        if kind is None:
            raise ParseError(f"unexpected character {ch!r}", i)
        tokens.append((kind, ch, i))
        i += 1
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> MagmaPoly:
        poly = self.poly()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return poly

    def poly(self) -> MagmaPoly:
        sign = Fraction(1)
        if self.peek()[0] in ("PLUS", "MINUS"):
            if self.next()[0] == "MINUS":
                sign = Fraction(-1)
        acc = sign * self.term()
        while self.peek()[0] in ("PLUS", "MINUS"):
            sign = Fraction(1) if self.next()[0] == "PLUS" else Fraction(-1)
            acc = acc + sign * self.term()
        return acc

    def term(self) -> MagmaPoly:
        kind, _, pos = self.peek()
        if kind == "INT":
            coeff = self.rational()
            if self.peek()[0] == "STAR":
                self.next()
                return coeff * self.factor()
            # A bare rational is only meaningful as the zero polynomial:
            # the free algebra has no unit to carry a constant.
            if coeff != 0:
                raise ParseError("nonzero constant term has no meaning here", pos)
            return MagmaPoly.zero()
        return self.factor()

    def rational(self) -> Fraction:
        num = int(self.expect("INT")[1])
        if self.peek()[0] == "SLASH":
            self.next()
            tok = self.expect("INT")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> MagmaPoly:
        left = self.atom()
        if self.peek()[0] != "STAR":
            return left
        self.next()
        right = self.atom()
        tok = self.peek()
        if tok[0] == "STAR":
            raise ParseError(
                "product is non-associative: parenthesize chains like a*(b*c)", tok[2])
        return _poly_product(left, right)

    def atom(self) -> MagmaPoly:
        kind, value, pos = self.next()
        if kind == "X":
            if self.peek()[0] != "CARET":
                return MagmaPoly.from_term(X)
            self.next()
            if self.peek()[0] == "LBRACK":
                self.next()
                k = self.integer_at_least_one()
                self.expect("RBRACK")
                return MagmaPoly.from_term(plenary_term(k))
            k = self.integer_at_least_one()
            return MagmaPoly.from_term(principal_term(k))
        if kind == "LPAREN":
            inner = self.poly()
            self.expect("RPAREN")
            return inner
        raise ParseError(f"expected 'X', '(' or a coefficient, found {value or 'end of input'!r}", pos)

    def integer_at_least_one(self) -> int:
        tok = self.expect("INT")
        k = int(tok[1])
        if k < 1:
            raise ParseError("power must be >= 1", tok[2])
        return k


def _poly_product(a: MagmaPoly, b: MagmaPoly) -> MagmaPoly:
    out = MagmaPoly()
    for ta, ca in a.terms.items():
        for tb, cb in b.terms.items():
            t = ta * tb
            q = out.terms.get(t, Fraction(0)) + ca * cb
            if q:
                out.terms[t] = q
            else:
                out.terms.pop(t, None)
    return out


def parse_poly(text: str) -> MagmaPoly:
    """Parse the grammar above into a canonical MagmaPoly."""
    return _Parser(text).parse()


BACKCROSSING = MagmaPoly([
    (plenary_term(3), 1),      # X^2*X^2
    (principal_term(3), -2),
    (principal_term(2), 1),
])
