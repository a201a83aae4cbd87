"""Finite-dimensional commutative algebras with a weight functional.

An algebra is given by symmetric structure constants (only pairs i <= j are
stored; missing pairs multiply to zero) together with the values of the
weight functional on the basis.  Elements carry exact rational coordinates;
identity checking replaces them with polynomial indeterminates, so a verdict
is a statement about every element, not a sample.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

from .errors import AlgebraMismatchError, ValidationError
from .magma import MagmaPoly, MagmaTerm
from .multipoly import MultiPoly
from .qmatrix import QMatrix
from .rationals import format_rational, parse_rational

Scalar = Union[Fraction, int]
ProductTable = Mapping[tuple[int, int], Sequence[Scalar]]


class WeightedAlgebra:
    """Commutative algebra of finite dimension with weight functional."""

    __slots__ = ("dim", "basis_names", "weight", "_table")

    def __init__(self, dim: int, products: ProductTable,
                 weight: Sequence[Scalar],
                 basis_names: Sequence[str] | None = None) -> None:
        if dim < 1:
            raise ValidationError("dimension must be positive")
        if len(weight) != dim:
            raise ValidationError("weight vector length must equal dim")
        names = list(basis_names) if basis_names is not None else [f"e{i}" for i in range(dim)]
        if len(names) != dim:
            raise ValidationError("basis_names length must equal dim")
        table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (i, j), vec in products.items():
            if not (0 <= i <= j < dim):
                raise ValidationError(f"product key ({i},{j}) must satisfy 0 <= i <= j < dim")
            v = tuple(Fraction(c) for c in vec)
            if len(v) != dim:
                raise ValidationError(f"product vector for ({i},{j}) has wrong length")
            if any(v):
                table[(i, j)] = v
        self.dim = dim
        self.basis_names = tuple(names)
        self.weight = tuple(Fraction(w) for w in weight)
        self._table = table

    # -- construction of elements ------------------------------------------

    def element(self, coords: Sequence) -> "Element":
        if len(coords) != self.dim:
            raise ValidationError("coordinate length must equal dim")
        return Element(self, tuple(coords))

    def basis_element(self, i: int) -> "Element":
        return self.element([Fraction(1) if k == i else Fraction(0) for k in range(self.dim)])

    def zero(self) -> "Element":
        return self.element([Fraction(0)] * self.dim)

    def generic_element(self) -> "Element":
        """Element whose coordinates are the indeterminates t_0..t_{dim-1}."""
        return Element(self, tuple(MultiPoly.variable(self.dim, i) for i in range(self.dim)))

    # -- structure ----------------------------------------------------------

    def product_vector(self, i: int, j: int) -> tuple[Fraction, ...]:
        if i > j:
            i, j = j, i
        return self._table.get((i, j), (Fraction(0),) * self.dim)

    def product_pairs(self) -> Iterator[tuple[tuple[int, int], tuple[Fraction, ...]]]:
        yield from self._table.items()

    def _mul_coords(self, xc: Sequence, yc: Sequence) -> "Element":
        zero = xc[0] * 0
        acc = [zero] * self.dim
        for (i, j), vec in self._table.items():
            c = xc[i] * yc[i] if i == j else xc[i] * yc[j] + xc[j] * yc[i]
            if not c:
                continue
            for k, g in enumerate(vec):
                if g:
                    acc[k] = acc[k] + c * g
        return Element(self, tuple(acc))

    def validate(self) -> "AlgebraValidation":
        """Check that the weight is a nonzero algebra homomorphism."""
        failures = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                vec = self.product_vector(i, j)
                lhs = sum((g * w for g, w in zip(vec, self.weight)), Fraction(0))
                if lhs != self.weight[i] * self.weight[j]:
                    failures.append((i, j))
        return AlgebraValidation(weight_nonzero=any(self.weight), failures=failures)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.weight == other.weight
                and self.basis_names == other.basis_names and self._table == other._table)

    def __repr__(self) -> str:
        return f"WeightedAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


@dataclass
class AlgebraValidation:
    weight_nonzero: bool
    failures: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.weight_nonzero and not self.failures


class Element:
    """Algebra element with exact coordinates (rational or polynomial)."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeightedAlgebra, coords: tuple) -> None:
        self.algebra = algebra
        self.coords = coords

    def _compatible(self, other: "Element") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def weight(self):
        acc = Fraction(0)
        for c, w in zip(self.coords, self.algebra.weight):
            if w:
                acc = acc + c * w
        return acc

    def __add__(self, other: "Element") -> "Element":
        self._compatible(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._compatible(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._compatible(other)
            return self.algebra._mul_coords(self.coords, other.coords)
        return Element(self.algebra, tuple(a * other for a in self.coords))

    def __rmul__(self, scalar) -> "Element":
        return Element(self.algebra, tuple(scalar * a for a in self.coords))

    def principal_power(self, k: int) -> "Element":
        """x^k = x * x^(k-1), k >= 1."""
        if k < 1:
            raise ValueError("power must be >= 1")
        acc = self
        for _ in range(k - 1):
            acc = self * acc
        return acc

    def plenary_power(self, k: int) -> "Element":
        """x^[k] = x^[k-1] * x^[k-1], k >= 1."""
        if k < 1:
            raise ValueError("power must be >= 1")
        acc = self
        for _ in range(k - 1):
            acc = acc * acc
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __repr__(self) -> str:
        return f"Element({', '.join(str(c) for c in self.coords)})"


def left_mult_matrix(x: Element) -> QMatrix:
    """Matrix of y |-> x*y in the algebra basis (columns are images)."""
    A = x.algebra
    return QMatrix.from_columns([(x * A.basis_element(j)).coords for j in range(A.dim)])


# ---------------------------------------------------------------------------
# identity evaluation

def _eval_term(t: MagmaTerm, x: Element, cache: dict) -> Element:
    val = cache.get(t)
    if val is None:
        if t.is_leaf:
            val = x
        else:
            val = _eval_term(t.left, x, cache) * _eval_term(t.right, x, cache)
        cache[t] = val
    return val


def eval_weighted(f: MagmaPoly, x: Element) -> Element:
    """Weight-homogenized value sum_i w(x)^(deg f - deg f_i) * f_i(x)."""
    A = x.algebra
    if f.is_zero:
        return A.zero()
    degf = f.degree()
    w = x.weight()
    cache: dict[MagmaTerm, Element] = {}
    acc = A.zero()
    for t, c in f.terms.items():
        scalar = c * w ** (degf - t.degree)
        if scalar:
            acc = acc + scalar * _eval_term(t, x, cache)
    return acc


@dataclass
class IdentityCheck:
    holds: bool
    witness: Element | None


def _candidate_values(count: int) -> list[Fraction]:
    # 0, 1, -1, 2, -2, ... cheapest witnesses first
    vals = [Fraction(0)]
    k = 1
    while len(vals) < count:
        vals.append(Fraction(k))
        if len(vals) < count:
            vals.append(Fraction(-k))
        k += 1
    return vals


def _index_tuples(n: int, budget: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        if budget <= cap:
            yield (budget,)
        return
    for first in range(min(cap, budget), -1, -1):
        for rest in _index_tuples(n - 1, budget - first, cap):
            yield (first,) + rest


def holds_identity(A: WeightedAlgebra, f: MagmaPoly) -> IdentityCheck:
    """Symbolic check of the weight-homogenized identity at a generic element.

    On failure a concrete rational witness is located by scanning an integer
    grid large enough that a nonzero coordinate polynomial must show there.
    """
    value = eval_weighted(f, A.generic_element())
    polys: list[MultiPoly] = [c for c in value.coords if c]
    if not polys:
        return IdentityCheck(holds=True, witness=None)
    grid = max(5, 2 + max(p.max_var_degree() for p in polys))
    values = _candidate_values(grid)
    cap = grid - 1
    for budget in range(A.dim * cap + 1):
        for idx in _index_tuples(A.dim, budget, cap):
            point = tuple(values[i] for i in idx)
            if any(p.substitute(point) for p in polys):
                return IdentityCheck(holds=False, witness=A.element(point))
    raise AssertionError("unreachable: a nonzero polynomial cannot vanish on the whole grid")


def low_degree_identity_space(A: WeightedAlgebra) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Basis of (a, b, c) with a*X^3 + b*X^2 + c*X an identity of A.

    The only commutative one-variable monomials of degree <= 3 are X, X^2
    and X^3, so an empty basis means no identity of degree < 4.
    """
    gx = A.generic_element()
    w = gx.weight()
    x1 = (w * w) * gx
    x2 = w * gx.principal_power(2)
    x3 = gx.principal_power(3)
    rows = []
    for k in range(A.dim):
        monomials = set()
        for poly in (x3.coords[k], x2.coords[k], x1.coords[k]):
            monomials.update(poly.num)
        for e in sorted(monomials):
            rows.append([x3.coords[k].coeff(e), x2.coords[k].coeff(e), x1.coords[k].coeff(e)])
    if not rows:
        rows = [[Fraction(0)] * 3]
    return [tuple(v) for v in QMatrix(rows).kernel_basis()]


# ---------------------------------------------------------------------------
# generated subalgebras

@dataclass
class Subalgebra:
    """Span of a finite independent family, with closure status."""

    parent: WeightedAlgebra
    basis: list[Element]
    closed: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> QMatrix:
        return QMatrix.from_columns([b.coords for b in self.basis])

    def express(self, elt: Element) -> tuple[Fraction, ...] | None:
        """Coordinates of elt in the basis, or None if outside the span."""
        if not self.basis:
            return None if any(elt.coords) else ()
        return self.matrix().solve(elt.coords)

    def from_coords(self, coords: Sequence[Scalar]) -> Element:
        acc = self.parent.zero()
        for c, b in zip(coords, self.basis):
            acc = acc + c * b
        return acc


def generated_subalgebra(x: Element) -> Subalgebra:
    """Power span x, x^2, ... up to the first linear dependence.

    For parents satisfying the backcrossing identity this span is closed
    under the product; otherwise `closed` reports the actual status.
    """
    if x.is_zero:
        return Subalgebra(x.algebra, [], True)
    powers = [x]
    while True:
        nxt = x * powers[-1]
        if QMatrix.from_columns([p.coords for p in powers]).solve(nxt.coords) is not None:
            break
        powers.append(nxt)
    sub = Subalgebra(x.algebra, powers, True)
    closed = all(
        sub.express(a * b) is not None
        for i, a in enumerate(powers) for b in powers[i:]
    )
    sub.closed = closed
    return sub


def is_weight_homomorphism(A: WeightedAlgebra, eta: Sequence[Scalar]) -> bool:
    """True iff eta is nonzero and multiplicative on all basis products."""
    if len(eta) != A.dim:
        raise ValidationError("functional length must equal dim")
    ef = [Fraction(e) for e in eta]
    if not any(ef):
        return False
    for i in range(A.dim):
        for j in range(i, A.dim):
            vec = A.product_vector(i, j)
            lhs = sum((g * e for g, e in zip(vec, ef)), Fraction(0))
            if lhs != ef[i] * ef[j]:
                return False
    return True


# ---------------------------------------------------------------------------
# JSON form
#
# {"dim": n, "basis_names": [...], "weight": ["1", "0", ...],
#  "products": {"i,j": {"k": "1/2", ...}, ...}}    (absent pairs are zero)

def algebra_to_json(A: WeightedAlgebra) -> dict:
    products: dict[str, dict[str, str]] = {}
    for (i, j) in sorted(A._table):
        vec = A._table[(i, j)]
        products[f"{i},{j}"] = {
            str(k): format_rational(c) for k, c in enumerate(vec) if c
        }
    return {
        "dim": A.dim,
        "basis_names": list(A.basis_names),
        "weight": [format_rational(w) for w in A.weight],
        "products": products,
    }


def algebra_from_json(data: dict) -> WeightedAlgebra:
    try:
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValidationError("dim must be a positive integer")
        weight = [parse_rational(w) for w in data["weight"]]
        names = data.get("basis_names")
        products: dict[tuple[int, int], list[Fraction]] = {}
        for key, entry in data.get("products", {}).items():
            i_s, _, j_s = key.partition(",")
            i, j = int(i_s), int(j_s)
            vec = [Fraction(0)] * dim
            for k_s, val in entry.items():
                k = int(k_s)
                if not 0 <= k < dim:
                    raise ValidationError(f"component index {k} out of range in {key!r}")
                vec[k] = parse_rational(val)
            products[(i, j)] = vec
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed algebra file: {exc}") from exc
    return WeightedAlgebra(dim, products, weight, names)


def dumps_algebra(A: WeightedAlgebra) -> str:
    return json.dumps(algebra_to_json(A), indent=2, sort_keys=True) + "\n"


def loads_algebra(text: str) -> WeightedAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from exc
    return algebra_from_json(data)
