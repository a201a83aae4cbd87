"""Backcrossing structure: the p_k family, linearization, mutation extraction
and the conversions between principal and plenary powers.

For a weight-1 generator x the family p_k = x^k - x^(k-1) (with x^0 = 0)
spans the generated subalgebra; when the parent satisfies the backcrossing
identity the p_k with k >= 2 multiply to zero and p_1 acts as a near-unit,
which is what makes the subalgebra a mutation algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    Element,
    Subalgebra,
    WeightedAlgebra,
    eval_weighted,
    generated_subalgebra,
    holds_identity,
    low_degree_identity_space,
)
from .errors import PreconditionError, RetroalgError, WeightError
from .magma import BACKCROSSING, MagmaPoly
from .qmatrix import QMatrix


def require_weight_one(x: Element) -> None:
    if x.weight() != 1:
        raise WeightError(f"element has weight {x.weight()}, expected 1")


@dataclass
class BackcrossCheck:
    weak: bool
    strict: bool
    low_degree_basis: list[tuple[Fraction, Fraction, Fraction]]
    witness: Element | None = None


def is_backcrossing(A: WeightedAlgebra) -> BackcrossCheck:
    """weak: the backcrossing identity holds; strict: additionally no
    identity of degree < 4 holds."""
    check = holds_identity(A, BACKCROSSING)
    low = low_degree_identity_space(A)
    return BackcrossCheck(
        weak=check.holds,
        strict=check.holds and not low,
        low_degree_basis=low,
        witness=check.witness,
    )


@dataclass
class PSequence:
    """p_1..p_upto for a fixed weight-1 generator (1-based access via p())."""

    generator: Element
    values: list[Element]

    def p(self, k: int) -> Element:
        if not 1 <= k <= len(self.values):
            raise IndexError(f"p_{k} not computed")
        return self.values[k - 1]


def p_sequence(x: Element, upto: int) -> PSequence:
    """p_k = x^k - x^(k-1) for 1 <= k <= upto; requires weight 1."""
    require_weight_one(x)
    if upto < 1:
        raise ValueError("upto must be >= 1")
    values = []
    prev = x.algebra.zero()
    power = x
    for _ in range(upto):
        values.append(power - prev)
        prev = power
        power = x * power
    return PSequence(x, values)


@dataclass
class LemmaTableReport:
    ok: bool
    failures: list[str] = field(default_factory=list)


def lemma_table_check(x: Element, upto: int) -> LemmaTableReport:
    """Verify p_1^2 = p_1 + p_2, p_1 p_i = p_(i+1) and p_i p_j = 0 (i,j >= 2)
    for all indices up to `upto`, exactly."""
    seq = p_sequence(x, max(upto, 2))
    p = seq.values
    failures = []
    if p[0] * p[0] != p[0] + p[1]:
        failures.append("p1*p1 != p1 + p2")
    for i in range(2, upto):
        if p[0] * p[i - 1] != p[i]:
            failures.append(f"p1*p{i} != p{i + 1}")
    for i in range(2, upto + 1):
        for j in range(i, upto + 1):
            if not (p[i - 1] * p[j - 1]).is_zero:
                failures.append(f"p{i}*p{j} != 0")
    return LemmaTableReport(not failures, failures)


def linearized_G(a: Element, b: Element) -> Element:
    """G(a,b) = 2ab - w(a)b - w(b)a, the polarized degree-2 defect."""
    return 2 * (a * b) - a.weight() * b - b.weight() * a


def linearized_R(x: Element, y: Element, z: Element, t: Element) -> Element:
    """Full linearization of (x^2 - w(x)x)^2; vanishes on weak-backcrossing
    algebras."""
    return (linearized_G(x, y) * linearized_G(z, t)
            + linearized_G(x, z) * linearized_G(y, t)
            + linearized_G(x, t) * linearized_G(y, z))


@dataclass
class MutationExtraction:
    """Mutation-algebra structure of the subalgebra generated by a weight-1
    element: basis p_1..p_n, endomorphism M in that basis, weight eta."""

    subalgebra: Subalgebra
    M: QMatrix
    eta: tuple[Fraction, ...]

    def image_of_basis(self, i: int) -> Element:
        """M(p_(i+1)) as an element of the parent algebra."""
        return self.subalgebra.from_coords(self.M.column(i))


def extract_mutation(x: Element) -> MutationExtraction:
    """Mutation structure (p-basis, M, eta) of the subalgebra generated by x.

    M(p_1) = p_1 + p_2, M(p_k) = 2 p_(k+1) for 2 <= k < n, and the last
    column expands 2 p_(n+1) = 2 x p_n in the p-basis (forced by closure).
    """
    require_weight_one(x)
    sub_powers = generated_subalgebra(x)
    n = sub_powers.dim
    report = lemma_table_check(x, upto=n + 1)
    if not report.ok:
        raise PreconditionError(
            "generated subalgebra is not of mutation type: " + "; ".join(report.failures))
    powers = sub_powers.basis
    ps = [powers[0]] + [powers[k] - powers[k - 1] for k in range(1, n)]
    sub = Subalgebra(x.algebra, ps, True)
    pmat = sub.matrix()

    def in_p_coords(elt: Element) -> list[Fraction]:
        coords = pmat.solve(elt.coords)
        if coords is None:
            raise PreconditionError("generated subalgebra is not product-closed")
        return list(coords)

    p2 = x.principal_power(2) - x  # zero when n == 1
    columns = [in_p_coords(ps[0] + p2)]
    for k in range(2, n):
        col = [Fraction(0)] * n
        col[k] = Fraction(2)
        columns.append(col)
    if n >= 2:
        columns.append([2 * c for c in in_p_coords(x * ps[-1])])
    M = QMatrix.from_columns(columns)
    eta = tuple([Fraction(1)] + [Fraction(0)] * (n - 1))

    if tuple(M.row(0)) != eta:
        raise RetroalgError("internal: eta is not fixed by the extracted M")
    images = [sub.from_coords(M.column(i)) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            rhs = Fraction(1, 2) * (eta[j] * images[i] + eta[i] * images[j])
            if ps[i] * ps[j] != rhs:
                raise RetroalgError("internal: extracted M fails the polarized product rule")
    return MutationExtraction(sub, M, eta)


def principal_from_plenary(x: Element, k: int) -> Element:
    """x^(k+1) computed from plenary powers:
    (1/2^(k-1)) x^[k+1] + sum_{i=1}^{k-1} (1/2^i) x^[i+1]."""
    require_weight_one(x)
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = Fraction(1, 2 ** (k - 1)) * x.plenary_power(k + 1)
    for i in range(1, k):
        acc = acc + Fraction(1, 2 ** i) * x.plenary_power(i + 1)
    return acc


def plenary_from_principal(x: Element, k: int) -> Element:
    """x^[k+1] computed from principal powers:
    2^(k-1) x^(k+1) - sum_{i=2}^{k} 2^(i-2) x^i."""
    require_weight_one(x)
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = Fraction(2 ** (k - 1)) * x.principal_power(k + 1)
    for i in range(2, k + 1):
        acc = acc - Fraction(2 ** (i - 2)) * x.principal_power(i)
    return acc


def ker_omega_product_check(x: Element, f: MagmaPoly, g: MagmaPoly) -> Element:
    """f(x) * g(x) for values in ker omega; zero on weak-backcrossing K<x>."""
    require_weight_one(x)
    fx = eval_weighted(f, x)
    gx = eval_weighted(g, x)
    if fx.weight() != 0:
        raise PreconditionError("f(x) does not lie in ker omega")
    if gx.weight() != 0:
        raise PreconditionError("g(x) does not lie in ker omega")
    return fx * gx
