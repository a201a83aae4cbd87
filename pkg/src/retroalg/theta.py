"""Reduction of one-variable nonassociative polynomials on a mutation algebra.

At a weight-1 element x of a mutation algebra (V, M, eta) every magma term
evaluates to a linear combination of x, M(x), M^2(x), ...; the product of
two such values shifts each side by one power of M and halves:

    value(X) = x,   value(t1*t2) = (shift(value(t1)) + shift(value(t2))) / 2

(the bilinear closure of M^p(x) M^q(x) = [M^(p+1)(x) + M^(q+1)(x)] / 2,
using that every term value has coefficient sum 1).  A polynomial identity
f therefore reduces to D(M)(x) = 0 with D a univariate polynomial; the
criterion polynomial is D(2X) and its derivative at 1/2 is the quantity
that decides idempotent existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .backcross import extract_mutation
from .algebra import Element
from .errors import PreconditionError, RetroalgError
from .magma import (
    MagmaPoly,
    MagmaTerm,
    plenary_term,
    principal_exponent,
    principal_term,
    print_poly,
)
from .qmatrix import QMatrix
from .unipoly import UniPoly

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def term_value(t: MagmaTerm) -> tuple[Fraction, ...]:
    """Coefficients of the term's value over x, M(x), M^2(x), ...

    The coefficients always sum to 1 (weights multiply to 1).
    """
    if t.is_leaf:
        return (Fraction(1),)
    a = term_value(t.left)
    b = term_value(t.right)
    out = [Fraction(0)] * (1 + max(len(a), len(b)))
    for k, c in enumerate(a):
        out[k + 1] += c * HALF
    for k, c in enumerate(b):
        out[k + 1] += c * HALF
    return tuple(out)


def reduce_on_mutation(f: MagmaPoly) -> UniPoly:
    """The polynomial D with f(x) = D(M)(x) on weight-1 x of any mutation
    algebra.  D = 0 means every mutation algebra satisfies f."""
    out: list[Fraction] = []
    for t, c in f.terms.items():
        for k, v in enumerate(term_value(t)):
            if not v:
                continue
            while len(out) <= k:
                out.append(Fraction(0))
            out[k] += c * v
    return UniPoly(out)


def max_power_index(f: MagmaPoly) -> int:
    """Largest M-power appearing in the reduction of f before cancellation."""
    return max((len(term_value(t)) - 1 for t in f.terms), default=0)


@dataclass
class ThetaReport:
    D: UniPoly
    theta: UniPoly
    criterion_value: Fraction
    degenerate: bool


def theta(f: MagmaPoly) -> ThetaReport:
    """Reduction polynomial D, theta(X) = D(2X) and theta'(1/2).

    Defined for any f; a vanishing D is reported as degenerate (the
    criterion does not apply), not as an error.
    """
    D = reduce_on_mutation(f)
    th = D.scale_arg(2)
    criterion = th.derivative()(HALF)
    return ThetaReport(D=D, theta=th, criterion_value=criterion, degenerate=D.is_zero)


def principal_train_identity(T: UniPoly) -> MagmaPoly:
    """The magma polynomial X*T(X) built with principal powers."""
    return MagmaPoly([(principal_term(k + 1), c) for k, c in enumerate(T.coeffs) if c])


def plenary_train_identity(P: UniPoly) -> MagmaPoly:
    """The magma polynomial sum_k P_k X^[k+1] built with plenary powers."""
    return MagmaPoly([(plenary_term(k + 1), c) for k, c in enumerate(P.coeffs) if c])


def as_principal_train(f: MagmaPoly) -> UniPoly | None:
    """T with f = X*T(X) when every term of f is a principal power and the
    leading coefficient is 1; None otherwise."""
    if f.is_zero:
        return None
    coeffs: dict[int, Fraction] = {}
    for t, c in f.terms.items():
        k = principal_exponent(t)
        if k is None:
            return None
        coeffs[k - 1] = c
    T = UniPoly([coeffs.get(i, Fraction(0)) for i in range(max(coeffs) + 1)])
    if T.degree < 1 or T.leading != 1:
        return None
    return T


def theta_prime_identity_check(T: UniPoly) -> tuple[Fraction, Fraction]:
    """(theta'(1/2) of the train identity X*T(X), -4*T(1/2)).

    The two values agree for every monic T with T(1) = 0.
    """
    if T.is_zero or T.leading != 1:
        raise PreconditionError("train polynomial must be monic")
    if T(1) != 0:
        raise PreconditionError("train polynomial must vanish at 1 (coefficient sum)")
    report = theta(principal_train_identity(T))
    return report.criterion_value, Fraction(-4) * T(HALF)


@dataclass
class DependenceReport:
    """A combination of the supplied polynomials vanishing on K<x>."""

    case: str                                  # single-vanishing | pair-equal | linear-dependence
    combination: list[tuple[int, Fraction]]    # (index into S, coefficient)
    residues: list[UniPoly]                    # reductions modulo the minimal polynomial
    minimal_poly: UniPoly
    combination_poly: MagmaPoly

    def describe(self) -> str:
        return print_poly(self.combination_poly)


def identity_dependence(x: Element, S: Sequence[MagmaPoly]) -> DependenceReport:
    """Find f in the linear span of S that K<x> satisfies.

    Each f_k reduces to a polynomial mu_k in the extracted M; comparing the
    remainders modulo the minimal polynomial of M yields one of three cases:
    a vanishing remainder, two equal remainders, or a kernel combination.
    A dependence is guaranteed once card(S) exceeds deg(mu_M).
    """
    extraction = extract_mutation(x)
    mu_min = extraction.M.minimal_polynomial()
    d = mu_min.degree
    if len(S) < d:
        raise PreconditionError(
            f"need at least deg(mu_M) = {d} polynomials, got {len(S)}")
    residues = [reduce_on_mutation(f) % mu_min for f in S]

    combination: list[tuple[int, Fraction]] | None = None
    case = ""
    for k, r in enumerate(residues):
        if r.is_zero:
            case, combination = "single-vanishing", [(k, Fraction(1))]
            break
    if combination is None:
        seen: dict[UniPoly, int] = {}
        for k, r in enumerate(residues):
            if r in seen:
                case, combination = "pair-equal", [(seen[r], Fraction(1)), (k, Fraction(-1))]
                break
            seen[r] = k
    if combination is None:
        rows = [[r.coeff(i) for r in residues] for i in range(d)]
        kernel = QMatrix(rows).kernel_basis()
        if not kernel:
            raise PreconditionError(
                "the reduced residues are linearly independent; supply at least "
                f"deg(mu_M) + 1 = {d + 1} polynomials to guarantee a dependence")
        case = "linear-dependence"
        combination = [(k, c) for k, c in enumerate(kernel[0]) if c]

    check = UniPoly()
    for k, lam in combination:
        check = check + lam * residues[k]
    if not check.is_zero:
        raise RetroalgError("internal: combination does not annihilate the residues")

    combo_poly = MagmaPoly()
    for k, lam in combination:
        combo_poly = combo_poly + lam * S[k]
    return DependenceReport(case, combination, residues, mu_min, combo_poly)
