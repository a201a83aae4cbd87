"""Mutation algebras as first-class objects.

A mutation algebra is a triple (V, M, eta) with eta a nonzero linear form
fixed by the endomorphism M (eta o M = eta); the product is

    x y = [eta(y) M(x) + eta(x) M(y)] / 2.

Every such algebra is weighted by eta and satisfies the backcrossing
identity; conversely, for any polynomial with vanishing coefficient sum a
mutation algebra satisfying it can be constructed from the reduction
polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import WeightedAlgebra, holds_identity
from .errors import PreconditionError, RetroalgError, ValidationError
from .magma import MagmaPoly
from .qmatrix import QMatrix
from .rationals import format_rational, parse_rational
from .theta import max_power_index, reduce_on_mutation


@dataclass(frozen=True)
class MutationSpec:
    """Triple (dimension, endomorphism matrix, weight functional)."""

    dim: int
    M: QMatrix
    eta: tuple[Fraction, ...]


@dataclass
class MutationValidation:
    ok: bool
    messages: list[str]


def validate_mutation(spec: MutationSpec) -> MutationValidation:
    """Check eta != 0, M != 0 and eta o M = eta."""
    messages = []
    if spec.dim < 1:
        messages.append("dimension must be positive")
    if spec.M.rows != spec.dim or spec.M.cols != spec.dim:
        messages.append("M must be a dim x dim matrix")
    if len(spec.eta) != spec.dim:
        messages.append("eta must have dim entries")
    if messages:
        return MutationValidation(False, messages)
    if not any(spec.eta):
        messages.append("eta must be nonzero")
    if spec.M.is_zero:
        messages.append("M must be nonzero")
    for j in range(spec.dim):
        lhs = sum((e * m for e, m in zip(spec.eta, spec.M.column(j))), Fraction(0))
        if lhs != spec.eta[j]:
            messages.append(f"eta o M != eta at basis vector {j}")
    return MutationValidation(not messages, messages)


def algebra_from_mutation(spec: MutationSpec,
                          basis_names: list[str] | None = None) -> WeightedAlgebra:
    """Structure constants e_i e_j = [eta_j M(e_i) + eta_i M(e_j)] / 2."""
    report = validate_mutation(spec)
    if not report.ok:
        raise ValidationError("invalid mutation spec: " + "; ".join(report.messages))
    half = Fraction(1, 2)
    products = {}
    for i in range(spec.dim):
        col_i = spec.M.column(i)
        for j in range(i, spec.dim):
            col_j = spec.M.column(j)
            vec = [half * (spec.eta[j] * a + spec.eta[i] * b) for a, b in zip(col_i, col_j)]
            products[(i, j)] = vec
    return WeightedAlgebra(spec.dim, products, spec.eta, basis_names)


def build_mutation_for_identity(f: MagmaPoly) -> MutationSpec:
    """A mutation spec whose algebra satisfies f; needs coefficient sum 0.

    If f reduces to D = 0 every mutation algebra satisfies it and a cyclic
    permutation matrix with the all-ones weight is returned.  Otherwise M is
    the companion matrix of the monic normalization of D, and eta is a left
    eigenvector for the eigenvalue 1, which exists because the coefficient
    sum forces D(1) = 0.
    """
    if f.degree() < 2:
        raise PreconditionError("identity must have degree >= 2")
    if f.coefficient_sum() != 0:
        raise PreconditionError("coefficient sum must vanish (apply the weight to the identity)")
    D = reduce_on_mutation(f)
    if D.is_zero:
        n = max(2, max_power_index(f))
        M = QMatrix([[1 if i == (j + 1) % n else 0 for j in range(n)] for i in range(n)])
        eta = tuple([Fraction(1)] * n)
    else:
        P = D.monic()
        n = P.degree
        if n < 1:
            raise RetroalgError("internal: nonzero D with D(1) = 0 must have degree >= 1")
        columns = []
        for j in range(n - 1):
            columns.append([Fraction(1) if i == j + 1 else Fraction(0) for i in range(n)])
        columns.append([-P.coeff(k) for k in range(n)])
        M = QMatrix.from_columns(columns)
        kernel = (M.transpose() - QMatrix.identity(n)).kernel_basis()
        if not kernel:
            raise RetroalgError("internal: companion matrix of P with P(1) = 0 must fix a functional")
        eta = kernel[0]
    spec = MutationSpec(n, M, eta)
    if not holds_identity(algebra_from_mutation(spec), f).holds:
        raise RetroalgError("internal: constructed mutation algebra fails the identity")
    return spec


# ---------------------------------------------------------------------------
# JSON form
#
# {"dim": n, "M": [[...]] row-major with [i][j] = coefficient of basis i in
#  M(e_j), "eta": [...]}; extra keys are ignored on load.

def mutation_to_json(spec: MutationSpec) -> dict:
    return {
        "dim": spec.dim,
        "M": [[format_rational(x) for x in row] for row in spec.M.m],
        "eta": [format_rational(e) for e in spec.eta],
    }


def mutation_from_json(data: dict) -> MutationSpec:
    try:
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValidationError("dim must be a positive integer")
        rows = data["M"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ValidationError("M must be a dim x dim grid")
        M = QMatrix([[parse_rational(x) for x in row] for row in rows])
        eta = tuple(parse_rational(e) for e in data["eta"])
        if len(eta) != dim:
            raise ValidationError("eta must have dim entries")
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed mutation file: {exc}") from exc
    return MutationSpec(dim, M, eta)


def dumps_mutation(spec: MutationSpec, extra: dict | None = None) -> str:
    payload = mutation_to_json(spec)
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def loads_mutation(text: str) -> MutationSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from exc
    return mutation_from_json(data)
