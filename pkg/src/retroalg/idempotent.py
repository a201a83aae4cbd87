"""Idempotent existence and construction.

Four routes, all verified against e*e = e before returning:

* square shortcut: x^3 = x^2 makes e = x^2 idempotent (backcrossing turns
  x^2 x^2 into 2x^3 - x^2);
* train system: for a principal train identity X*T(X) on a weak-backcrossing
  K<x> of dimension deg T, the ansatz e = p_1 + sum lambda_i p_i gives a
  linear system whose determinant is -2^n T(1/2) up to sign, solvable
  whenever 1/2 is not a train root;
* theorem path: a non-homogeneous identity reduces to D(M) = 0, which
  rewrites to a principal train identity; its T satisfies
  T(1/2) = -theta'(1/2)/4, so a nonvanishing criterion delegates to the
  train system;
* fixed points: in the extracted mutation structure e^2 = e is exactly
  M(e) = e with weight 1, an exact kernel computation (used as the
  independent oracle for the other routes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, eval_weighted, generated_subalgebra
from .backcross import extract_mutation, lemma_table_check, require_weight_one
from .errors import CriterionError, PreconditionError, RetroalgError
from .magma import MagmaPoly
from .qmatrix import QMatrix
from .theta import HALF, theta
from .unipoly import UniPoly


@dataclass
class IdempotentSolution:
    lambdas: tuple[Fraction, ...]        # lambda_2..lambda_n of the train ansatz
    determinant: Fraction | None         # Delta of the solved system, when one was built
    idempotent: Element
    method: str                          # train-system | fixed-point | square-shortcut | theorem-path


def _checked(e: Element, context: str) -> Element:
    if e * e != e:
        raise RetroalgError(f"internal: produced element is not idempotent ({context})")
    if e.weight() != 1:
        raise RetroalgError(f"internal: produced idempotent has weight != 1 ({context})")
    return e


def idempotent_from_square(x: Element) -> Element | None:
    """e = x^2 when x^3 = x^2; None otherwise.  Requires weight 1 and a
    weak-backcrossing parent (checked via the product itself)."""
    require_weight_one(x)
    x2 = x.principal_power(2)
    if x * x2 != x2:
        return None
    if x2 * x2 != x2:
        raise PreconditionError("x^2 squares incorrectly: parent is not weak-backcrossing at x")
    return x2


def train_system_idempotent(x: Element, T: UniPoly) -> IdempotentSolution:
    """Solve e^2 = e for e = p_1 + sum_{i>=2} lambda_i p_i.

    Preconditions: weight 1; T monic with T(1) = 0; the train identity
    T(L_x)(x) = 0 holds; dim K<x> = deg T; K<x> weak-backcrossing; and
    T(1/2) != 0 (otherwise existence is not guaranteed and CriterionError
    is raised).

    The system is derived by exact coefficient matching of e^2 = e in the
    p-basis, with p_(n+1) expanded directly as x*p_n.
    """
    require_weight_one(x)
    if T.is_zero or T.leading != 1:
        raise PreconditionError("train polynomial must be monic")
    if T(1) != 0:
        raise PreconditionError("train polynomial must vanish at 1 (coefficient sum)")
    if T(HALF) == 0:
        raise CriterionError("criterion fails: T(1/2)=0")
    n = T.degree
    train_value = x.algebra.zero()
    for k, c in enumerate(T.coeffs):
        if c:
            train_value = train_value + c * x.principal_power(k + 1)
    if not train_value.is_zero:
        raise PreconditionError("train identity T(L_x)(x) = 0 fails at x")
    sub = generated_subalgebra(x)
    if sub.dim != n:
        raise PreconditionError(f"dim K<x> = {sub.dim} but deg T = {n}")
    lemma = lemma_table_check(x, n + 1)
    if not lemma.ok:
        raise PreconditionError("K<x> is not weak-backcrossing: " + "; ".join(lemma.failures))

    if n == 1:
        # T = X - 1: the train identity already says x^2 = x.
        return IdempotentSolution((), Fraction(1), _checked(x, "train-system n=1"), "train-system")

    powers = sub.basis
    ps = [powers[0]] + [powers[k] - powers[k - 1] for k in range(1, n)]
    pmat = QMatrix.from_columns([p.coords for p in ps])
    c_next = pmat.solve((x * ps[-1]).coords)
    if c_next is None:
        raise PreconditionError("K<x> is not product-closed")
    if c_next[0] != 0:
        raise RetroalgError("internal: p_(n+1) has a p_1 component")

    # e^2 = p1 + p2 + 2 sum_{i=2}^{n-1} lambda_i p_(i+1) + 2 lambda_n p_(n+1);
    # matching the coefficient of p_k for k = 2..n against e gives the rows.
    size = n - 1
    rows = [[Fraction(0)] * size for _ in range(size)]
    rhs = [Fraction(0)] * size
    rhs[0] = Fraction(1)
    for k in range(2, n + 1):
        r = k - 2
        rows[r][k - 2] += 1                      # lambda_k
        if k >= 3:
            rows[r][k - 3] -= 2                  # -2 lambda_(k-1)
        rows[r][size - 1] -= 2 * c_next[k - 1]   # -2 c_k lambda_n
    system = QMatrix(rows)
    delta = system.det()
    if delta == 0:
        raise RetroalgError("internal: train system is singular despite T(1/2) != 0")
    solution = system.solve(rhs)
    e = ps[0]
    for lam, p in zip(solution, ps[1:]):
        e = e + lam * p
    return IdempotentSolution(tuple(solution), delta, _checked(e, "train-system"), "train-system")


def theorem_idempotent(x: Element, f: MagmaPoly) -> IdempotentSolution:
    """Idempotent from a non-homogeneous identity via the criterion.

    The reduction D(M) = 0 is rewritten into a principal train identity by
    substituting M^k(y) = 2^(k-1) y^(k+1) - sum_{i=2}^k 2^(i-2) y^i; the
    resulting T (before normalization) satisfies T(1/2) = -theta'(1/2)/4,
    and the train-system route finishes when that value is nonzero.
    """
    require_weight_one(x)
    if f.is_homogeneous():
        raise PreconditionError("identity must be non-homogeneous")
    if f.degree() < 2:
        raise PreconditionError("identity must have degree >= 2")
    if f.coefficient_sum() != 0:
        raise PreconditionError("coefficient sum must vanish (apply the weight to the identity)")
    if not eval_weighted(f, x).is_zero:
        raise PreconditionError("the identity fails at x")
    report = theta(f)
    if report.degenerate:
        raise CriterionError("criterion inapplicable: reduction polynomial is zero")
    if f.degree() == 2:
        e = idempotent_from_square(x)
        if e is None:
            raise PreconditionError("quadratic identity fails at x")
        return IdempotentSolution((), None, _checked(e, "square-shortcut"), "square-shortcut")
    if report.criterion_value == 0:
        raise CriterionError("criterion fails: theta'(1/2)=0")

    D = report.D
    g = [Fraction(0)] * (D.degree + 2)
    for k, d in enumerate(D.coeffs):
        if not d:
            continue
        if k == 0:
            g[1] += d
        else:
            g[k + 1] += d * 2 ** (k - 1)
            for i in range(2, k + 1):
                g[i] -= d * 2 ** (i - 2)
    if g[0] != 0:
        raise RetroalgError("internal: train rewrite produced a constant term")
    t_raw = UniPoly(g[1:])
    if t_raw(HALF) != -report.criterion_value / 4:
        raise RetroalgError("internal: T(1/2) != -theta'(1/2)/4")
    solution = train_system_idempotent(x, t_raw.monic())
    return IdempotentSolution(solution.lambdas, solution.determinant,
                              solution.idempotent, "theorem-path")


def fixed_point_idempotent(x: Element) -> list[Element]:
    """All idempotents of K<x> via M(e) = e, weight(e) = 1.

    In the extracted mutation structure e^2 = weight(e) M(e), so idempotents
    are exactly the weight-1 fixed points of M.  When the fixed space meets
    the weight hyperplane in a positive-dimensional affine family, one
    representative per kernel direction is returned.
    """
    require_weight_one(x)
    extraction = extract_mutation(x)
    n = extraction.M.rows
    kernel = (extraction.M - QMatrix.identity(n)).kernel_basis()
    anchor = next((v for v in kernel if v[0] != 0), None)
    if anchor is None:
        return []
    base = tuple(c / anchor[0] for c in anchor)
    coords_list = [base]
    for v in kernel:
        shifted = tuple(c - v[0] * b for c, b in zip(v, base))
        if any(shifted):
            coords_list.append(tuple(b + s for b, s in zip(base, shifted)))
    return [
        _checked(extraction.subalgebra.from_coords(coords), "fixed-point")
        for coords in coords_list
    ]
