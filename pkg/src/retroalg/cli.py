"""Command-line surface.

    retroalg check          -a A.json -f IDENTITY      holds / fails + witness
    retroalg backcross      -a A.json                  weak/strict report
    retroalg mutation       -a A.json -x ELT           mutation file for K<x>
    retroalg theta          -f IDENTITY                D, theta, theta'(1/2)
    retroalg idempotent     -a A.json -x ELT [-f ID]   idempotent(s) + method
    retroalg simulate       -a A.json -x ELT -k N --mode plenary|principal
    retroalg depend         -a A.json -x ELT -S FILE   vanishing combination
    retroalg build-mutation -f IDENTITY                mutation file

Exit codes: 0 success / identity holds; 1 definite negative; 2 input error;
3 criterion inapplicable.  All numbers are exact rational text; `simulate
--decimal` is the one (clearly lossy) exception.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from .algebra import (
    Element,
    WeightedAlgebra,
    holds_identity,
    loads_algebra,
)
from .backcross import extract_mutation, is_backcrossing
from .errors import (
    CriterionError,
    ParseError,
    PreconditionError,
    RetroalgError,
    ValidationError,
    WeightError,
)
from .idempotent import fixed_point_idempotent, idempotent_from_square, theorem_idempotent, train_system_idempotent
from .magma import MagmaPoly, parse_poly, print_poly
from .mutation import MutationSpec, build_mutation_for_identity, dumps_mutation
from .rationals import format_vector, parse_vector
from .theta import as_principal_train, identity_dependence, reduce_on_mutation, theta
from .unipoly import UniPoly

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CRITERION = 3


def _load_algebra(path: str) -> WeightedAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    algebra = loads_algebra(text)
    report = algebra.validate()
    if not report.ok:
        bad = ", ".join(f"({i},{j})" for i, j in report.failures) or "zero weight"
        raise ValidationError(f"{path}: weight is not an algebra homomorphism at {bad}")
    return algebra


def _parse_element(algebra: WeightedAlgebra, text: str) -> Element:
    coords = parse_vector(text)
    if len(coords) != algebra.dim:
        raise ValidationError(
            f"element has {len(coords)} coordinates, algebra has dimension {algebra.dim}")
    return algebra.element(coords)


def _parse_identity(text: str, max_degree: int) -> MagmaPoly:
    poly = parse_poly(text)
    if poly.degree() > max_degree:
        raise ValidationError(
            f"identity degree {poly.degree()} exceeds --max-degree {max_degree}")
    return poly


def _emit(args, lines: list[str], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _linear_identity_text(coeffs: tuple[Fraction, Fraction, Fraction]) -> str:
    a, b, c = coeffs
    return UniPoly([0, c, b, a]).to_str()


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    algebra = _load_algebra(args.algebra)
    identity = _parse_identity(args.identity, args.max_degree)
    verdict = holds_identity(algebra, identity)
    if verdict.holds:
        _emit(args, ["holds"], {"holds": True, "witness": None})
        return EXIT_OK
    witness = format_vector(verdict.witness.coords)
    _emit(args, ["fails", f"witness: {witness}"], {"holds": False, "witness": witness})
    return EXIT_NEGATIVE


def cmd_backcross(args) -> int:
    algebra = _load_algebra(args.algebra)
    report = is_backcrossing(algebra)
    identities = [_linear_identity_text(v) for v in report.low_degree_basis]
    lines = [
        f"weak: {'yes' if report.weak else 'no'}",
        f"strict: {'yes' if report.strict else 'no'}",
    ]
    for text in identities:
        lines.append(f"low-degree identity: {text}")
    if not report.weak and report.witness is not None:
        lines.append(f"witness: {format_vector(report.witness.coords)}")
    payload = {
        "weak": report.weak,
        "strict": report.strict,
        "low_degree_basis": [[str(c) for c in v] for v in report.low_degree_basis],
        "low_degree_identities": identities,
    }
    _emit(args, lines, payload)
    return EXIT_OK if report.weak else EXIT_NEGATIVE


def cmd_mutation(args) -> int:
    algebra = _load_algebra(args.algebra)
    x = _parse_element(algebra, args.element)
    extraction = extract_mutation(x)
    spec = MutationSpec(extraction.M.rows, extraction.M, extraction.eta)
    extra = {
        "basis": [[str(c) for c in p.coords] for p in extraction.subalgebra.basis],
        "ambient_basis_names": list(algebra.basis_names),
    }
    sys.stdout.write(dumps_mutation(spec, extra=extra))
    return EXIT_OK


def cmd_theta(args) -> int:
    identity = _parse_identity(args.identity, args.max_degree)
    report = theta(identity)
    lines = [
        f"D = {report.D.to_str()}",
        f"theta = {report.theta.to_str()}",
        f"theta'(1/2) = {report.criterion_value}",
        f"degenerate: {'yes' if report.degenerate else 'no'}",
    ]
    payload = {
        "D": [str(c) for c in report.D.coeffs],
        "theta": [str(c) for c in report.theta.coeffs],
        "criterion_value": str(report.criterion_value),
        "degenerate": report.degenerate,
    }
    _emit(args, lines, payload)
    return EXIT_CRITERION if report.degenerate else EXIT_OK


def cmd_idempotent(args) -> int:
    algebra = _load_algebra(args.algebra)
    x = _parse_element(algebra, args.element)
    if args.identity is not None:
        identity = _parse_identity(args.identity, args.max_degree)
        train = as_principal_train(identity)
        if train is not None:
            solution = train_system_idempotent(x, train)
        else:
            solution = theorem_idempotent(x, identity)
        found = [solution.idempotent]
        method = solution.method
        determinant = solution.determinant
    else:
        square = idempotent_from_square(x)
        if square is not None:
            found, method, determinant = [square], "square-shortcut", None
        else:
            found = fixed_point_idempotent(x)
            method, determinant = "fixed-point", None
            if not found:
                _emit(args, ["no idempotent in K<x>"],
                      {"idempotents": [], "method": method})
                return EXIT_NEGATIVE
    lines = [f"idempotent: {format_vector(e.coords)}" for e in found]
    lines.append(f"method: {method}")
    if determinant is not None:
        lines.append(f"delta: {determinant}")
    payload = {
        "idempotents": [format_vector(e.coords) for e in found],
        "method": method,
        "determinant": None if determinant is None else str(determinant),
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_simulate(args) -> int:
    algebra = _load_algebra(args.algebra)
    x = _parse_element(algebra, args.element)
    if x.weight() != 1:
        raise WeightError(f"element has weight {x.weight()}, expected 1")
    if args.k < 0:
        raise ValidationError("-k must be >= 0")
    if args.mode == "plenary":
        rows = [(f"F{i - 1}", x.plenary_power(i)) for i in range(1, args.k + 2)]
    else:
        rows = [(f"x^{i}", x.principal_power(i)) for i in range(1, args.k + 2)]

    def cell(c: Fraction) -> str:
        return repr(float(c)) if args.decimal else str(c)

    if args.decimal:
        print("warning: --decimal output is approximate", file=sys.stderr)
    if args.format == "json":
        payload = {
            "mode": args.mode,
            "rows": [{"label": label, "coords": [cell(c) for c in e.coords]} for label, e in rows],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(",".join(["generation", *algebra.basis_names]))
        for label, e in rows:
            print(",".join([label, *[cell(c) for c in e.coords]]))
    return EXIT_OK


def cmd_depend(args) -> int:
    algebra = _load_algebra(args.algebra)
    x = _parse_element(algebra, args.element)
    try:
        raw_lines = Path(args.polys).read_text().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.polys}: {exc}") from exc
    polys = []
    for line in raw_lines:
        line = line.strip()
        if line and not line.startswith("#"):
            polys.append(_parse_identity(line, args.max_degree))
    if not polys:
        raise ValidationError(f"{args.polys}: no identities found")
    if args.jobs > 1:
        # warms the reduction cache; the dependence search itself is serial
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            list(pool.map(reduce_on_mutation, polys))
    report = identity_dependence(x, polys)
    combo = print_poly(report.combination_poly)
    lines = [f"case: {report.case}", f"combination: {combo}"]
    payload = {
        "case": report.case,
        "combination": combo,
        "coefficients": [[k, str(lam)] for k, lam in report.combination],
        "minimal_poly": report.minimal_poly.to_str(),
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_build_mutation(args) -> int:
    identity = _parse_identity(args.identity, args.max_degree)
    spec = build_mutation_for_identity(identity)
    sys.stdout.write(dumps_mutation(spec))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="retroalg",
        description="Exact tools for weighted commutative nonassociative algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, algebra=False, element=False,
               identity=False, identity_optional=False) -> None:
        if algebra:
            p.add_argument("-a", "--algebra", required=True, help="algebra JSON file")
        if element:
            p.add_argument("-x", "--element", required=True,
                           help="element coordinates, e.g. 1,0,0")
        if identity:
            p.add_argument("-f", "--identity", required=not identity_optional,
                           default=None, help="identity text, e.g. 'X^2*X^2 - 2*X^3 + X^2'")
        p.add_argument("--format", choices=["human", "json", "csv"], default="human")
        p.add_argument("--max-degree", type=int, default=8,
                       help="cap on identity degree (default 8)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for batch reductions")

    p = sub.add_parser("check", help="does the algebra satisfy the identity?")
    common(p, algebra=True, identity=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("backcross", help="weak/strict backcrossing report")
    common(p, algebra=True)
    p.set_defaults(func=cmd_backcross)

    p = sub.add_parser("mutation", help="mutation structure generated by an element")
    common(p, algebra=True, element=True)
    p.set_defaults(func=cmd_mutation)

    p = sub.add_parser("theta", help="reduction polynomial and criterion value")
    common(p, identity=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("idempotent", help="solve e^2 = e in K<x>")
    common(p, algebra=True, element=True, identity=True, identity_optional=True)
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("simulate", help="generation table (CSV)")
    common(p, algebra=True, element=True)
    p.add_argument("-k", type=int, required=True, help="number of generations")
    p.add_argument("--mode", choices=["plenary", "principal"], default="plenary")
    p.add_argument("--decimal", action="store_true",
                   help="approximate decimal output (lossy, for plotting)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("depend", help="vanishing combination from a list of identities")
    common(p, algebra=True, element=True)
    p.add_argument("-S", "--polys", required=True, help="file with one identity per line")
    p.set_defaults(func=cmd_depend)

    p = sub.add_parser("build-mutation", help="mutation algebra satisfying an identity")
    common(p, identity=True)
    p.set_defaults(func=cmd_build_mutation)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidationError, PreconditionError, WeightError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CriterionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CRITERION
    except RetroalgError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
