"""Exact rational tools for weighted commutative nonassociative algebras."""

from .algebra import (
    AlgebraValidation,
    Element,
    IdentityCheck,
    Subalgebra,
    WeightedAlgebra,
    algebra_from_json,
    algebra_to_json,
    dumps_algebra,
    eval_weighted,
    generated_subalgebra,
    holds_identity,
    is_weight_homomorphism,
    left_mult_matrix,
    loads_algebra,
    low_degree_identity_space,
)
from .backcross import (
    BackcrossCheck,
    LemmaTableReport,
    MutationExtraction,
    PSequence,
    extract_mutation,
    is_backcrossing,
    ker_omega_product_check,
    lemma_table_check,
    linearized_G,
    linearized_R,
    p_sequence,
    plenary_from_principal,
    principal_from_plenary,
)
from .errors import (
    AlgebraMismatchError,
    CriterionError,
    ParseError,
    PreconditionError,
    RetroalgError,
    ValidationError,
    WeightError,
)
from .idempotent import (
    IdempotentSolution,
    fixed_point_idempotent,
    idempotent_from_square,
    theorem_idempotent,
    train_system_idempotent,
)
from .magma import (
    BACKCROSSING,
    MagmaPoly,
    MagmaTerm,
    X,
    parse_poly,
    plenary_term,
    principal_term,
    print_poly,
)
from .multipoly import MultiPoly
from .mutation import (
    MutationSpec,
    MutationValidation,
    algebra_from_mutation,
    build_mutation_for_identity,
    dumps_mutation,
    loads_mutation,
    mutation_from_json,
    mutation_to_json,
    validate_mutation,
)
from .qmatrix import QMatrix
from .rationals import Rational, format_rational, format_vector, parse_rational, parse_vector
from .theta import (
    DependenceReport,
    ThetaReport,
    as_principal_train,
    identity_dependence,
    plenary_train_identity,
    principal_train_identity,
    reduce_on_mutation,
    term_value,
    theta,
    theta_prime_identity_check,
)
from .unipoly import UniPoly, poly_derivative, poly_rem

__version__ = "0.1.0"
