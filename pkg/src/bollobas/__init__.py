"""Exact-arithmetic toolkit for Bollobás-type systems of set and subspace
tuples: verifiers, weight inequalities, weight-invariant saturation with
type-class certification, extremal search, and tight-family constructions."""

from .errors import (
    BollobasError,
    BudgetError,
    DocumentError,
    DuplicateTupleError,
    FieldMismatchError,
    LicensingError,
    PreconditionError,
    ShapeError,
)
from .exact_arith import (
    QQ,
    FieldTag,
    PrimeField,
    PrimeFieldScalar,
    ProbabilityVector,
    Rational,
    RationalField,
    binomial,
    multinomial,
    rational_power,
)
from .subspace_algebra import (
    Decomposition,
    Subspace,
    canonicalize,
    component,
    contains,
    coordinate_decomposition,
    coordinate_subspace,
    dim_of_sum,
    extension_vector,
    full_space,
    intersection,
    is_direct_sum,
    subspace_sum,
    zero_subspace,
)
from .systems_model import (
    SetSystem,
    SubspaceSystem,
    embed,
    is_decomposition_compatible,
    profile,
)
from .verifiers import (
    Certificate,
    ClassCount,
    ConditionKind,
    VerificationReport,
    check_alon_bound,
    check_cardinality_lemmas,
    check_decomposition_uniform_bound,
    check_uniform_pair_bound,
    is_skew_implies_weak_check,
    verify,
)
from .weight_functionals import (
    FunctionalKind,
    InequalityVerdict,
    evaluate_inequality,
    omega,
    phi,
    phi_upper_bound,
    tuza,
)
from .saturation_engine import (
    FillUpStep,
    SaturationTrace,
    certify_full_system,
    fill_up_set_tuple,
    fill_up_subspace_pair,
    fill_up_subspace_tuple,
    saturate,
)
from .extremal_search import (
    SearchProblem,
    SearchResult,
    all_subspaces,
    enumerate_set_candidates,
    enumerate_subspace_candidates,
    explore_weak_subspace_conjecture,
    random_compatible_pair_system,
    random_valid_system,
    search_max,
)
from .constructions import (
    FamilyKind,
    complement_chain,
    construct,
    full_tuza_tuples,
    partitioned_complement_chain,
    uniform_bollobas,
)
from .cli_io import parse, serialize, system_from_doc, system_to_doc

__all__ = [name for name in dir() if not name.startswith("_")]
