"""Weights, potentials, and the inequalities they satisfy.

Every functional evaluates to an exact rational.  Values are always
computable; a <=-verdict is produced only after the condition that licenses
the bound has been verified, because several of these sums exceed their
bounds on systems that merely look similar (the plain binomial sum, for one,
can exceed 1 on skew systems without the monotonicity assumption).

Pair functionals, with a_i = |A_i| (or dim A_i) and b_i likewise:

* ``bollobas_sum``       sum_i 1 / C(a_i + b_i, a_i)             <= 1 under bollobas
* ``scott_wilmer_sum``   same sum                                <= 1 under skew + monotone profile
* ``hegedus_frankl_sum`` sum_i 1 / C(a_i + b_i, b_i)             <= n + 1 under skew
* ``yue_sum``            sum_i 1 / ((1+a_i+b_i) C(a_i+b_i, a_i)) <= 1 under skew
* ``partitioned_yue_sum``      per-block product of yue terms    <= 1 under skew + context
* ``partitioned_bollobas_sum`` per-block product of plain terms  <= prod_k (1+n_k) under skew + context

Tuple functional, any arity, with a probability vector p:

* ``tuza_sum``  sum_i prod_l p_l^(size of component l)  <= 1 under weak (sets)
  or skew (subspaces); the weak subspace case is open and is refused.

Potentials are exact integers; they strictly increase under fill-up
replacement and are bounded, which is what terminates saturation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LicensingError, PreconditionError, ShapeError
from .exact_arith import PrimeField, ProbabilityVector, Rational, binomial, rational_power
from .subspace_algebra import component, dim_of_sum
from .systems_model import (
    SetSystem,
    SubspaceSystem,
    System,
    block_sizes,
    has_context,
    is_decomposition_compatible,
    pair_block_profile,
    tuple_sizes,
)
from .verifiers import ConditionKind, condition_for, is_monotone_pair_profile, verify

PAIR_FUNCTIONALS = (
    "bollobas_sum",
    "scott_wilmer_sum",
    "hegedus_frankl_sum",
    "yue_sum",
    "partitioned_yue_sum",
    "partitioned_bollobas_sum",
)
FUNCTIONALS = PAIR_FUNCTIONALS + ("tuza_sum",)

PHI_FLAVORS = ("set", "pair", "tuple")


@dataclass(frozen=True)
class FunctionalKind:
    """A functional name plus, for tuza_sum, its probability vector."""

    name: str
    p: ProbabilityVector | None = None

    def __post_init__(self):
        if self.name not in FUNCTIONALS:
            raise ValueError(f"unknown functional {self.name!r}; choose from {FUNCTIONALS}")
        if self.name == "tuza_sum" and self.p is None:
            raise ValueError("tuza_sum needs a probability vector")
        if self.name != "tuza_sum" and self.p is not None:
            raise ValueError(f"{self.name} takes no probability vector")

    def __str__(self) -> str:
        return self.name if self.p is None else f"{self.name}(p={self.p})"


def tuza(p: ProbabilityVector | tuple) -> FunctionalKind:
    if not isinstance(p, ProbabilityVector):
        p = ProbabilityVector(tuple(Fraction(x) for x in p))
    return FunctionalKind("tuza_sum", p)


def _as_kind(kind: str | FunctionalKind) -> FunctionalKind:
    if isinstance(kind, FunctionalKind):
        return kind
    return FunctionalKind(kind)


@dataclass(frozen=True)
class InequalityVerdict:
    """An exact value against its licensed bound."""

    value: Rational
    bound: Rational
    holds: bool
    tight: bool
    licensed_by: ConditionKind
    field_caveat: bool = False

    def __post_init__(self):
        if self.holds != (self.value <= self.bound):
            raise ValueError("holds flag inconsistent with value/bound")
        if self.tight and not self.holds:
            raise ValueError("tight verdicts must hold")


# ---------------------------------------------------------------------------
# values


def _pair_sizes(system: System) -> list[tuple[int, int]]:
    if system.d != 2:
        raise ShapeError(f"{system.d}-tuple system where a pair system is needed")
    return [tuple_sizes(system, i) for i in range(1, system.m + 1)]  # type: ignore[misc]


def _require_context(system: System, name: str) -> None:
    if not has_context(system):
        raise ShapeError(f"{name} needs a partition/decomposition on the system")


def omega(system: System, kind: str | FunctionalKind) -> Rational:
    """Exact value of the named functional; an empty system weighs 0."""
    kind = _as_kind(kind)
    name = kind.name
    if name == "tuza_sum":
        assert kind.p is not None
        if kind.p.d != system.d:
            raise ShapeError(f"p has {kind.p.d} entries, system arity is {system.d}")
        total = Fraction(0)
        for i in range(1, system.m + 1):
            term = Fraction(1)
            for p_l, size in zip(kind.p.entries, tuple_sizes(system, i)):
                term *= rational_power(p_l, size)
            total += term
        return total

    if name in ("bollobas_sum", "scott_wilmer_sum"):
        if name == "scott_wilmer_sum" and not is_monotone_pair_profile(system):
            raise PreconditionError(
                "scott_wilmer_sum needs a_1 <= ... <= a_m and b_1 >= ... >= b_m"
            )
        return sum(
            (Fraction(1, binomial(a + b, a)) for a, b in _pair_sizes(system)),
            Fraction(0),
        )
    if name == "hegedus_frankl_sum":
        return sum(
            (Fraction(1, binomial(a + b, b)) for a, b in _pair_sizes(system)),
            Fraction(0),
        )
    if name == "yue_sum":
        return sum(
            (
                Fraction(1, (1 + a + b) * binomial(a + b, a))
                for a, b in _pair_sizes(system)
            ),
            Fraction(0),
        )
    if name == "partitioned_yue_sum":
        _require_context(system, name)
        total = Fraction(0)
        for i in range(1, system.m + 1):
            term = Fraction(1)
            for a_k, b_k in pair_block_profile(system, i):
                term *= Fraction(1, binomial(a_k + b_k, a_k) * (1 + a_k + b_k))
            total += term
        return total
    if name == "partitioned_bollobas_sum":
        _require_context(system, name)
        total = Fraction(0)
        for i in range(1, system.m + 1):
            term = Fraction(1)
            for a_k, b_k in pair_block_profile(system, i):
                term *= Fraction(1, binomial(a_k + b_k, a_k))
            total += term
        return total
    raise AssertionError(f"unhandled functional {name}")


# ---------------------------------------------------------------------------
# licensed inequality verdicts


def _license(system: System, kind: FunctionalKind) -> ConditionKind:
    """Verify and return the condition licensing the bound, or refuse."""
    name = kind.name
    is_set = isinstance(system, SetSystem)

    if name == "bollobas_sum":
        report = verify(system, "bollobas")
        if report.verdict:
            return report.condition
        if is_monotone_pair_profile(system) and verify(system, "skew").verdict:
            return condition_for(system, "skew", monotone=True)
        raise LicensingError(
            "bollobas_sum <= 1 needs the full bollobas condition or a "
            "size-monotone skew system; it fails for general skew systems"
        )
    if name == "scott_wilmer_sum":
        if not is_monotone_pair_profile(system):
            raise PreconditionError(
                "scott_wilmer_sum needs a_1 <= ... <= a_m and b_1 >= ... >= b_m"
            )
        report = verify(system, "skew")
        if report.verdict:
            return condition_for(system, "skew", monotone=True)
        raise LicensingError(f"skew condition violated at {report.first_violation}")
    if name in ("hegedus_frankl_sum", "yue_sum"):
        report = verify(system, "skew")
        if report.verdict:
            return report.condition
        raise LicensingError(f"skew condition violated at {report.first_violation}")
    if name in ("partitioned_yue_sum", "partitioned_bollobas_sum"):
        _require_context(system, name)
        if isinstance(system, SubspaceSystem) and not is_decomposition_compatible(system):
            raise LicensingError(
                f"{name} bound needs a decomposition-compatible system"
            )
        report = verify(system, "skew")
        if report.verdict:
            return report.condition
        raise LicensingError(f"skew condition violated at {report.first_violation}")
    if name == "tuza_sum":
        if is_set:
            report = verify(system, "weak")
            if report.verdict:
                return report.condition
            raise LicensingError(f"weak condition violated at {report.first_violation}")
        report = verify(system, "skew")
        if report.verdict:
            return report.condition
        raise LicensingError(
            "tuza_sum <= 1 for subspaces is licensed by the skew condition only; "
            "whether it holds for weak subspace systems is open"
        )
    raise AssertionError(f"unhandled functional {name}")


def _bound(system: System, kind: FunctionalKind) -> Rational:
    name = kind.name
    if name == "hegedus_frankl_sum":
        return Fraction(system.n + 1)
    if name == "partitioned_bollobas_sum":
        bound = Fraction(1)
        for n_k in block_sizes(system):
            bound *= 1 + n_k
        return bound
    return Fraction(1)


def evaluate_inequality(system: System, kind: str | FunctionalKind) -> InequalityVerdict:
    """Exact verdict ``value <= bound`` under the licensing condition.

    Raises LicensingError when the condition the bound depends on does not
    hold; the value itself is still available through :func:`omega`.
    """
    kind = _as_kind(kind)
    value = omega(system, kind)  # also validates shape/arity
    licensed_by = _license(system, kind)
    bound = _bound(system, kind)
    caveat = isinstance(system, SubspaceSystem) and isinstance(system.field, PrimeField)
    return InequalityVerdict(
        value=value,
        bound=bound,
        holds=value <= bound,
        tight=value == bound,
        licensed_by=licensed_by,
        field_caveat=caveat,
    )


# ---------------------------------------------------------------------------
# potentials


def _pair_deficits(system: SubspaceSystem, i: int) -> tuple[int, ...]:
    """d_{i,k} = n_k - dim((A_i ∩ V_k) + (B_i ∩ V_k)) per block."""
    assert system.decomposition is not None
    a, b = system.tuples[i - 1]
    out = []
    for blk in system.decomposition.blocks:
        filled = dim_of_sum([component(a, blk), component(b, blk)])
        out.append(blk.dim - filled)
    return tuple(out)


def phi(system: System, flavor: str) -> int:
    """The integer potential of the given saturation flavor.

    * ``set``:   sum of all component sizes over all tuples;
    * ``pair``:  sum_i prod_k 2^(n_k - d_{i,k}) over a decomposed pair system;
    * ``tuple``: sum of all component dimensions over all tuples.
    """
    if flavor == "set":
        if not isinstance(system, SetSystem):
            raise ShapeError("set potential needs a set system")
        return sum(sum(tuple_sizes(system, i)) for i in range(1, system.m + 1))
    if flavor == "pair":
        if not isinstance(system, SubspaceSystem) or system.d != 2:
            raise ShapeError("pair potential needs a subspace pair system")
        if system.decomposition is None:
            raise ShapeError("pair potential needs a decomposition")
        n_ks = system.decomposition.block_dims()
        total = 0
        for i in range(1, system.m + 1):
            term = 1
            for n_k, d_ik in zip(n_ks, _pair_deficits(system, i)):
                term *= 2 ** (n_k - d_ik)
            total += term
        return total
    if flavor == "tuple":
        if not isinstance(system, SubspaceSystem):
            raise ShapeError("tuple potential needs a subspace system")
        return sum(sum(tuple_sizes(system, i)) for i in range(1, system.m + 1))
    raise ValueError(f"unknown potential flavor {flavor!r}; choose from {PHI_FLAVORS}")


def phi_upper_bound(system: System, flavor: str) -> int:
    """The termination bound for the flavor: n(d+1)^n, 4^n, or n d^n."""
    if flavor == "set":
        if not isinstance(system, SetSystem):
            raise ShapeError("set potential needs a set system")
        return system.n * (system.d + 1) ** system.n
    if flavor == "pair":
        if not isinstance(system, SubspaceSystem) or system.d != 2:
            raise ShapeError("pair potential needs a subspace pair system")
        return 4**system.n
    if flavor == "tuple":
        if not isinstance(system, SubspaceSystem):
            raise ShapeError("tuple potential needs a subspace system")
        return system.n * system.d**system.n
    raise ValueError(f"unknown potential flavor {flavor!r}; choose from {PHI_FLAVORS}")
