"""Ordered systems of d-tuples of sets or subspaces.

A system is an ordered list of d-tuples together with an optional context:
a partition of the ground set [n] for set systems, or a direct-sum
decomposition of the ambient space for subspace systems.  Order is part of
the value -- the skew conditions read differently under reordering -- so
systems are tuples, never sets, and equality is order-sensitive.

Subsets of [n] are stored as int bitmasks (bit p-1 <=> element p).  Tuple
indices in the public API are 1-based, matching the usual index set [m];
violation witnesses and fill-up steps use the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

from .errors import ShapeError
from .exact_arith import QQ, FieldTag
from .subspace_algebra import (
    Decomposition,
    Subspace,
    component,
    coordinate_subspace,
)

# ---------------------------------------------------------------------------
# bitmask helpers


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    mask = 0
    for p in elements:
        if not 1 <= p <= n:
            raise ValueError(f"element {p} outside [1, {n}]")
        mask |= 1 << (p - 1)
    return mask


def elements_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    p = 1
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return tuple(out)


def mask_size(mask: int) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class SetSystem:
    """Ordered system of d-tuples of subsets of [n], with optional partition.

    ``tuples[i]`` is a d-tuple of bitmasks.  ``partition`` is a tuple of block
    bitmasks that are disjoint with union [n].  Duplicate tuples are
    representable; the verifiers reject them through the cross clauses.
    """

    n: int
    d: int
    tuples: tuple[tuple[int, ...], ...]
    partition: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(tuple(t) for t in self.tuples))
        if self.n < 0 or self.d < 1:
            raise ValueError(f"need n >= 0 and d >= 1, got n={self.n}, d={self.d}")
        full = (1 << self.n) - 1
        for t in self.tuples:
            if len(t) != self.d:
                raise ShapeError(f"tuple arity {len(t)} != d={self.d}")
            for mask in t:
                if mask < 0 or mask & ~full:
                    raise ValueError(f"subset mask {mask} outside ground set [1, {self.n}]")
        if self.partition is not None:
            blocks = tuple(self.partition)
            object.__setattr__(self, "partition", blocks)
            union = 0
            for b in blocks:
                if b & union:
                    raise ValueError("partition blocks overlap")
                union |= b
            if union != full:
                raise ValueError("partition blocks do not cover [n]")

    @property
    def m(self) -> int:
        return len(self.tuples)

    @classmethod
    def from_sets(
        cls,
        n: int,
        tuples: Iterable[Sequence[Iterable[int]]],
        partition: Iterable[Iterable[int]] | None = None,
        d: int | None = None,
    ) -> "SetSystem":
        """Build from element collections instead of raw masks."""
        packed = tuple(
            tuple(mask_from_elements(part, n) for part in t) for t in tuples
        )
        if d is None:
            if not packed:
                raise ValueError("empty system needs an explicit arity d")
            d = len(packed[0])
        blocks = None
        if partition is not None:
            blocks = tuple(mask_from_elements(b, n) for b in partition)
        return cls(n, d, packed, blocks)


@dataclass(frozen=True)
class SubspaceSystem:
    """Ordered system of d-tuples of subspaces, with optional decomposition."""

    n: int
    field: FieldTag
    d: int
    tuples: tuple[tuple[Subspace, ...], ...]
    decomposition: Decomposition | None = None

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(tuple(t) for t in self.tuples))
        if self.n < 0 or self.d < 1:
            raise ValueError(f"need n >= 0 and d >= 1, got n={self.n}, d={self.d}")
        for t in self.tuples:
            if len(t) != self.d:
                raise ShapeError(f"tuple arity {len(t)} != d={self.d}")
            for sub in t:
                if sub.n != self.n or sub.field != self.field:
                    raise ShapeError("subspace in wrong ambient space or field")
        if self.decomposition is not None:
            if self.decomposition.n != self.n or self.decomposition.field != self.field:
                raise ShapeError("decomposition in wrong ambient space or field")

    @property
    def m(self) -> int:
        return len(self.tuples)


System = Union[SetSystem, SubspaceSystem]


def with_tuples(system: System, tuples) -> System:
    """Same system with the tuple list replaced (context kept)."""
    return replace(system, tuples=tuple(tuples))


def has_context(system: System) -> bool:
    if isinstance(system, SetSystem):
        return system.partition is not None
    return system.decomposition is not None


def block_sizes(system: System) -> tuple[int, ...]:
    """Block sizes n_k of the attached partition/decomposition."""
    if isinstance(system, SetSystem):
        if system.partition is None:
            raise ShapeError("set system has no partition")
        return tuple(mask_size(b) for b in system.partition)
    if system.decomposition is None:
        raise ShapeError("subspace system has no decomposition")
    return system.decomposition.block_dims()


def tuple_sizes(system: System, i: int) -> tuple[int, ...]:
    """Sizes |A_i^(l)| (or dims) of tuple i, 1-based."""
    t = _tuple_at(system, i)
    if isinstance(system, SetSystem):
        return tuple(mask_size(mask) for mask in t)
    return tuple(sub.dim for sub in t)


def pair_block_profile(system: System, i: int) -> tuple[tuple[int, int], ...]:
    """Per-block profile ((a_{i,1}, b_{i,1}), ..., (a_{i,r}, b_{i,r})) of pair i."""
    if system.d != 2:
        raise ShapeError(f"block profile needs a pair system, arity is {system.d}")
    a, b = _tuple_at(system, i)
    if isinstance(system, SetSystem):
        if system.partition is None:
            raise ShapeError("set system has no partition")
        return tuple(
            (mask_size(a & blk), mask_size(b & blk)) for blk in system.partition
        )
    if system.decomposition is None:
        raise ShapeError("subspace system has no decomposition")
    return tuple(
        (component(a, blk).dim, component(b, blk).dim)
        for blk in system.decomposition.blocks
    )


def profile(system: System, i: int):
    """Type vector of tuple i: per-block (a, b) matrix for pairs with context,
    plain size/dimension vector otherwise."""
    if system.d == 2 and has_context(system):
        return pair_block_profile(system, i)
    return tuple_sizes(system, i)


def _tuple_at(system: System, i: int):
    if not 1 <= i <= system.m:
        raise IndexError(f"tuple index {i} outside [1, {system.m}]")
    return system.tuples[i - 1]


# ---------------------------------------------------------------------------
# canonical embedding of set systems into coordinate-subspace systems


def embed(set_system: SetSystem) -> SubspaceSystem:
    """Map each subset S to span{e_p : p in S} over the rationals.

    Sizes become dimensions exactly (|A ∩ X_k| = dim(A' ∩ V_k)), the partition
    becomes the coordinate decomposition, and order is preserved, so every
    verifier verdict and weight value carries over unchanged.
    """
    n = set_system.n
    tuples = tuple(
        tuple(coordinate_subspace(n, QQ, elements_of_mask(mask)) for mask in t)
        for t in set_system.tuples
    )
    decomposition = None
    if set_system.partition is not None:
        decomposition = Decomposition(
            n,
            QQ,
            tuple(
                coordinate_subspace(n, QQ, elements_of_mask(b))
                for b in set_system.partition
            ),
        )
    return SubspaceSystem(n, QQ, set_system.d, tuples, decomposition)


def is_decomposition_compatible(system: SubspaceSystem) -> bool:
    """True iff every subspace equals the direct sum of its block components.

    Components of distinct blocks are independent because the blocks are, and
    their sum always sits inside the subspace, so equality holds exactly when
    the component dimensions add up to the subspace dimension.
    """
    if system.decomposition is None:
        raise ShapeError("no decomposition attached")
    blocks = system.decomposition.blocks
    for t in system.tuples:
        for sub in t:
            if sum(component(sub, blk).dim for blk in blocks) != sub.dim:
                return False
    return True
