"""Exact linear algebra: canonical subspaces and their lattice operations.

A subspace of an n-dimensional ambient space is stored as its reduced
row echelon basis with strictly increasing pivot columns.  RREF is the unique
canonical representative of a row space, so structural equality of two
:class:`Subspace` values coincides with equality of the subspaces themselves,
and serialization is deterministic.

All arithmetic is exact: entries are ``Fraction`` or :class:`PrimeFieldScalar`
depending on the field tag.  Intersections are computed from the kernel of the
stacked-basis system, never from orthogonal complements (which are
field-sensitive).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import FieldMismatchError, PreconditionError
from .exact_arith import FieldTag, Scalar

Vector = tuple  # tuple[Scalar, ...]
Matrix = tuple  # tuple[Vector, ...]


def rref(rows: Iterable[Sequence[Scalar]], width: int, field: FieldTag) -> Matrix:
    """Reduced row echelon form; zero rows dropped, pivots normalized to 1."""
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != width:
            raise ValueError(f"row of length {len(r)}, expected {width}")
    zero = field.zero()
    rank = 0
    for col in range(width):
        pivot_row = None
        for i in range(rank, len(work)):
            if work[i][col] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = field.one() / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != zero:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank])


def rank_of(rows: Iterable[Sequence[Scalar]], width: int, field: FieldTag) -> int:
    return len(rref(rows, width, field))


def right_kernel(rows: Sequence[Sequence[Scalar]], width: int, field: FieldTag) -> list[Vector]:
    """Basis of {x : M x = 0} for the matrix M with the given rows.

    One kernel vector per free column, in ascending column order.
    """
    reduced = rref(rows, width, field)
    pivot_cols = [_pivot_col(row, field) for row in reduced]
    free_cols = [c for c in range(width) if c not in pivot_cols]
    zero, one = field.zero(), field.one()
    basis = []
    for f in free_cols:
        vec = [zero] * width
        vec[f] = one
        for row, c in zip(reduced, pivot_cols):
            vec[c] = -row[f]
        basis.append(tuple(vec))
    return basis


def _pivot_col(row: Sequence[Scalar], field: FieldTag) -> int:
    zero = field.zero()
    for c, x in enumerate(row):
        if x != zero:
            return c
    raise ValueError("zero row has no pivot")


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n in canonical (RREF) form.

    ``basis`` rows are linearly independent with pivot columns strictly
    increasing; the zero subspace has an empty basis.  Values are immutable
    and hashable; equality is subspace equality.
    """

    n: int
    field: FieldTag
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        """Subspace sum U + W."""
        _check_same_space(self, other)
        return canonicalize(self.n, self.field, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        """Subspace intersection U & W."""
        return intersection(self, other)

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        return contains(self, v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_same_space(self, other)
        return all(contains(other, row) for row in self.basis)

    def __str__(self) -> str:
        rows = "; ".join(
            "(" + ", ".join(self.field.scalar_to_str(x) for x in row) + ")"
            for row in self.basis
        )
        return f"<dim {self.dim} of F^{self.n}: {rows or '0'}>"


def _check_same_space(u: Subspace, w: Subspace) -> None:
    if u.n != w.n or u.field != w.field:
        raise FieldMismatchError(
            f"ambient/field mismatch: F^{u.n} over {u.field} vs F^{w.n} over {w.field}"
        )


def canonicalize(n: int, field: FieldTag, rows: Iterable[Sequence[Scalar]]) -> Subspace:
    """Row space of ``rows`` in RREF; dependent and zero rows dropped."""
    if n < 0:
        raise ValueError(f"ambient dimension must be >= 0, got {n}")
    return Subspace(n, field, rref(rows, n, field))


def zero_subspace(n: int, field: FieldTag) -> Subspace:
    return Subspace(n, field, ())


def full_space(n: int, field: FieldTag) -> Subspace:
    return coordinate_subspace(n, field, range(1, n + 1))


def coordinate_subspace(n: int, field: FieldTag, coords: Iterable[int]) -> Subspace:
    """span{e_p : p in coords}, coords 1-based.  Already in RREF by construction."""
    zero, one = field.zero(), field.one()
    rows = []
    for p in sorted(set(coords)):
        if not 1 <= p <= n:
            raise ValueError(f"coordinate {p} outside [1, {n}]")
        row = [zero] * n
        row[p - 1] = one
        rows.append(tuple(row))
    return Subspace(n, field, tuple(rows))


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    return u + w


def intersection(u: Subspace, w: Subspace) -> Subspace:
    """U ∩ W via the kernel of the stacked-basis system.

    A kernel vector (c, d) of the transposed stack satisfies
    sum(c_i * u_i) = -sum(d_j * w_j), so sum(c_i * u_i) lies in both spaces.
    """
    _check_same_space(u, w)
    if u.dim == 0 or w.dim == 0:
        return zero_subspace(u.n, u.field)
    stacked = u.basis + w.basis
    transposed = [tuple(row[c] for row in stacked) for c in range(u.n)]
    kernel = right_kernel(transposed, len(stacked), u.field)
    zero = u.field.zero()
    vectors = []
    for coeffs in kernel:
        vec = [zero] * u.n
        for c, row in zip(coeffs[: u.dim], u.basis):
            if c != zero:
                vec = [acc + c * x for acc, x in zip(vec, row)]
        vectors.append(tuple(vec))
    return canonicalize(u.n, u.field, vectors)


def component(u: Subspace, v_k: Subspace) -> Subspace:
    """U ∩ V_k, named for decomposition contexts."""
    return intersection(u, v_k)


def dim_of_sum(parts: Sequence[Subspace]) -> int:
    """dim(U_1 + ... + U_t) from one rank computation on the stacked bases."""
    if not parts:
        raise ValueError("dim_of_sum needs at least one subspace")
    first = parts[0]
    rows = []
    for part in parts:
        _check_same_space(first, part)
        rows.extend(part.basis)
    return rank_of(rows, first.n, first.field)


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    """True iff dim(sum of parts) equals the sum of the dims."""
    return dim_of_sum(parts) == sum(p.dim for p in parts)


def contains(u: Subspace, v: Sequence[Scalar]) -> bool:
    """Membership by elimination against the RREF basis."""
    if len(v) != u.n:
        raise ValueError(f"vector of length {len(v)}, expected {u.n}")
    zero = u.field.zero()
    work = list(v)
    for row in u.basis:
        c = _pivot_col(row, u.field)
        if work[c] != zero:
            f = work[c]
            work = [a - f * b for a, b in zip(work, row)]
    return all(x == zero for x in work)


def extension_vector(v_k: Subspace, s: Subspace) -> Optional[Vector]:
    """First canonical basis row of ``v_k`` outside ``s``; None when s = v_k.

    Deterministic by construction, which makes saturation runs reproducible.
    Requires s ⊆ v_k.
    """
    _check_same_space(v_k, s)
    if not s.is_subspace_of(v_k):
        raise PreconditionError("extension_vector requires S contained in V_k")
    for row in v_k.basis:
        if not contains(s, row):
            return row
    return None


@dataclass(frozen=True)
class Decomposition:
    """A direct-sum decomposition V = V_1 ⊕ ... ⊕ V_r of the ambient space."""

    n: int
    field: FieldTag
    blocks: tuple[Subspace, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ValueError("decomposition needs at least one block")
        for b in self.blocks:
            if b.n != self.n or b.field != self.field:
                raise FieldMismatchError("decomposition block in wrong ambient space/field")
        total = sum(b.dim for b in self.blocks)
        if total != self.n:
            raise ValueError(f"block dims sum to {total}, ambient is {self.n}")
        if dim_of_sum(self.blocks) != self.n:
            raise ValueError("blocks are not independent: stacked rank below ambient dim")

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)


def coordinate_decomposition(n: int, field: FieldTag, blocks: Sequence[Iterable[int]]) -> Decomposition:
    """Decomposition into coordinate subspaces spanned by the given 1-based index blocks."""
    return Decomposition(n, field, tuple(coordinate_subspace(n, field, b) for b in blocks))
