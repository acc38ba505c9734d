"""System data model: profiles, embedding, decomposition compatibility."""

import random

import pytest

from bollobas import (
    QQ,
    SetSystem,
    ShapeError,
    SubspaceSystem,
    canonicalize,
    coordinate_decomposition,
    coordinate_subspace,
    embed,
    is_decomposition_compatible,
    profile,
    random_valid_system,
    zero_subspace,
)
from bollobas.systems_model import (
    elements_of_mask,
    mask_from_elements,
    mask_size,
    pair_block_profile,
    tuple_sizes,
)
from fractions import Fraction


def test_mask_round_trip():
    assert mask_from_elements([1, 3], 3) == 0b101
    assert elements_of_mask(0b101) == (1, 3)
    assert mask_size(0b1011) == 3
    with pytest.raises(ValueError):
        mask_from_elements([4], 3)
    with pytest.raises(ValueError):
        mask_from_elements([0], 3)


class TestSetSystem:
    def test_from_sets(self):
        s = SetSystem.from_sets(3, [({1}, {2}), ({2, 3}, {1})])
        assert s.m == 2 and s.d == 2
        assert s.tuples == ((0b001, 0b010), (0b110, 0b001))

    def test_partition_validation(self):
        SetSystem.from_sets(2, [({1}, {2})], partition=[[1], [2]])
        with pytest.raises(ValueError):
            SetSystem.from_sets(2, [({1}, {2})], partition=[[1], [1, 2]])
        with pytest.raises(ValueError):
            SetSystem.from_sets(2, [({1}, {2})], partition=[[1]])

    def test_arity_validation(self):
        with pytest.raises(ShapeError):
            SetSystem(2, 2, ((1, 2, 0),))

    def test_order_sensitive_equality(self):
        a = SetSystem.from_sets(2, [({1}, {2}), ({2}, {1})])
        b = SetSystem.from_sets(2, [({2}, {1}), ({1}, {2})])
        assert a != b

    def test_empty_system_needs_arity(self):
        with pytest.raises(ValueError):
            SetSystem.from_sets(2, [])
        assert SetSystem.from_sets(2, [], d=3).m == 0


class TestProfile:
    def test_pair_with_partition(self):
        s = SetSystem.from_sets(2, [({1}, {2})], partition=[[1], [2]])
        assert profile(s, 1) == ((1, 0), (0, 1))

    def test_empty_pair_profile(self):
        s = SetSystem.from_sets(2, [((), ())], partition=[[1], [2]])
        assert profile(s, 1) == ((0, 0), (0, 0))

    def test_pair_without_partition_gives_sizes(self):
        s = SetSystem.from_sets(3, [({1, 2}, {3})])
        assert profile(s, 1) == (2, 1)

    def test_subspace_pair_profile(self):
        decomp = coordinate_decomposition(3, QQ, [[1, 2], [3]])
        sys = SubspaceSystem(
            3,
            QQ,
            2,
            ((coordinate_subspace(3, QQ, [1, 3]), coordinate_subspace(3, QQ, [2])),),
            decomp,
        )
        assert profile(sys, 1) == ((1, 1), (1, 0))

    def test_index_range_checked(self):
        s = SetSystem.from_sets(2, [({1}, {2})])
        with pytest.raises(IndexError):
            profile(s, 2)
        with pytest.raises(IndexError):
            profile(s, 0)


class TestEmbed:
    def test_single_pair(self):
        s = SetSystem.from_sets(2, [({1}, {2})])
        e = embed(s)
        assert e.tuples[0][0] == coordinate_subspace(2, QQ, [1])
        assert e.tuples[0][1] == coordinate_subspace(2, QQ, [2])

    def test_empty_sets_embed_to_zero(self):
        s = SetSystem.from_sets(2, [((), ())])
        e = embed(s)
        assert e.tuples[0][0].dim == 0 and e.tuples[0][1].dim == 0

    def test_sizes_become_dims(self):
        rng = random.Random(4)
        for seed in range(25):
            n = 2 + seed % 3
            s = random_valid_system("set", n, 2, "skew", target_m=3, seed=seed)
            e = embed(s)
            for i in range(1, s.m + 1):
                assert tuple_sizes(s, i) == tuple_sizes(e, i)

    def test_block_profiles_preserved(self):
        s = SetSystem.from_sets(
            4,
            [({1, 3}, {2}), ({2, 4}, {1, 3})],
            partition=[[1, 2], [3, 4]],
        )
        e = embed(s)
        for i in (1, 2):
            assert pair_block_profile(s, i) == pair_block_profile(e, i)

    def test_embedded_system_is_compatible(self):
        s = SetSystem.from_sets(3, [({1}, {2, 3})], partition=[[1, 2], [3]])
        assert is_decomposition_compatible(embed(s))


class TestDecompositionCompatibility:
    def test_diagonal_line_is_incompatible(self):
        decomp = coordinate_decomposition(3, QQ, [[1, 2], [3]])
        diag = canonicalize(3, QQ, [(Fraction(1), Fraction(0), Fraction(1))])
        sys = SubspaceSystem(3, QQ, 2, ((diag, zero_subspace(3, QQ)),), decomp)
        assert not is_decomposition_compatible(sys)

    def test_zero_subspaces_are_compatible(self):
        decomp = coordinate_decomposition(2, QQ, [[1], [2]])
        z = zero_subspace(2, QQ)
        sys = SubspaceSystem(2, QQ, 2, ((z, z),), decomp)
        assert is_decomposition_compatible(sys)

    def test_requires_decomposition(self):
        z = zero_subspace(2, QQ)
        sys = SubspaceSystem(2, QQ, 2, ((z, z),))
        with pytest.raises(ShapeError):
            is_decomposition_compatible(sys)
