"""Fill-up steps, weight invariance, saturation, and certification.

The per-step potential increments asserted here are recomputed from the
potential's definition: replacing a tuple of total size s with d tuples of
total size s+1 adds (d-1)*s + d for the set and tuple flavors, and exactly
3 * prod_j 2^(n_j - d_ij) for the pair flavor.
"""

import random
from fractions import Fraction

import pytest

from bollobas import (
    DuplicateTupleError,
    PreconditionError,
    ProbabilityVector,
    QQ,
    SetSystem,
    ShapeError,
    SubspaceSystem,
    certify_full_system,
    complement_chain,
    coordinate_decomposition,
    coordinate_subspace,
    embed,
    fill_up_set_tuple,
    fill_up_subspace_pair,
    fill_up_subspace_tuple,
    full_tuza_tuples,
    omega,
    phi,
    phi_upper_bound,
    random_valid_system,
    saturate,
    tuza,
    verify,
    zero_subspace,
)
from bollobas.saturation_engine import default_flavor, first_non_full, is_full_tuple
from bollobas.systems_model import tuple_sizes


def pair_deficit_product(system: SubspaceSystem, i: int) -> int:
    """prod_j 2^(n_j - d_ij) recomputed from components."""
    from bollobas.subspace_algebra import component, dim_of_sum

    a, b = system.tuples[i - 1]
    out = 1
    for blk in system.decomposition.blocks:
        filled = dim_of_sum([component(a, blk), component(b, blk)])
        out *= 2**filled
    return out


HALF = tuza((Fraction(1, 2), Fraction(1, 2)))


class TestFillUpSetTuple:
    def test_spec_example_weights(self):
        s = SetSystem.from_sets(2, [({1}, ())])
        new = fill_up_set_tuple(s, 1, 2)
        assert new.tuples == ((0b11, 0b00), (0b01, 0b10))
        assert omega(s, HALF) == Fraction(1, 2)
        assert omega(new, HALF) == Fraction(1, 4) + Fraction(1, 4)

    def test_potential_increment_matches_definition(self):
        # the replaced tuple has size-sum s = 1 and d = 2, so the potential
        # grows by (d-1)*s + d = 3: from 1 to 4 (each new tuple has sum 2)
        s = SetSystem.from_sets(2, [({1}, ())])
        new = fill_up_set_tuple(s, 1, 2)
        assert phi(s, "set") == 1
        assert phi(new, "set") == 4

    def test_increment_formula_randomized(self):
        rng = random.Random(31)
        for seed in range(40):
            sys = random_valid_system("set", 2 + seed % 3, 2 + seed % 2, "weak", 3, seed=seed)
            i = next(
                (k for k in range(1, sys.m + 1) if not is_full_tuple(sys, k, "set")),
                None,
            )
            if i is None:
                continue
            covered = 0
            for mask in sys.tuples[i - 1]:
                covered |= mask
            x = next(e for e in range(1, sys.n + 1) if not covered & (1 << (e - 1)))
            s_sum = sum(tuple_sizes(sys, i))
            new = fill_up_set_tuple(sys, i, x)
            assert phi(new, "set") - phi(sys, "set") == (sys.d - 1) * s_sum + sys.d

    def test_weight_invariance_for_any_p(self):
        s = SetSystem.from_sets(3, [({1}, {2})])
        new = fill_up_set_tuple(s, 1, 3)
        for p in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 5), Fraction(4, 5))):
            assert omega(s, tuza(p)) == omega(new, tuza(p))

    def test_covered_element_rejected(self):
        s = SetSystem.from_sets(2, [({1}, {2})])
        with pytest.raises(PreconditionError):
            fill_up_set_tuple(s, 1, 1)
        with pytest.raises(PreconditionError):
            fill_up_set_tuple(s, 1, 2)

    def test_replacement_order_is_coordinate_order(self):
        s = SetSystem.from_sets(2, [((), (), ())], d=3)
        new = fill_up_set_tuple(s, 1, 1)
        assert new.tuples == ((0b1, 0, 0), (0, 0b1, 0), (0, 0, 0b1))

    def test_duplicate_detection(self):
        # not a weak system: the would-be replacement already exists
        s = SetSystem.from_sets(2, [({1}, ()), ({1, 2}, ())])
        with pytest.raises(DuplicateTupleError):
            fill_up_set_tuple(s, 1, 2)

    def test_insertion_preserves_surrounding_order(self):
        s = SetSystem.from_sets(3, [({1}, {2}), ({3}, {1}), ({2}, {3})])
        new = fill_up_set_tuple(s, 2, 2)
        assert new.tuples[0] == s.tuples[0]
        assert new.tuples[3] == s.tuples[2]
        assert new.tuples[1] == (0b110, 0b001)  # ({2,3}, {1})
        assert new.tuples[2] == (0b100, 0b011)  # ({3}, {1,2})

    def test_verified_weak_inputs_never_duplicate(self, weak_set_tuple_corpus):
        for sys in weak_set_tuple_corpus:
            i = first_non_full(sys, "set")
            if i is None:
                continue
            covered = 0
            for mask in sys.tuples[i - 1]:
                covered |= mask
            x = next(e for e in range(1, sys.n + 1) if not covered & (1 << (e - 1)))
            new = fill_up_set_tuple(sys, i, x)  # must not raise
            assert new.m == sys.m + sys.d - 1


class TestFillUpSubspacePair:
    def setup_method(self):
        self.decomp = coordinate_decomposition(2, QQ, [[1, 2]])
        self.s = SubspaceSystem(
            2, QQ, 2,
            ((coordinate_subspace(2, QQ, [1]), zero_subspace(2, QQ)),),
            self.decomp,
        )

    def test_spec_example(self):
        new = fill_up_subspace_pair(self.s, 1, 1)
        assert new.m == 2
        a1, b1 = new.tuples[0]
        a2, b2 = new.tuples[1]
        assert (a1.dim, b1.dim) == (2, 0)
        assert (a2.dim, b2.dim) == (1, 1)
        assert omega(self.s, "partitioned_yue_sum") == Fraction(1, 2)
        assert omega(new, "partitioned_yue_sum") == Fraction(1, 3) + Fraction(1, 6)

    def test_potential_increment_exact(self):
        new = fill_up_subspace_pair(self.s, 1, 1)
        assert phi(self.s, "pair") == 2
        assert phi(new, "pair") == 8
        assert phi(new, "pair") - phi(self.s, "pair") == 3 * pair_deficit_product(self.s, 1)

    def test_result_is_skew_and_compatible(self):
        from bollobas import is_decomposition_compatible

        new = fill_up_subspace_pair(self.s, 1, 1)
        assert verify(new, "skew").verdict
        assert is_decomposition_compatible(new)

    def test_swapped_insertion_order_breaks_skew(self):
        # build the reversed replacement by hand: (A, B+<x>) before (A+<x>, B)
        new = fill_up_subspace_pair(self.s, 1, 1)
        swapped = SubspaceSystem(
            2, QQ, 2, (new.tuples[1], new.tuples[0]), self.decomp
        )
        report = verify(swapped, "skew")
        assert not report.verdict
        assert report.first_violation == (1, 2, "cross")

    def test_full_pair_rejected(self):
        full = SubspaceSystem(
            2, QQ, 2,
            ((coordinate_subspace(2, QQ, [1]), coordinate_subspace(2, QQ, [2])),),
            coordinate_decomposition(2, QQ, [[1, 2]]),
        )
        with pytest.raises(PreconditionError):
            fill_up_subspace_pair(full, 1, 1)

    def test_weight_invariance_randomized(self, compatible_pair_corpus):
        for sys in compatible_pair_corpus:
            i = first_non_full(sys, "pair")
            if i is None:
                continue
            k = next(
                k
                for k, blk in enumerate(sys.decomposition.blocks, start=1)
                if pair_block_deficit(sys, i, k) > 0
            )
            new = fill_up_subspace_pair(sys, i, k)
            assert omega(new, "partitioned_yue_sum") == omega(sys, "partitioned_yue_sum")
            assert phi(new, "pair") - phi(sys, "pair") == 3 * pair_deficit_product(sys, i)


def pair_block_deficit(system: SubspaceSystem, i: int, k: int) -> int:
    from bollobas.subspace_algebra import component, dim_of_sum

    a, b = system.tuples[i - 1]
    blk = system.decomposition.blocks[k - 1]
    return blk.dim - dim_of_sum([component(a, blk), component(b, blk)])


class TestFillUpSubspaceTuple:
    def test_spec_example(self):
        s = SubspaceSystem(
            2, QQ, 2, ((coordinate_subspace(2, QQ, [1]), zero_subspace(2, QQ)),)
        )
        p = tuza((Fraction(1, 3), Fraction(2, 3)))
        new = fill_up_subspace_tuple(s, 1)
        assert omega(s, p) == Fraction(1, 3)
        assert omega(new, p) == Fraction(1, 9) + Fraction(2, 9)
        # potential: definition gives 1 -> 4 (each new tuple has dim-sum 2)
        assert phi(s, "tuple") == 1
        assert phi(new, "tuple") == 4

    def test_full_tuple_rejected(self):
        s = SubspaceSystem(
            2, QQ, 2,
            ((coordinate_subspace(2, QQ, [1]), coordinate_subspace(2, QQ, [2])),),
        )
        with pytest.raises(PreconditionError):
            fill_up_subspace_tuple(s, 1)

    def test_skewness_preserved(self):
        z = zero_subspace(2, QQ)
        s = SubspaceSystem(2, QQ, 2, ((coordinate_subspace(2, QQ, [1]), z),))
        new = fill_up_subspace_tuple(s, 1)
        assert verify(new, "skew").verdict


class TestSaturate:
    def test_minimal_weak_example(self):
        s = SetSystem.from_sets(1, [((), ())], d=2)
        trace = saturate(s, "set")
        assert trace.final.tuples == ((0b1, 0), (0, 0b1))
        assert set(trace.omegas) == {Fraction(1)}
        assert len(trace.steps) == 1

    def test_already_full_is_identity(self):
        s = full_tuza_tuples(2, 2)
        trace = saturate(s, "set")
        assert trace.steps == ()
        assert trace.final == s

    def test_pair_example(self):
        s = SubspaceSystem(
            2, QQ, 2,
            ((coordinate_subspace(2, QQ, [1]), zero_subspace(2, QQ)),),
            coordinate_decomposition(2, QQ, [[1, 2]]),
        )
        trace = saturate(s, "pair", debug=True)
        assert len(trace.steps) == 1
        assert set(trace.omegas) == {Fraction(1, 2)}
        assert trace.phis == (2, 8)
        assert all(is_full_tuple(trace.final, i, "pair") for i in (1, 2))

    def test_unverified_input_rejected(self):
        s = SetSystem.from_sets(2, [({1}, {2}), ({1}, {2})])
        with pytest.raises(PreconditionError):
            saturate(s, "set")

    def test_weak_subspace_saturation_refused(self):
        # weak-but-not-skew subspace systems have no licensed saturation
        e1 = coordinate_subspace(2, QQ, [1])
        e2 = coordinate_subspace(2, QQ, [2])
        v = coordinate_subspace(2, QQ, [1, 2])
        z = zero_subspace(2, QQ)
        s = SubspaceSystem(2, QQ, 2, ((e1, e2), (v, z)))
        assert verify(s, "weak").verdict
        with pytest.raises(PreconditionError):
            saturate(s, "tuple")

    def test_pair_flavor_needs_decomposition(self):
        s = SubspaceSystem(2, QQ, 2, ())
        with pytest.raises(ShapeError):
            saturate(s, "pair")

    def test_default_flavor(self):
        assert default_flavor(SetSystem.from_sets(2, [], d=2)) == "set"
        assert default_flavor(SubspaceSystem(2, QQ, 2, ())) == "tuple"
        assert (
            default_flavor(
                SubspaceSystem(2, QQ, 2, (), coordinate_decomposition(2, QQ, [[1, 2]]))
            )
            == "pair"
        )

    def test_termination_within_bound(self, skew_set_pair_corpus):
        for s in skew_set_pair_corpus[:20]:
            trace = saturate(s, "set")
            assert len(trace.steps) <= phi_upper_bound(s, "set")
            assert trace.phis[-1] <= phi_upper_bound(s, "set")


class TestCertifyFullSystem:
    def test_full_tuza_27(self):
        s = full_tuza_tuples(3, 3)
        p = ProbabilityVector((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
        cert = certify_full_system(s, "set", p=p)
        assert cert.holds
        assert cert.quantity("omega") == "1"
        # each class realizes its multinomial bound exactly
        for c in cert.classes:
            assert c.count == c.bound

    def test_embedded_chain_pair_certificate(self):
        e = embed(complement_chain(2))
        e = SubspaceSystem(
            e.n, e.field, e.d, e.tuples, coordinate_decomposition(2, QQ, [[1, 2]])
        )
        cert = certify_full_system(e, "pair")
        assert cert.holds
        assert cert.quantity("omega") == "1"
        by_profile = {c.profile: c for c in cert.classes}
        assert by_profile[(2,)].count == 1 and by_profile[(2,)].bound == 1
        assert by_profile[(1,)].count == 2 and by_profile[(1,)].bound == 2
        assert by_profile[(0,)].count == 1 and by_profile[(0,)].bound == 1

    def test_single_full_pair(self):
        s = SubspaceSystem(
            2, QQ, 2,
            ((coordinate_subspace(2, QQ, [1, 2]), zero_subspace(2, QQ)),),
            coordinate_decomposition(2, QQ, [[1, 2]]),
        )
        cert = certify_full_system(s, "pair")
        assert cert.holds
        assert len(cert.classes) == 1
        assert cert.classes[0].count == 1 and cert.classes[0].bound == 1

    def test_non_full_rejected(self):
        s = SetSystem.from_sets(2, [({1}, ())])
        with pytest.raises(PreconditionError):
            certify_full_system(s, "set")

    def test_saturate_then_certify_is_the_proof(self, skew_set_pair_corpus):
        p = ProbabilityVector.uniform(2)
        for s in skew_set_pair_corpus[:15]:
            trace = saturate(s, "set", p=p)
            cert = certify_full_system(trace.final, "set", p=p)
            assert cert.holds
            assert omega(trace.final, tuza(p.entries)) == omega(s, tuza(p.entries))
