import random

import pytest

from covlat import (
    BaseSet,
    ClosureTable,
    Cover,
    ExtensionFailureError,
    InitialContinuityDefectError,
    MixedParentError,
    PartialTableError,
    Relation,
    ValidatedMorphism,
    check_preimage_continuity,
    closed_subobjects,
    compare_closures,
    discrete_closure,
    identity,
    initial_closure,
    is_c_continuous,
    is_closed,
    is_dense,
    join_closures,
    leq_closures,
    meet_closures,
    preservation_checks,
    reflection,
    trivial_closure,
    verify_closure_axioms,
)
from covlat.errors import ContinuityPreconditionError
from covlat.oracle import (
    enumerate_closure_tables,
    random_closure_table,
    random_cover,
)


class TestAxioms:
    def test_discrete_and_trivial_pass(self, free2):
        assert verify_closure_axioms(discrete_closure(free2)).passed
        assert verify_closure_axioms(trivial_closure(free2)).passed

    def test_extension_failure_witness(self, free2):
        bad = ClosureTable(free2, [0, 0, 2, 3])
        v = verify_closure_axioms(bad)
        assert not v.passed
        assert v.witness["axiom"] == "C1"
        assert v.witness["carrier"].sorted_members() == ["a"]

    def test_monotonicity_failure_witness(self, m3_cover):
        # identity except {a} -> {a,c}: extensive everywhere but the image
        # of {a} escapes the image of {a,b}
        table = list(range(8))
        table[1] = 5
        bad = ClosureTable(m3_cover, table)
        v = verify_closure_axioms(bad)
        assert not v.passed
        assert v.witness["axiom"] == "C2"
        assert v.witness["smaller"].sorted_members() == ["a"]
        assert v.witness["larger"].sorted_members() == ["a", "b"]

    def test_bottom_failure_witness(self, free2):
        bad = ClosureTable(free2, [1, 1, 3, 3])
        v = verify_closure_axioms(bad)
        assert not v.passed and v.witness["axiom"] == "C3"

    def test_partial_table_rejected(self, free2):
        with pytest.raises(PartialTableError):
            ClosureTable(free2, [0, 1])
        with pytest.raises(PartialTableError):
            ClosureTable.from_mapping(free2, {0: 0, 1: 1, 2: 2})


class TestLattice:
    def test_size_two_enumeration(self, free2):
        tables = list(enumerate_closure_tables(free2))
        assert len(tables) == 4
        for t in tables:
            assert verify_closure_axioms(t).passed

    def test_join_meet_valid_and_absorb(self, free2):
        tables = list(enumerate_closure_tables(free2))
        for c in tables:
            for d in tables:
                j = join_closures([c, d])
                m = meet_closures([c, d])
                assert verify_closure_axioms(j).passed
                assert verify_closure_axioms(m).passed
                assert join_closures([c, meet_closures([c, d])]) == c
                assert meet_closures([c, join_closures([c, d])]) == c

    def test_extremes(self, free2):
        tables = list(enumerate_closure_tables(free2))
        disc = discrete_closure(free2)
        triv = trivial_closure(free2)
        for t in tables:
            assert leq_closures(disc, t)
            assert leq_closures(t, triv)

    def test_compare_witness(self, free2):
        v = compare_closures(trivial_closure(free2), discrete_closure(free2))
        assert not v.passed
        assert v.witness["carrier"].sorted_members() == ["a"]

    def test_mixed_parents_rejected(self, free2, m3_cover):
        with pytest.raises(MixedParentError):
            join_closures([discrete_closure(free2), discrete_closure(m3_cover)])


class TestContinuity:
    def test_identity_continuous_iff_leq(self, free2):
        m = identity(free2)
        tables = list(enumerate_closure_tables(free2))
        for c in tables:
            for d in tables:
                assert is_c_continuous(m, c, d).passed == leq_closures(c, d)

    def test_witness_is_source_carrier(self, free2):
        m = identity(free2)
        v = is_c_continuous(m, trivial_closure(free2), discrete_closure(free2))
        assert not v.passed
        assert v.witness["carrier"].base == free2.base

    def test_preimage_form_agrees_for_functions(self, free2):
        one = Cover.from_axiom_names(BaseSet(["x"]), [])
        r = Relation(free2.base, one.base, [("a", "x"), ("b", "x")])
        m = ValidatedMorphism.build(r, free2, one)
        for c in enumerate_closure_tables(free2):
            for d in enumerate_closure_tables(one):
                assert (
                    is_c_continuous(m, c, d).passed
                    == check_preimage_continuity(m, c, d).passed
                )


class TestInitialClosure:
    def test_identity_returns_target_verbatim(self, chain2):
        m = identity(chain2)
        for c in enumerate_closure_tables(chain2):
            assert initial_closure(m, c).table == c.table

    def test_non_total_relation_rejected(self, free2):
        one = Cover.from_axiom_names(BaseSet(["x"]), [])
        r = Relation(free2.base, one.base, [("a", "x")])
        m = ValidatedMorphism.build(r, free2, one)
        with pytest.raises(ExtensionFailureError):
            initial_closure(m, discrete_closure(one))

    def test_relational_continuity_gap(self, free2):
        # a relates to both targets, b only to the first: the pulled-back
        # table is a valid closure operator yet the morphism is not
        # continuous for it, because image-after-preimage overshoots
        tgt = Cover.from_axiom_names(BaseSet(["x", "y"]), [])
        r = Relation(free2.base, tgt.base, [("a", "x"), ("a", "y"), ("b", "x")])
        m = ValidatedMorphism.build(r, free2, tgt)
        with pytest.raises(InitialContinuityDefectError):
            initial_closure(m, discrete_closure(tgt))

    def test_maximality_when_defined(self):
        # whenever the pullback succeeds it is the largest continuous table
        rng = random.Random(7)
        found = 0
        for _ in range(40):
            c1 = random_cover(rng, 2)
            c2 = random_cover(rng, 2)
            pairs = [
                (s, t)
                for s in c1.base.elements
                for t in c2.base.elements
                if rng.random() < 0.6
            ]
            r = Relation(c1.base, c2.base, pairs)
            if not r.is_left_total():
                continue
            from covlat import respects_covers

            if not respects_covers(r, c1, c2).passed:
                continue
            m = ValidatedMorphism.build(r, c1, c2)
            c_tgt = random_closure_table(rng, c2)
            try:
                cinit = initial_closure(m, c_tgt)
            except InitialContinuityDefectError:
                continue
            found += 1
            for c_prime in enumerate_closure_tables(c1):
                assert is_c_continuous(m, c_prime, c_tgt).passed == leq_closures(
                    c_prime, cinit
                )
        assert found >= 5


class TestClosedDense:
    def test_predicates(self, free2):
        triv = trivial_closure(free2)
        assert is_closed(triv, free2.base.empty())
        assert is_closed(triv, free2.base.full())
        assert not is_closed(triv, free2.base.subset(["a"]))
        assert is_dense(triv, free2.base.subset(["a"]))
        assert not is_dense(triv, free2.base.empty())

    def test_closed_family_is_meet_closed(self, free2):
        for c in enumerate_closure_tables(free2):
            closed = closed_subobjects(c)
            for u in closed:
                for v in closed:
                    assert is_closed(c, u & v)

    def test_preservation(self, free2):
        m = identity(free2)
        c = trivial_closure(free2)
        assert preservation_checks(m, c, c).passed

    def test_preservation_needs_continuity(self, free2):
        m = identity(free2)
        with pytest.raises(ContinuityPreconditionError):
            preservation_checks(m, trivial_closure(free2), discrete_closure(free2))


class TestReflection:
    @pytest.mark.parametrize("seed", range(10))
    def test_idempotent_and_galois(self, seed):
        rng = random.Random(seed)
        cover = random_cover(rng, rng.randint(1, 3))
        c = random_closure_table(rng, cover)
        refl = reflection(c)
        size = 1 << len(cover.base)
        closed = [m for m in range(size) if c.table[m] == m]
        for t in range(size):
            rt = refl.table[t]
            assert refl.table[rt] == rt  # idempotent
            for v in closed:
                # reflection below v iff t below v
                assert (rt & ~v == 0) == (t & ~v == 0)

    def test_reflection_of_closure_is_pointwise_above(self, free2):
        for c in enumerate_closure_tables(free2):
            assert leq_closures(c, reflection(c))
