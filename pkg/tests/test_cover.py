import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covlat import (
    BaseMismatchError,
    BaseSet,
    CapExceededError,
    ConcreteSpace,
    Cover,
    FiniteSuplattice,
    InputError,
    cover_from_concrete_space,
    cover_from_suplattice,
    cover_from_table,
)
from covlat.oracle import naive_saturate, random_cover


def small_cover(seed, size):
    return random_cover(random.Random(seed), size)


class TestSaturation:
    def test_empty_axioms_saturation_is_identity(self, free2):
        for u in free2.base.all_subsets():
            assert free2.saturate(u) == u

    def test_axiom_fires(self, chain2):
        b = chain2.base.subset(["b"])
        assert chain2.saturate(b).sorted_members() == ["a", "b"]

    def test_chained_axioms(self):
        base = BaseSet(["a", "b", "c"])
        c = Cover.from_axiom_names(base, [("a", ["b"]), ("b", ["c"])])
        assert c.saturate(base.subset(["c"])).sorted_members() == ["a", "b", "c"]

    def test_premise_containing_own_head_does_not_fire(self):
        # (e, {d, e}) must not fire from {d} alone even after d arrives late
        base = BaseSet(["a", "d", "e"])
        c = Cover.from_axiom_names(base, [("d", ["a"]), ("e", ["d", "e"])])
        assert c.saturate(base.subset(["a"])).sorted_members() == ["a", "d"]

    @given(st.integers(0, 10_000), st.integers(0, 6))
    @settings(max_examples=60, deadline=None)
    def test_matches_naive_fixpoint(self, seed, size):
        c = small_cover(seed, size)
        for m in range(1 << size):
            assert c.saturate_mask(m) == naive_saturate(c.axioms, m)

    @given(st.integers(0, 10_000), st.integers(0, 5))
    @settings(max_examples=40, deadline=None)
    def test_is_closure_operator(self, seed, size):
        c = small_cover(seed, size)
        for m in range(1 << size):
            s = c.saturate_mask(m)
            assert m & ~s == 0  # extensive
            assert c.saturate_mask(s) == s  # idempotent
            for v in range(1 << size):
                if m & ~v == 0:
                    assert s & ~c.saturate_mask(v) == 0  # monotone

    def test_covers_and_covers_subset(self, chain2):
        b = chain2.base.subset(["b"])
        assert chain2.covers("a", b)
        assert chain2.covers_subset(chain2.base.full(), b)

    def test_base_mismatch_rejected(self, chain2, m3_cover):
        with pytest.raises(BaseMismatchError):
            chain2.saturate(m3_cover.base.subset(["a"]))


class TestDownSet:
    def test_down_of_disjoint_free_sets_is_empty(self, free2):
        a = free2.base.subset(["a"])
        b = free2.base.subset(["b"])
        assert free2.down(a, b).mask == 0

    def test_down_contains_common_lower_bounds(self, chain2):
        a = chain2.base.subset(["a"])
        b = chain2.base.subset(["b"])
        # a covers {b}, so a lies below both
        assert "a" in chain2.down(a, b).members()


class TestConvergence:
    def test_m3_not_convergent_with_pinned_witness(self, m3_cover):
        v = m3_cover.is_convergent()
        assert not v.passed
        assert v.witness["element"] == "a"
        assert v.witness["u"].sorted_members() == ["b", "c"]
        assert v.witness["v"].sorted_members() == ["a"]

    @pytest.mark.parametrize("size", range(1, 7))
    def test_no_axiom_cover_is_convergent(self, size):
        import string

        c = Cover.from_axiom_names(BaseSet(list(string.ascii_lowercase[:size])), [])
        assert c.is_convergent().passed

    def test_chain_is_convergent(self, chain2):
        assert chain2.is_convergent().passed


class TestFrame:
    def test_free_frame_is_full_powerset(self, free2):
        fr = free2.saturated_sets()
        assert len(fr) == 4
        assert fr.has_meets

    def test_chain_frame(self, chain2):
        fr = chain2.saturated_sets()
        assert [s.sorted_members() for s in fr.sets] == [[], ["a"], ["a", "b"]]
        assert len(fr.hasse_edges()) == 2

    def test_meet_refused_when_not_convergent(self, m3_cover):
        fr = m3_cover.saturated_sets()
        assert not fr.has_meets
        with pytest.raises(ValueError):
            fr.meet(fr.sets[0], fr.sets[-1])

    def test_join_and_meet_are_lattice_ops(self, chain2):
        fr = chain2.saturated_sets()
        for u in fr:
            for v in fr:
                j = fr.join(u, v)
                m = fr.meet(u, v)
                assert fr.leq(u, j) and fr.leq(v, j)
                assert fr.leq(m, u) and fr.leq(m, v)


class TestPosOvert:
    def test_free_cover_all_positive_and_overt(self, free2):
        assert free2.pos() == free2.base.full()
        assert free2.is_overt().passed

    def test_element_covered_by_empty_is_not_positive(self):
        base = BaseSet(["a", "b"])
        c = Cover.from_axiom_names(base, [("a", [])])
        assert c.pos().sorted_members() == ["b"]
        # still overt: a covers the empty set, hence {a} inter Pos too
        assert c.is_overt().passed


class TestConcreteSpace:
    def make_space(self):
        base = BaseSet(["a", "b"])
        return ConcreteSpace(
            ["x", "y", "z"], base, [("x", "a"), ("y", "a"), ("y", "b"), ("z", "b")]
        )

    def test_b1_holds(self):
        assert self.make_space().check_b1().passed

    def test_b1_fails_on_mute_point(self):
        base = BaseSet(["a"])
        sp = ConcreteSpace(["x", "y"], base, [("x", "a")])
        v = sp.check_b1()
        assert not v.passed and v.witness["point"] == "y"

    def test_b2_fails_without_refinement(self):
        v = self.make_space().check_b2()
        assert not v.passed
        assert v.witness["pair"] == ["a", "b"]

    def test_b2_holds_with_refiner(self):
        base = BaseSet(["a", "b", "c"])
        sp = ConcreteSpace(
            ["x", "y", "z"],
            base,
            [("x", "a"), ("y", "a"), ("y", "b"), ("z", "b"), ("y", "c")],
        )
        assert sp.check_b2().passed

    def test_induced_cover_saturation(self):
        sp = self.make_space()
        c = cover_from_concrete_space(sp)
        # ext(a) = {x,y} is not inside ext(b) = {y,z}
        assert not c.covers("a", c.base.subset(["b"]))
        assert c.covers("a", c.base.full())
        # induced saturation is a closure operator
        for m in range(4):
            s = c.saturate_mask(m)
            assert m & ~s == 0 and c.saturate_mask(s) == s


class TestSuplattice:
    def test_square(self):
        lat = FiniteSuplattice(
            ["bot", "l", "r", "top"],
            [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
        )
        assert lat.join(["l", "r"]) == "top"
        assert lat.join([]) == "bot"
        c = cover_from_suplattice(lat)
        assert c.covers("top", c.base.subset(["l", "r"]))
        assert c.saturate(c.base.subset([])).sorted_members() == ["bot"]

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(InputError):
            FiniteSuplattice(["a", "b"], [("a", "b"), ("b", "a")])

    def test_rejects_missing_join(self):
        # two incomparable tops: {a, b} has no least upper bound
        with pytest.raises(InputError):
            FiniteSuplattice(["z", "a", "b"], [("z", "a"), ("z", "b")])


class TestRelationTable:
    def test_valid_table_accepted(self, chain2):
        table = {m: chain2.saturate_mask(m) for m in range(4)}
        c = cover_from_table(chain2.base, table)
        assert all(c.saturate_mask(m) == table[m] for m in range(4))

    def test_reflexivity_violation_rejected(self):
        base = BaseSet(["a"])
        with pytest.raises(InputError):
            cover_from_table(base, {0: 0, 1: 0})

    def test_transitivity_violation_rejected(self):
        base = BaseSet(["a", "b"])
        # sat(empty) = {a} but sat({b}) misses a, so the empty set is
        # covered by {b} while its cover set escapes
        with pytest.raises(InputError):
            cover_from_table(base, {0: 1, 1: 3, 2: 2, 3: 3})

    def test_partial_table_rejected(self):
        base = BaseSet(["a", "b"])
        with pytest.raises(InputError):
            cover_from_table(base, {0: 0, 1: 1})


class TestCaps:
    def test_convergence_cap(self, monkeypatch):
        import string

        base = BaseSet(list(string.ascii_lowercase[:9]))
        c = Cover.from_axiom_names(base, [])
        with pytest.raises(CapExceededError):
            c.is_convergent()

    def test_env_override(self, monkeypatch):
        import string

        monkeypatch.setenv("COVLAT_MAX_BASE", "9")
        base = BaseSet(list(string.ascii_lowercase[:9]))
        c = Cover.from_axiom_names(base, [])
        assert c.is_convergent().passed

    def test_env_override_clamped_to_hard_cap(self, monkeypatch):
        import string

        monkeypatch.setenv("COVLAT_MAX_BASE", "99")
        base = BaseSet(list(string.ascii_lowercase[:17]))
        c = Cover.from_axiom_names(base, [])
        with pytest.raises(CapExceededError):
            c.saturated_sets()
