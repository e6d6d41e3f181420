import pytest

from covlat import (
    BaseMismatchError,
    BaseSet,
    Cover,
    Subobject,
    induced_cover,
    lattice,
    p_star,
)


class TestSublocaleFamily:
    def test_family_members(self, free2):
        t = free2.base.subset(["a"])
        fam = p_star(t)
        got = sorted(s.sorted_members() for s in fam)
        # V union {b} for V inside {a}
        assert got == [["a", "b"], ["b"]]

    def test_verify_laws(self, free2, chain2, m3_cover):
        for cover in (free2, chain2, m3_cover):
            for t in cover.base.all_subsets():
                assert p_star(t).verify().passed

    def test_top_and_bottom(self, m3_cover):
        t = m3_cover.base.subset(["a", "b"])
        fam = p_star(t)
        assert m3_cover.base.full() in fam
        assert m3_cover.base.subset(["c"]) in fam
        assert m3_cover.base.subset(["a"]) not in fam

    def test_full_carrier_gives_whole_powerset(self, free2):
        fam = p_star(free2.base.full())
        assert len(fam) == 4


class TestInducedCover:
    def test_relativized_axioms(self, chain2):
        t = chain2.base.subset(["b"])
        axioms = induced_cover(chain2, t)
        # complement is {a}; every saturated set containing a yields a
        # relativized axiom (a, U union {a})
        heads = {h for h, _ in axioms}
        assert heads == {"a"}
        for _, rhs in axioms:
            assert "a" in rhs.members()

    def test_full_carrier_has_no_relative_axioms(self, chain2):
        assert induced_cover(chain2, chain2.base.full()) == []

    def test_base_mismatch(self, chain2, m3_cover):
        with pytest.raises(BaseMismatchError):
            induced_cover(chain2, m3_cover.base.full())


class TestSubobjectLattice:
    def test_is_full_powerset(self, m3_cover):
        lat = lattice(m3_cover)
        assert len(lat) == 8
        assert lat.top.carrier == m3_cover.base.full()
        assert lat.bottom.carrier.mask == 0

    def test_meet_join_leq(self, free2):
        lat = lattice(free2)
        xs = list(lat)
        for x in xs:
            for y in xs:
                m = lat.meet(x, y)
                j = lat.join(x, y)
                assert lat.leq(m, x) and lat.leq(m, y)
                assert lat.leq(x, j) and lat.leq(y, j)
                # absorption
                assert lat.join(x, lat.meet(x, y)) == x
                assert lat.meet(x, lat.join(x, y)) == x

    def test_hasse_edges_are_single_bit_steps(self, free2):
        lat = lattice(free2)
        edges = lat.hasse_edges()
        assert len(edges) == 4  # diamond
        for lo, hi in edges:
            diff = hi.carrier.mask & ~lo.carrier.mask
            assert diff and diff & (diff - 1) == 0

    def test_subobject_equality_and_complement(self, chain2):
        a = Subobject(chain2, chain2.base.subset(["a"]))
        assert a.complement.sorted_members() == ["b"]
        assert a == Subobject(chain2, chain2.base.subset(["a"]))
        assert a.induced_axioms() == induced_cover(chain2, a.carrier)
