"""Axiom-generated cover relations on finite bases.

A cover is presented by generating axioms ``(a, V)``: the relation
``a covers U`` is the least one containing the axioms that is reflexive
and transitive.  Saturation (the set of all elements covering ``U``) is
computed by a forward-chaining worklist with per-axiom missing-premise
counters and memoized per subset.

Also here: ingestion of concrete topological spaces (points, observables
and a forcing relation), covers induced by finite suplattices, and
acceptance of user-supplied full relation tables.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .caps import require_cap
from .errors import BaseMismatchError, InputError
from .sets import BaseSet, Subset, popcount
from .verdict import Verdict


class CoverAxioms:
    """A normalized, de-duplicated list of generating axioms."""

    __slots__ = ("base", "pairs")

    def __init__(self, base: BaseSet, pairs: Iterable[tuple[str, Iterable[str]]]):
        seen = set()
        for head, body in pairs:
            seen.add((base.index(head), base.subset(body).mask))
        self.base = base
        self.pairs = tuple(sorted(seen))

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoverAxioms)
            and self.base == other.base
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return hash((self.base, self.pairs))

    def named_pairs(self) -> list[tuple[str, list[str]]]:
        out = []
        for head, body in self.pairs:
            out.append(
                (
                    self.base.elements[head],
                    self.base.subset_from_mask(body).sorted_members(),
                )
            )
        return out


class Cover:
    """A finite base with a memoized saturation operator.

    Either axiom-generated (the normal case) or backed by an explicit
    saturation function (concrete spaces, suplattices, validated tables);
    the function must be a closure operator on the powerset of the base.
    """

    def __init__(
        self,
        base: BaseSet,
        axioms: CoverAxioms | None = None,
        saturation_fn: Callable[[int], int] | None = None,
    ):
        if axioms is not None and axioms.base != base:
            raise BaseMismatchError("axioms refer to a different base")
        self.base = base
        self.axioms = axioms if axioms is not None else CoverAxioms(base, ())
        self._saturation_fn = saturation_fn
        self._cache: dict[int, int] = {}
        self._singleton_sats: list[int] | None = None
        self._covered_by: list[int] | None = None
        if saturation_fn is None:
            # Compiled form: (head bit index, premise mask) plus, per element,
            # the axioms whose premise mentions it.
            self._compiled = self.axioms.pairs
            watchers: list[list[int]] = [[] for _ in range(len(base))]
            for ax_id, (_, prem) in enumerate(self._compiled):
                m = prem
                while m:
                    low = m & -m
                    watchers[low.bit_length() - 1].append(ax_id)
                    m ^= low
            self._watchers = watchers

    @classmethod
    def from_axiom_names(
        cls, base: BaseSet, pairs: Iterable[tuple[str, Iterable[str]]]
    ) -> "Cover":
        return cls(base, CoverAxioms(base, pairs))

    def same_cover(self, other: "Cover") -> bool:
        """Equality for axiom-generated covers; identity otherwise."""
        if self is other:
            return True
        if self._saturation_fn is not None or other._saturation_fn is not None:
            return False
        return self.base == other.base and self.axioms == other.axioms

    # -- saturation ----------------------------------------------------------

    def saturate_mask(self, mask: int) -> int:
        cached = self._cache.get(mask)
        if cached is not None:
            return cached
        if self._saturation_fn is not None:
            result = self._saturation_fn(mask)
        else:
            result = self._forward_chain(mask)
        self._cache[mask] = result
        return result

    def _forward_chain(self, mask: int) -> int:
        result = mask
        compiled = self._compiled
        missing = []
        queue = []
        for head, prem in compiled:
            # gaps count against the input mask only; heads added below are
            # enqueued and decrement the counters themselves
            gap = popcount(prem & ~mask)
            missing.append(gap)
            if gap == 0 and not result >> head & 1:
                result |= 1 << head
                queue.append(head)
        while queue:
            elem = queue.pop()
            for ax_id in self._watchers[elem]:
                missing[ax_id] -= 1
                if missing[ax_id] == 0:
                    head = compiled[ax_id][0]
                    if not result >> head & 1:
                        result |= 1 << head
                        queue.append(head)
        return result

    def saturate(self, u: Subset) -> Subset:
        self._check(u)
        return self.base.subset_from_mask(self.saturate_mask(u.mask))

    def covers(self, a: str, u: Subset) -> bool:
        self._check(u)
        return bool(self.saturate_mask(u.mask) >> self.base.index(a) & 1)

    def covers_subset(self, u: Subset, v: Subset) -> bool:
        self._check(u)
        self._check(v)
        return u.mask & ~self.saturate_mask(v.mask) == 0

    def _check(self, u: Subset) -> None:
        if u.base != self.base:
            raise BaseMismatchError("subset belongs to a different base")

    # -- meets via the down-set ----------------------------------------------

    def _covered_by_singletons(self) -> list[int]:
        """For each element b, the mask of x with b covering {x}."""
        if self._covered_by is None:
            n = len(self.base)
            sats = [self.saturate_mask(1 << i) for i in range(n)]
            self._singleton_sats = sats
            covered = [0] * n
            for x, sat in enumerate(sats):
                m = sat
                while m:
                    low = m & -m
                    covered[low.bit_length() - 1] |= 1 << x
                    m ^= low
            self._covered_by = covered
        return self._covered_by

    def down_mask(self, u: int, v: int) -> int:
        covered = self._covered_by_singletons()
        out = 0
        for b in range(len(self.base)):
            cb = covered[b]
            if cb & u and cb & v:
                out |= 1 << b
        return out

    def down(self, u: Subset, v: Subset) -> Subset:
        self._check(u)
        self._check(v)
        return self.base.subset_from_mask(self.down_mask(u.mask, v.mask))

    # -- global predicates ---------------------------------------------------

    def is_convergent(self) -> Verdict:
        """Check that covering two subsets implies covering their down-set.

        Witness order: element, then the second subset, then the first,
        all in canonical mask order; the reported witness is ``(a, u, v)``.
        """
        n = len(self.base)
        require_cap("is_convergent", n, "double")
        checked = 0
        subsets = list(range(1 << n))
        sat = [self.saturate_mask(m) for m in subsets]
        for a in range(n):
            bit = 1 << a
            for v in subsets:
                if not sat[v] & bit:
                    continue
                for u in subsets:
                    if not sat[u] & bit:
                        continue
                    checked += 1
                    if not sat[self.down_mask(u, v)] & bit:
                        return Verdict.fail(
                            {
                                "element": self.base.elements[a],
                                "u": self.base.subset_from_mask(u),
                                "v": self.base.subset_from_mask(v),
                            },
                            checked,
                        )
        return Verdict.ok(checked)

    def saturated_sets(self) -> "FrameOfSaturated":
        n = len(self.base)
        require_cap("saturated_sets", n, "single")
        fixed = [
            self.base.subset_from_mask(m)
            for m in range(1 << n)
            if self.saturate_mask(m) == m
        ]
        convergent = None
        if n <= 8:
            convergent = self.is_convergent()
        return FrameOfSaturated(self, tuple(fixed), convergent)

    def pos(self) -> Subset:
        """Elements not covered by the empty subset."""
        full = (1 << len(self.base)) - 1
        return self.base.subset_from_mask(full & ~self.saturate_mask(0))

    def is_overt(self) -> Verdict:
        pos = self.pos().mask
        checked = 0
        for i in range(len(self.base)):
            checked += 1
            if not self.saturate_mask((1 << i) & pos) >> i & 1:
                return Verdict.fail({"element": self.base.elements[i]}, checked)
        return Verdict.ok(checked)


class FrameOfSaturated:
    """The fixpoints of saturation, ordered by inclusion.

    Joins are saturations of unions; binary meets (saturations of
    down-sets) are attached only when the cover is convergent.
    """

    def __init__(self, cover: Cover, sets: tuple[Subset, ...], convergent: Verdict | None):
        self.cover = cover
        self.sets = sets
        self.convergent = convergent

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, u: Subset) -> bool:
        return u.base == self.cover.base and self.cover.saturate_mask(u.mask) == u.mask

    @property
    def has_meets(self) -> bool:
        return self.convergent is not None and self.convergent.passed

    def join(self, u: Subset, v: Subset) -> Subset:
        return self.cover.saturate(u | v)

    def meet(self, u: Subset, v: Subset) -> Subset:
        if not self.has_meets:
            raise ValueError("meets are only defined for convergent covers")
        return self.cover.saturate(self.cover.down(u, v))

    def leq(self, u: Subset, v: Subset) -> bool:
        return u.issubset(v)

    def hasse_edges(self) -> list[tuple[Subset, Subset]]:
        """Covering pairs (u, v) with u strictly below v and nothing between."""
        edges = []
        for u in self.sets:
            for v in self.sets:
                if not u < v:
                    continue
                if any(u < w < v for w in self.sets):
                    continue
                edges.append((u, v))
        return edges


# -- concrete topological spaces ---------------------------------------------


class ConcreteSpace:
    """Points, observables and a forcing relation between them.

    The space axioms (every point forces something; forced intersections
    refine) are checkable predicates, not assumed.
    """

    def __init__(
        self,
        points: Iterable[str],
        base: BaseSet,
        forcing: Iterable[tuple[str, str]],
    ):
        pts = tuple(points)
        pindex = {}
        for i, p in enumerate(pts):
            if not isinstance(p, str) or not p:
                raise ValueError(f"point identifiers must be non-empty strings: {p!r}")
            if p in pindex:
                raise ValueError(f"duplicate point identifier: {p!r}")
            pindex[p] = i
        self.points = pts
        self.base = base
        ext = [0] * len(base)
        pairs = set()
        for point, obs in forcing:
            if point not in pindex:
                raise InputError(f"forcing mentions unknown point {point!r}")
            ext[base.index(obs)] |= 1 << pindex[point]
            pairs.add((point, obs))
        self.forcing = frozenset(pairs)
        self._ext = ext

    def ext_mask(self, a: str) -> int:
        return self._ext[self.base.index(a)]

    def ext_of_subset(self, u: Subset) -> int:
        if u.base != self.base:
            raise BaseMismatchError("subset belongs to a different base")
        out = 0
        m = u.mask
        while m:
            low = m & -m
            out |= self._ext[low.bit_length() - 1]
            m ^= low
        return out

    def ext_points(self, a: str) -> tuple[str, ...]:
        mask = self.ext_mask(a)
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def check_b1(self) -> Verdict:
        """Every point must force at least one observable."""
        forced = 0
        for e in self._ext:
            forced |= e
        checked = 0
        for i, p in enumerate(self.points):
            checked += 1
            if not forced >> i & 1:
                return Verdict.fail({"point": p}, checked)
        return Verdict.ok(checked)

    def check_b2(self) -> Verdict:
        """Shared neighborhoods must refine: the points forcing both a and b
        must all force some observable lying below both."""
        n = len(self.base)
        checked = 0
        for ia in range(n):
            for ib in range(n):
                checked += 1
                inter = self._ext[ia] & self._ext[ib]
                below_both = 0
                for ic in range(n):
                    if self._ext[ic] & ~inter == 0:
                        below_both |= self._ext[ic]
                if inter & ~below_both:
                    return Verdict.fail(
                        {"pair": [self.base.elements[ia], self.base.elements[ib]]},
                        checked,
                    )
        return Verdict.ok(checked)


def cover_from_concrete_space(space: ConcreteSpace) -> Cover:
    """The induced cover: a covers U iff every point forcing a forces U.

    Realized by a direct saturation override (a valid closure operator)
    rather than axiom synthesis, which would need exponentially many axioms.
    """

    ext = space._ext
    n = len(space.base)

    def saturation(mask: int) -> int:
        ext_u = 0
        m = mask
        while m:
            low = m & -m
            ext_u |= ext[low.bit_length() - 1]
            m ^= low
        out = 0
        for i in range(n):
            if ext[i] & ~ext_u == 0:
                out |= 1 << i
        return out

    return Cover(space.base, saturation_fn=saturation)


# -- finite suplattices ------------------------------------------------------


class FiniteSuplattice:
    """An explicit finite lattice in which every subset has a join.

    ``leq`` is given as pairs; reflexivity is implied.  Construction
    validates antisymmetry, transitivity and existence of all joins
    (including the empty join, i.e. a bottom element).
    """

    def __init__(self, elements: Iterable[str], leq_pairs: Iterable[tuple[str, str]]):
        self.base = BaseSet(elements)
        n = len(self.base)
        up = [1 << i for i in range(n)]  # up[i] = mask of j with i <= j
        for lo, hi in leq_pairs:
            up[self.base.index(lo)] |= 1 << self.base.index(hi)
        # transitive closure
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                acc = m
                mm = m
                while mm:
                    low = mm & -mm
                    acc |= up[low.bit_length() - 1]
                    mm ^= low
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in range(n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise InputError(
                        f"not a partial order: {self.base.elements[i]} and "
                        f"{self.base.elements[j]} are mutually below each other"
                    )
        self._up = up
        self._join: dict[int, int] = {}
        for mask in range(1 << n):
            ub = (1 << n) - 1
            m = mask
            while m:
                low = m & -m
                ub &= up[low.bit_length() - 1]
                m ^= low
            least = None
            mm = ub
            while mm:
                low = mm & -mm
                j = low.bit_length() - 1
                if ub & ~up[j] == 0:
                    least = j
                    break
                mm ^= low
            if least is None:
                members = self.base.subset_from_mask(mask).sorted_members()
                raise InputError(f"subset {members} has no join")
            self._join[mask] = least

    def leq(self, x: str, y: str) -> bool:
        return bool(self._up[self.base.index(x)] >> self.base.index(y) & 1)

    def join_index(self, mask: int) -> int:
        return self._join[mask]

    def join(self, members: Iterable[str]) -> str:
        return self.base.elements[self._join[self.base.subset(members).mask]]

    def lower_set_mask(self, idx: int) -> int:
        out = 0
        for i in range(len(self.base)):
            if self._up[i] >> idx & 1:
                out |= 1 << i
        return out


def cover_from_suplattice(lat: FiniteSuplattice) -> Cover:
    """The motivating cover: a covers U iff a is below the join of U."""

    def saturation(mask: int) -> int:
        return lat.lower_set_mask(lat.join_index(mask))

    return Cover(lat.base, saturation_fn=saturation)


# -- user-supplied relation tables -------------------------------------------


def cover_from_table(base: BaseSet, table: dict[int, int]) -> Cover:
    """Accept a full relation table only if it already satisfies the two
    cover conditions (reflexivity and transitivity); reject otherwise."""
    n = len(base)
    if set(table) != set(range(1 << n)):
        raise InputError("relation table must list every subset of the base exactly once")
    for mask, sat in table.items():
        if mask & ~sat:
            raise InputError(
                f"table violates reflexivity at "
                f"{base.subset_from_mask(mask).sorted_members()}"
            )
    for u, sat_u in table.items():
        for v, sat_v in table.items():
            if u & ~sat_v == 0 and sat_u & ~sat_v:
                raise InputError(
                    f"table violates transitivity: "
                    f"{base.subset_from_mask(u).sorted_members()} is covered by "
                    f"{base.subset_from_mask(v).sorted_members()} but its cover set is not"
                )
    return Cover(base, saturation_fn=table.__getitem__)
