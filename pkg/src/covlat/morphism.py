"""Relations between cover bases and their validation as morphisms.

A relation between two bases induces a preimage operator (union of the
sources of each target element); it respects the covers when target-side
covering is carried back to source-side covering.  Validation uses the
singleton reduction (quantify over target elements rather than all
subset pairs); the full-quantifier cross-checks live in
:mod:`covlat.oracle`.
"""

from __future__ import annotations

from typing import Iterable

from .caps import require_cap
from .cover import Cover
from .errors import (
    BaseMismatchError,
    CompositionDefectError,
    MorphismValidationError,
)
from .sets import BaseSet, Subset
from .verdict import Verdict


class Relation:
    """A finite relation between a source base and a target base."""

    __slots__ = ("source", "target", "pairs", "_image", "_preimage")

    def __init__(
        self,
        source: BaseSet,
        target: BaseSet,
        pairs: Iterable[tuple[str, str]],
    ):
        image = [0] * len(source)  # per source element, mask over target
        preimage = [0] * len(target)  # per target element, mask over source
        canon = set()
        for s, t in pairs:
            si = source.index(s)
            ti = target.index(t)
            image[si] |= 1 << ti
            preimage[ti] |= 1 << si
            canon.add((s, t))
        self.source = source
        self.target = target
        self.pairs = frozenset(canon)
        self._image = image
        self._preimage = preimage

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Relation)
            and self.source == other.source
            and self.target == other.target
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.pairs))

    def __repr__(self) -> str:
        return f"Relation({sorted(self.pairs)!r})"

    def converse(self) -> "Relation":
        return Relation(self.target, self.source, [(t, s) for s, t in self.pairs])

    # -- image operators -----------------------------------------------------

    def preimage_minus_mask(self, w_mask: int) -> int:
        out = 0
        m = w_mask
        while m:
            low = m & -m
            out |= self._preimage[low.bit_length() - 1]
            m ^= low
        return out

    def preimage_minus(self, w: Subset) -> Subset:
        if w.base != self.target:
            raise BaseMismatchError("subset is not over the target base")
        return self.source.subset_from_mask(self.preimage_minus_mask(w.mask))

    def direct_image_mask(self, x_mask: int) -> int:
        out = 0
        m = x_mask
        while m:
            low = m & -m
            out |= self._image[low.bit_length() - 1]
            m ^= low
        return out

    def direct_image(self, x: Subset) -> Subset:
        if x.base != self.source:
            raise BaseMismatchError("subset is not over the source base")
        return self.target.subset_from_mask(self.direct_image_mask(x.mask))

    def inverse_image(self, w: Subset) -> Subset:
        """The direct image of the converse; coincides with preimage_minus."""
        return self.preimage_minus(w)

    def is_left_total(self) -> bool:
        return all(self._image)


def respects_covers(r: Relation, c1: Cover, c2: Cover) -> Verdict:
    """Singleton reduction of cover respect.

    Checks, for every target element a and every target subset V covering
    it, that the preimage of {a} is covered by the preimage of V.
    """
    if r.source != c1.base or r.target != c2.base:
        raise BaseMismatchError("relation endpoints do not match the covers")
    n2 = len(c2.base)
    require_cap("respects_covers", n2, "respects")
    checked = 0
    for a in range(n2):
        bit = 1 << a
        pre_a = r._preimage[a]
        for v in range(1 << n2):
            if not c2.saturate_mask(v) & bit:
                continue
            checked += 1
            pre_v = r.preimage_minus_mask(v)
            if pre_a & ~c1.saturate_mask(pre_v):
                return Verdict.fail(
                    {
                        "element": c2.base.elements[a],
                        "v": c2.base.subset_from_mask(v),
                    },
                    checked,
                )
    return Verdict.ok(checked)


def _convergence_verdict(r: Relation, c1: Cover, c2: Cover) -> Verdict:
    """Totality-style condition plus the singleton-pair down-set condition."""
    n1 = len(c1.base)
    n2 = len(c2.base)
    checked = 1
    full1 = (1 << n1) - 1
    pre_all = r.preimage_minus_mask((1 << n2) - 1)
    if full1 & ~c1.saturate_mask(pre_all):
        return Verdict.fail({"condition": "source covered by preimage of target"}, checked)
    for u in range(n2):
        for v in range(n2):
            checked += 1
            pre_u = r._preimage[u]
            pre_v = r._preimage[v]
            left = c1.down_mask(pre_u, pre_v)
            down_uv = c2.down_mask(1 << u, 1 << v)
            right = c1.saturate_mask(r.preimage_minus_mask(down_uv))
            if left & ~right:
                return Verdict.fail(
                    {
                        "condition": "down-set",
                        "u": c2.base.elements[u],
                        "v": c2.base.elements[v],
                    },
                    checked,
                )
    return Verdict.ok(checked)


class ValidatedMorphism:
    """A relation that has passed cover-respect validation.

    Construction is eager: a relation failing validation never becomes a
    ValidatedMorphism.
    """

    __slots__ = ("relation", "source_cover", "target_cover", "respects", "convergent")

    def __init__(self, relation, source_cover, target_cover, respects, convergent):
        if not respects.passed:
            raise MorphismValidationError(respects)
        self.relation = relation
        self.source_cover = source_cover
        self.target_cover = target_cover
        self.respects = respects
        self.convergent = convergent

    @classmethod
    def build(cls, relation: Relation, c1: Cover, c2: Cover) -> "ValidatedMorphism":
        verdict = respects_covers(relation, c1, c2)
        if not verdict.passed:
            raise MorphismValidationError(verdict)
        convergent = _convergence_verdict(relation, c1, c2)
        return cls(relation, c1, c2, verdict, convergent)

    def __repr__(self) -> str:
        return f"ValidatedMorphism({sorted(self.relation.pairs)!r})"


def is_convergent_morphism(m: ValidatedMorphism) -> Verdict:
    return m.convergent


class MorphismClass:
    """Canonical representative of a morphism: the saturated preimage of
    each target element.  Two morphisms are equal as arrows iff their
    tables coincide."""

    __slots__ = ("source", "target", "table")

    def __init__(self, m: ValidatedMorphism):
        c1 = m.source_cover
        self.source = c1.base
        self.target = m.target_cover.base
        self.table = tuple(
            c1.saturate_mask(pre) for pre in m.relation._preimage
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MorphismClass)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.table))

    def to_json(self) -> dict:
        return {
            w: self.source.subset_from_mask(mask).sorted_members()
            for w, mask in zip(self.target.elements, self.table)
        }


def canonical_form(m: ValidatedMorphism) -> MorphismClass:
    return MorphismClass(m)


def equivalent(m1: ValidatedMorphism, m2: ValidatedMorphism) -> bool:
    if not (
        m1.source_cover.same_cover(m2.source_cover)
        and m1.target_cover.same_cover(m2.target_cover)
    ):
        raise BaseMismatchError("morphisms do not share source and target covers")
    return MorphismClass(m1) == MorphismClass(m2)


def compose(t: ValidatedMorphism, s: ValidatedMorphism) -> ValidatedMorphism:
    """Relational composite of s (first) and t (second)."""
    if not s.target_cover.same_cover(t.source_cover):
        raise BaseMismatchError("morphisms do not chain: target of s is not source of t")
    pairs = []
    mid = s.target_cover.base
    for a in s.relation.source.elements:
        mids = s.relation.direct_image(s.relation.source.subset([a]))
        out_mask = t.relation.direct_image_mask(mids.mask)
        for w in t.relation.target.subset_from_mask(out_mask).members():
            pairs.append((a, w))
    composite = Relation(s.relation.source, t.relation.target, pairs)
    verdict = respects_covers(composite, s.source_cover, t.target_cover)
    if not verdict.passed:
        raise CompositionDefectError(
            f"composite of validated morphisms failed re-verification: {verdict.witness}"
        )
    convergent = _convergence_verdict(composite, s.source_cover, t.target_cover)
    return ValidatedMorphism(composite, s.source_cover, t.target_cover, verdict, convergent)


def identity(c: Cover) -> ValidatedMorphism:
    rel = Relation(c.base, c.base, [(a, a) for a in c.base.elements])
    return ValidatedMorphism.build(rel, c, c)


def terminal_cover() -> Cover:
    """The one-element cover in which covering is plain membership."""
    return Cover(BaseSet(["0"]))


def terminal_morphism(c: Cover, terminal: Cover | None = None) -> ValidatedMorphism:
    if terminal is None:
        terminal = terminal_cover()
    if len(terminal.base) != 1:
        raise BaseMismatchError("terminal cover must have a one-element base")
    point = terminal.base.elements[0]
    rel = Relation(c.base, terminal.base, [(a, point) for a in c.base.elements])
    return ValidatedMorphism.build(rel, c, terminal)
