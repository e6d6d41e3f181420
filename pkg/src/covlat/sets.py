"""Finite base sets and their subsets.

A :class:`BaseSet` fixes a canonical ordering of element identifiers at
construction; a :class:`Subset` is a bitmask over that ordering (element
at position ``i`` occupies bit ``i``).  All subset algebra is total and
errors out when operands belong to different bases.

Subsets enumerate in increasing mask order; that order is the tie-break
used for every witness the library reports.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import BaseMismatchError


class BaseSet:
    """An ordered finite set of distinct, non-empty element identifiers."""

    __slots__ = ("_elements", "_index")

    def __init__(self, elements: Iterable[str]):
        elems = tuple(elements)
        index = {}
        for i, e in enumerate(elems):
            if not isinstance(e, str) or not e:
                raise ValueError(f"element identifiers must be non-empty strings: {e!r}")
            if e in index:
                raise ValueError(f"duplicate element identifier: {e!r}")
            index[e] = i
        self._elements = elems
        self._index = index

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    @property
    def cardinality(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise BaseMismatchError(f"element {name!r} is not in this base") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseSet) and self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"BaseSet({list(self._elements)!r})"

    # -- subset construction -------------------------------------------------

    def subset(self, members: Iterable[str] = ()) -> Subset:
        mask = 0
        for name in members:
            mask |= 1 << self.index(name)
        return Subset(self, mask)

    def subset_from_mask(self, mask: int) -> Subset:
        if mask < 0 or mask >> len(self._elements):
            raise ValueError(f"mask {mask:#x} out of range for base of size {len(self)}")
        return Subset(self, mask)

    def empty(self) -> Subset:
        return Subset(self, 0)

    def full(self) -> Subset:
        return Subset(self, (1 << len(self._elements)) - 1)

    def singleton(self, name: str) -> Subset:
        return Subset(self, 1 << self.index(name))

    def all_subsets(self) -> Iterator[Subset]:
        """All subsets in increasing mask order (the canonical witness order)."""
        for mask in range(1 << len(self._elements)):
            yield Subset(self, mask)


class Subset:
    """An immutable subset of a :class:`BaseSet`, stored as a bitmask."""

    __slots__ = ("base", "mask")

    def __init__(self, base: BaseSet, mask: int):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, *_):
        raise AttributeError("Subset is immutable")

    def _check(self, other: Subset) -> None:
        if not isinstance(other, Subset):
            raise TypeError(f"expected Subset, got {type(other).__name__}")
        if self.base != other.base:
            raise BaseMismatchError("subsets belong to different base sets")

    # -- algebra -------------------------------------------------------------

    def union(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.base, self.mask | other.mask)

    def intersection(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.base, self.mask & other.mask)

    def difference(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.base, self.mask & ~other.mask)

    def complement(self) -> Subset:
        full = (1 << len(self.base)) - 1
        return Subset(self.base, full & ~self.mask)

    def issubset(self, other: Subset) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def __lt__(self, other: Subset) -> bool:
        return self.issubset(other) and self.mask != other.mask

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.base.index(name) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[str]:
        return iter(self.members())

    def members(self) -> tuple[str, ...]:
        """Member names in base order."""
        return tuple(
            e for i, e in enumerate(self.base.elements) if self.mask >> i & 1
        )

    def sorted_members(self) -> list[str]:
        """Member names sorted lexicographically; the serialized form."""
        return sorted(self.members())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subset)
            and self.base == other.base
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.base, self.mask))

    def __repr__(self) -> str:
        return "{" + ",".join(self.members()) + "}"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask
