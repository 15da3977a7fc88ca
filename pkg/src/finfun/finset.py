"""Finite sets and the functions between them: the ambient category.

Sets are canonical initial segments {0, ..., size-1}.  Labels are display
strings only; equality and every construction ignore them, so all values
are reproducible and hashable.  Enumeration orders are fixed so that
reports and counterexamples come out deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, eq=False)
class FiniteSet:
    """A finite discrete space {0, ..., size-1} with optional labels."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError(f"size must be non-negative, got {self.size}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise ValueError(
                    f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be pairwise distinct")

    # Labels are cosmetic: two sets of equal size are the same object.
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteSet) and self.size == other.size

    def __hash__(self) -> int:
        return hash(("FiniteSet", self.size))

    def label(self, i: int) -> str:
        if not 0 <= i < self.size:
            raise IndexError(f"no element {i} in a set of size {self.size}")
        return self.labels[i] if self.labels is not None else str(i)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteSet({self.size})"


@dataclass(frozen=True)
class FiniteFunction:
    """A function dom -> cod given by its full value table."""

    dom: FiniteSet
    cod: FiniteSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.size:
            raise ValueError(
                f"table has {len(table)} entries for a domain of size "
                f"{self.dom.size}")
        for i, v in enumerate(table):
            if not 0 <= v < self.cod.size:
                raise ValueError(
                    f"table entry {v} at position {i} is not below the "
                    f"codomain size {self.cod.size}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.table))}):{self.dom.size}->{self.cod.size}"


@dataclass(frozen=True)
class SubsetMask:
    """A subset of an ambient set, stored as a sorted tuple of members."""

    ambient: FiniteSet
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if list(members) != sorted(set(members)):
            raise ValueError(f"members must be sorted and distinct: {members}")
        if members and not (0 <= members[0] and members[-1] < self.ambient.size):
            raise ValueError(
                f"members {members} out of range for ambient size "
                f"{self.ambient.size}")

    @classmethod
    def of(cls, ambient: FiniteSet, members: Iterable[int]) -> SubsetMask:
        return cls(ambient, tuple(sorted(set(members))))

    def intersection(self, other: SubsetMask) -> SubsetMask:
        if self.ambient != other.ambient:
            raise ValueError("intersection needs a common ambient set")
        return SubsetMask(self.ambient,
                          tuple(m for m in self.members if m in other.members))

    def without(self, x: int) -> SubsetMask:
        return SubsetMask(self.ambient,
                          tuple(m for m in self.members if m != x))

    def is_subset_of(self, other: SubsetMask) -> bool:
        return set(self.members) <= set(other.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def identity(x: FiniteSet) -> FiniteFunction:
    return FiniteFunction(x, x, tuple(range(x.size)))


def constant(dom: FiniteSet, cod: FiniteSet, value: int) -> FiniteFunction:
    if not 0 <= value < cod.size:
        raise ValueError(f"constant value {value} not in codomain of size "
                         f"{cod.size}")
    return FiniteFunction(dom, cod, (value,) * dom.size)


def empty_function(cod: FiniteSet) -> FiniteFunction:
    return FiniteFunction(FiniteSet(0), cod, ())


def compose(g: FiniteFunction, f: FiniteFunction) -> FiniteFunction:
    """The composite g after f; requires f.cod = g.dom."""
    if f.cod != g.dom:
        raise ValueError(
            f"cannot compose: f has codomain of size {f.cod.size} but g has "
            f"domain of size {g.dom.size}")
    return FiniteFunction(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def inclusion(a: SubsetMask) -> FiniteFunction:
    """The identity embedding of a subset into its ambient set.

    The domain is the canonical set of size |a| with labels naming the
    members; the table lists the members themselves.
    """
    labels = tuple(a.ambient.label(m) for m in a.members)
    return FiniteFunction(FiniteSet(len(a.members), labels), a.ambient,
                          a.members)


def is_injective(f: FiniteFunction) -> bool:
    return len(set(f.table)) == len(f.table)


def is_surjective(f: FiniteFunction) -> bool:
    return len(set(f.table)) == f.cod.size


def enumerate_functions(x: FiniteSet, y: FiniteSet) -> Iterator[FiniteFunction]:
    """All |y|^|x| functions x -> y, in lexicographic table order.

    Yields the single empty function when |x| = 0 and nothing at all when
    |x| > 0 and |y| = 0.
    """
    for table in itertools.product(range(y.size), repeat=x.size):
        yield FiniteFunction(x, y, table)


def enumerate_subsets(x: FiniteSet) -> Iterator[SubsetMask]:
    """All 2^|x| subsets, by increasing cardinality then lexicographic."""
    for k in range(x.size + 1):
        for members in itertools.combinations(range(x.size), k):
            yield SubsetMask(x, members)
