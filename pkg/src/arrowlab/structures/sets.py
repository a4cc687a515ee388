"""Finite sets with injections or surjections, and set partitions in
restricted-growth form."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from ..core import DomainError, FiniteCategory, Mor, Obj, OppositeCategory, SubobjectClass


class _FinSets(FiniteCategory):
    """Objects are {0, ..., n-1} for n >= 1; a morphism payload is the image
    table (f(0), ..., f(n-1))."""

    min_grade = 1

    def set_obj(self, n: int) -> Obj:
        if n < self.min_grade:
            raise DomainError(f"{self.tag} has no object of size {n}")
        return Obj(self.tag, n, n, f"[{n}]")

    def __call__(self, n: int) -> Obj:
        return self.set_obj(n)

    def objects_of_grade(self, n):
        return [self.set_obj(n)] if n >= self.min_grade else []

    def contains(self, A):
        return isinstance(A, Obj) and A.tag == self.tag and isinstance(A.payload, int) and A.payload >= 1

    def identity(self, A):
        return Mor(A, A, tuple(range(A.payload)))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, tuple(g.payload[x] for x in f.payload))

    def morphism(self, table: Sequence[int], cod: int) -> Mor:
        f = Mor(self.set_obj(len(table)), self.set_obj(cod), tuple(table))
        if f not in self.hom_index(f.dom, f.cod):
            raise DomainError(f"{table} is not a morphism of {self.tag} into [{cod}]")
        return f


class FSI(_FinSets):
    tag = "FSI"

    def _hom(self, A, B):
        for table in itertools.permutations(range(B.payload), A.payload):
            yield Mor(A, B, table)

    def substructures(self, B):
        for r in range(1, B.payload + 1):
            for subset in itertools.combinations(range(B.payload), r):
                yield Obj(self.tag, len(subset), len(subset), f"[{len(subset)}]")


class FSS(_FinSets):
    tag = "FSS"

    def _hom(self, A, B):
        n, m = A.payload, B.payload
        for table in itertools.product(range(m), repeat=n):
            if len(set(table)) == m:
                yield Mor(A, B, table)


_FSI = FSI()
_FSS = FSS()


def fsi_category() -> FSI:
    return _FSI


def fss_category() -> FSS:
    return _FSS


# ---------------------------------------------------------------------------
# partitions


def rgs(blocks_of: Sequence) -> tuple[int, ...]:
    """Restricted growth string of the partition {i ~ j iff blocks_of[i] == blocks_of[j]}."""
    relabel: dict = {}
    return tuple(relabel.setdefault(b, len(relabel)) for b in blocks_of)


def partitions(n: int, blocks: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of {0..n-1} as restricted growth strings, in
    lexicographic order; optionally only those with exactly ``blocks`` blocks."""

    def grow(prefix, top):
        if len(prefix) == n:
            if blocks is None or top + 1 == blocks:
                yield tuple(prefix)
            return
        if blocks is not None and (top + 1) + (n - len(prefix)) < blocks:
            return
        limit = top + 2 if blocks is None else min(top + 2, blocks)
        for b in range(limit):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    if n == 0:
        if blocks in (None, 0):
            yield ()
        return
    yield from grow([0], 0)


def block_list(p: Sequence[int]) -> list[frozenset[int]]:
    out: dict[int, set[int]] = {}
    for i, b in enumerate(p):
        out.setdefault(b, set()).add(i)
    return [frozenset(out[b]) for b in sorted(out)]


def coarser(gamma: Sequence[int], beta: Sequence[int]) -> bool:
    """True iff every block of ``beta`` lies inside a block of ``gamma``."""
    if len(gamma) != len(beta):
        raise DomainError("partitions of different sets")
    lift: dict[int, int] = {}
    for g, b in zip(gamma, beta):
        if lift.setdefault(b, g) != g:
            return False
    return True


def kernel(table: Sequence[int]) -> tuple[int, ...]:
    return rgs(table)


def partition_of_class(cls: SubobjectClass, cat: OppositeCategory | None = None) -> tuple[int, ...]:
    """Kernel partition of a class in FSS^op. The class of f: [a] -> [n] in
    FSS^op is a surjection [n] -> [a] up to relabelling of [a]."""
    if cat is not None and not isinstance(cat.base, FSS):
        raise DomainError("partition_of_class expects a class of FSS^op")
    return kernel(cls.representative.payload)


_FSS_OP = OppositeCategory(_FSS)


def fss_op_category() -> OppositeCategory:
    return _FSS_OP
