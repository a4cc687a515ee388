"""Finite boolean algebras with surjective homomorphisms, and Stone duality
with finite sets and injections.

BA_n is the algebra of subsets of n atoms; elements are bitmasks 0..2^n-1.
A homomorphism payload is its table on all 2^n elements.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..core import DomainError, FiniteCategory, Mor, Obj, OppositeCategory
from ..transport import Equivalence, Functor, NaturalTransformation, compose_functors, identity_functor
from .sets import fsi_category, rgs


def preimage_table(f: tuple[int, ...], n: int) -> tuple[int, ...]:
    """For an injection f: [a] -> [n], the table of x |-> f^-1(x) on BA_n."""
    return tuple(sum(((x >> f[j]) & 1) << j for j in range(len(f))) for x in range(1 << n))


def is_ba_homomorphism(table, n: int, m: int) -> bool:
    """Preserves 0, 1, join and complement (hence meet) from BA_n to BA_m."""
    top_n, top_m = (1 << n) - 1, (1 << m) - 1
    if len(table) != 1 << n or table[0] != 0 or table[top_n] != top_m:
        return False
    for x in range(1 << n):
        if table[top_n ^ x] != top_m ^ table[x]:
            return False
        for y in range(x + 1, 1 << n):
            if table[x | y] != table[x] | table[y]:
                return False
    return True


class FBAS(FiniteCategory):
    """Finite boolean algebras BA_n (n >= 1 atoms) and surjective homomorphisms.

    Surjections BA_n -> BA_m are listed through the injections of atoms
    [m] -> [n], in the injection order of FSI.
    """

    tag = "FBAS"
    min_grade = 1

    def algebra(self, n: int) -> Obj:
        if n < 1:
            raise DomainError("boolean algebras here have at least one atom")
        return Obj(self.tag, n, n, f"BA_{n}")

    def objects_of_grade(self, n):
        return [self.algebra(n)] if n >= 1 else []

    def _hom(self, A, B):
        n, m = A.payload, B.payload
        for f in itertools.permutations(range(n), m):
            yield Mor(A, B, preimage_table(f, n))

    def identity(self, A):
        return Mor(A, A, tuple(range(1 << A.payload)))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, tuple(g.payload[x] for x in f.payload))


@lru_cache(maxsize=None)
def fbas_category() -> FBAS:
    return FBAS()


@lru_cache(maxsize=None)
def fbas_op_category() -> OppositeCategory:
    return OppositeCategory(fbas_category())


def kernel_partition(table) -> tuple[int, ...]:
    return rgs(table)


def congruences(n: int, a: int) -> list[tuple[int, ...]]:
    """Con(BA_n, BA_a): kernels of the surjections BA_n -> BA_a, as partitions
    of the 2^n elements in restricted growth form."""
    cat = fbas_category()
    return sorted({kernel_partition(h.payload) for h in cat.hom(cat.algebra(n), cat.algebra(a))})


def atom_map(table, a: int, n: int) -> tuple[int, ...]:
    """The injection of atoms [a] -> [n] dual to a surjection BA_n -> BA_a."""
    out = []
    for j in range(a):
        hits = [i for i in range(n) if table[1 << i] == 1 << j]
        if len(hits) != 1:
            raise DomainError("table is not dual to an injection of atoms")
        out.append(hits[0])
    return tuple(out)


def stone_duality() -> Equivalence:
    """FSI and FBAS^op: [n] |-> BA_n; an injection goes to its preimage map.
    Both natural isomorphisms are identities."""
    fsi, op = fsi_category(), fbas_op_category()
    ba = fbas_category()

    def E_mor(f):
        # an FBAS^op morphism BA_a -> BA_n carries the surjection BA_n -> BA_a
        return Mor(ba.algebra(f.dom.payload), ba.algebra(f.cod.payload), preimage_table(f.payload, f.cod.payload))

    def H_mor(g):
        a, n = g.dom.payload, g.cod.payload
        return Mor(fsi.set_obj(a), fsi.set_obj(n), atom_map(g.payload, a, n))

    E = Functor(fsi, op, lambda A: ba.algebra(A.payload), E_mor, "Stone")
    H = Functor(op, fsi, lambda B: fsi.set_obj(B.payload), H_mor, "Atoms")
    eta = NaturalTransformation(identity_functor(fsi), compose_functors(H, E), fsi.identity, "eta")
    eps = NaturalTransformation(identity_functor(op), compose_functors(E, H), op.identity, "eps")
    return Equivalence(E, H, eta, eps, "stone")
