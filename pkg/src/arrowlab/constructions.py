"""Constructive pieces around arrow relations: the rigidity obstruction,
weakening along B1 -> B, grade-ascending search for a Ramsey object, and
the product construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arrow import (
    HOM,
    HOLDS,
    INCONCLUSIVE,
    SUBOBJECT,
    ArrowQuery,
    ArrowVerdict,
    Coloring,
    InconclusiveError,
    RamseyOracle,
    check_arrow,
    color_map,
    oracle_from_verdict,
)
from .core import (
    DomainError,
    FiniteCategory,
    Mor,
    Obj,
    PreconditionError,
    ProductCategory,
    automorphisms,
    class_of,
    subobject_classes,
)


def nonrigidity_coloring(cat: FiniteCategory, A: Obj, C: Obj, alpha: Mor) -> Coloring:
    """2-coloring of hom(A, C) using both colors on every orbit h·<alpha>.

    The first member of each orbit (in hom order) gets color 1 and the rest
    color 2. No w: A -> C can then make w·hom(A, A) monochromatic.
    """
    if alpha not in automorphisms(cat, A):
        raise PreconditionError(f"{alpha} is not an automorphism of {A}")
    ident = cat.identity(A)
    if alpha == ident:
        raise PreconditionError("alpha must differ from the identity")
    cycle = [ident]
    while True:
        nxt = cat.compose(alpha, cycle[-1])
        if nxt == ident:
            break
        cycle.append(nxt)
    homs = cat.hom(A, C)
    colors: dict[Mor, int] = {}
    for h in homs:
        if h in colors:
            continue
        orbit = [cat.compose(h, a) for a in cycle]
        if len(set(orbit)) != len(cycle):
            raise PreconditionError(f"{h} is not monic: its orbit under <alpha> collapses")
        for j, g in enumerate(sorted(orbit, key=cat.hom_index(A, C).__getitem__)):
            colors[g] = 1 if j == 0 else 2
    return Coloring(HOM, tuple(homs), tuple(colors[h] for h in homs), 2)


def weaken_witness(v: ArrowVerdict, e: Mor) -> ArrowVerdict:
    """From C -> (B)^A_k and e: B1 -> B, the verdict for C -> (B1)^A_k whose
    witness for a coloring is w·e, w being the original witness."""
    if not v.holds or v.finder is None:
        raise PreconditionError("weakening needs a holding verdict with a witness finder")
    q = v.query
    if e.cod != q.B or e not in q.cat.hom_index(e.dom, q.B):
        raise PreconditionError(f"{e} is not a morphism into {q.B}")
    q1 = ArrowQuery(q.cat, q.C, e.dom, q.A, q.k, q.variant)
    finder = v.finder

    def weakened(chi):
        i, w = finder(chi)
        return i, q.cat.compose(w, e)

    return ArrowVerdict(q1, HOLDS, "weakened", explored=0, finder=weakened)


def weaken_oracle(o: RamseyOracle, e: Mor) -> RamseyOracle:
    q = o.query
    if e.cod != q.B:
        raise PreconditionError(f"{e} does not land in {q.B}")
    q1 = ArrowQuery(q.cat, q.C, e.dom, q.A, q.k, q.variant)

    def evaluate(chi):
        i, w = o(chi)
        return i, q.cat.compose(w, e)

    return RamseyOracle(q1, evaluate, f"{o.name}.e")


@dataclass
class SearchOutcome:
    found: Obj | None
    verdict: ArrowVerdict | None
    last_grade: int | None
    trail: list[tuple[Obj, ArrowVerdict]] = field(default_factory=list)

    @property
    def minimal(self) -> bool:
        """No earlier candidate was left undecided."""
        return self.found is not None and all(not v.inconclusive for _, v in self.trail[:-1])


def search_ramsey_object(cat: FiniteCategory, B: Obj, A: Obj, k: int, variant: str = SUBOBJECT,
                         generator: Iterable[Obj] | None = None, budget: int | None = None,
                         mode: str = "backtracking", max_grade: int | None = None) -> SearchOutcome:
    """First C from a grade-ascending stream with C -> (B)^A_k.

    Candidates without B -> C are skipped. Every decided candidate is kept in
    the outcome's trail; an inconclusive one does not stop the search but
    makes the result non-minimal.
    """
    if not cat.hom(A, B):
        raise DomainError(f"no morphism {A} -> {B}")
    if generator is None:
        if max_grade is None:
            raise DomainError("give a generator or a max_grade")
        generator = cat.objects(max_grade)
    out = SearchOutcome(None, None, None)
    empty = True
    for C in generator:
        empty = False
        out.last_grade = C.grade
        if not cat.hom(B, C):
            continue
        v = check_arrow(ArrowQuery(cat, C, B, A, k, variant), mode, budget)
        out.trail.append((C, v))
        if v.holds:
            out.found, out.verdict = C, v
            return out
    if empty:
        raise DomainError("empty object generator")
    return out


def search_oracle(cat: FiniteCategory, B: Obj, A: Obj, k: int, max_grade: int,
                  variant: str = SUBOBJECT, budget: int | None = None) -> RamseyOracle | None:
    res = search_ramsey_object(cat, B, A, k, variant, max_grade=max_grade, budget=budget)
    return oracle_from_verdict(res.verdict) if res.found is not None else None


def pigeonhole_oracle(fsi: FiniteCategory, m: int, k: int) -> RamseyOracle:
    """[k(m-1)+1] -> ([m])^[1]_k in FSI, proved by counting: some color has
    m points, and w enumerates the first m of them."""
    C, B, A = fsi.set_obj(k * (m - 1) + 1), fsi.set_obj(m), fsi.set_obj(1)
    q = ArrowQuery(fsi, C, B, A, k, SUBOBJECT)
    points = subobject_classes(fsi, A, C)

    def evaluate(chi):
        by_color: dict[int, list[int]] = {}
        for p in points:
            by_color.setdefault(chi[p], []).append(p.representative.payload[0])
        color = min(c for c, pts in by_color.items() if len(pts) >= m)
        return color, Mor(B, C, tuple(sorted(by_color[color])[:m]))

    return RamseyOracle(q, evaluate, f"pigeonhole(m={m},k={k})")


def product_arrow_witness(o1: RamseyOracle, factory2: Callable[[int], RamseyOracle | None],
                          A_pair: tuple[Obj, Obj], B_pair: tuple[Obj, Obj], k: int,
                          product_cat: ProductCategory | None = None) -> tuple[Obj, RamseyOracle]:
    """Combine C1 -> (B1)^A1_k with C2 -> (B2)^A2_{k^t}, t = |binom(C1, A1)|,
    into (C1, C2) -> ((B1, B2))^(A1, A2)_k in the product category.

    A coloring of pairs of copies is read as a k^t-coloring of the copies in
    C2 (the tuple of colors along each column). The second oracle yields w2;
    fixing one copy e in its image gives a k-coloring of the copies in C1,
    and the first oracle yields w1. The pair (w1, w2) is the witness.
    """
    q1 = o1.query
    A1, A2 = A_pair
    B1, B2 = B_pair
    if q1.variant != SUBOBJECT or (q1.A, q1.B, q1.k) != (A1, B1, k):
        raise PreconditionError("first oracle does not prove C1 -> (B1)^A1_k")
    cat1 = q1.cat
    copies1 = subobject_classes(cat1, A1, q1.C)
    t = len(copies1)
    o2 = factory2(k ** t)
    if o2 is None:
        raise InconclusiveError(f"no oracle for {k}^{t} colors in the second factor")
    q2 = o2.query
    if q2.variant != SUBOBJECT or (q2.A, q2.B, q2.k) != (A2, B2, k ** t):
        raise PreconditionError("second oracle does not prove C2 -> (B2)^A2_{k^t}")
    cat2 = q2.cat
    prod = product_cat or ProductCategory(cat1, cat2)
    C_pair = prod.pair(q1.C, q2.C)
    q = ArrowQuery(prod, C_pair, prod.pair(B1, B2), prod.pair(A1, A2), k, SUBOBJECT)
    copies2 = subobject_classes(cat2, A2, q2.C)
    cell = {}
    for e1 in copies1:
        for e2 in copies2:
            cell[e1, e2] = class_of(prod, prod.pair_mor(e1.representative, e2.representative))

    def evaluate(chi):
        chi = color_map(chi)
        column = {}
        for e2 in copies2:
            code = 0
            for e1 in reversed(copies1):
                code = code * k + (chi[cell[e1, e2]] - 1)
            column[e2] = code + 1
        _, w2 = o2(column)
        e = class_of(cat2, cat2.compose(w2, subobject_classes(cat2, A2, B2)[0].representative))
        row = {e1: chi[cell[e1, e]] for e1 in copies1}
        i, w1 = o1(row)
        return i, prod.pair_mor(w1, w2)

    return C_pair, RamseyOracle(q, evaluate, f"product({o1.name}, {o2.name})")


__all__ = [
    "nonrigidity_coloring",
    "weaken_witness",
    "weaken_oracle",
    "search_ramsey_object",
    "search_oracle",
    "pigeonhole_oracle",
    "product_arrow_witness",
    "SearchOutcome",
    "INCONCLUSIVE",
]
