"""Bounded checks of the closure conditions on a category of structures:
hereditary, joint embedding and amalgamation properties, order expansions,
reasonable expansions and the ordering property.

Joint embedding and amalgamation can only be confirmed, never refuted, by
a bounded search: a missing amalgam may exist beyond the budget. Those
checks therefore report pass or inconclusive, never fail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import FiniteCategory, Mor, Obj
from .serialize import jsonable
from .transport import Functor

HP, JEP, AP = "HP", "JEP", "AP"
ORDER_EXPANSION, REASONABLE, ORDERING = "ORDER-EXPANSION", "REASONABLE", "ORDERING"
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class ClosureReport:
    property: str
    bound: int
    status: str
    counterexample: object = None
    detail: str = ""
    evidence: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "property": self.property,
            "bound": self.bound,
            "status": self.status,
            "counterexample": jsonable(self.counterexample),
            "detail": self.detail,
            "evidence": jsonable(self.evidence),
        }


def check_HP(cat: FiniteCategory, grade_bound: int) -> ClosureReport:
    """Every substructure candidate of every object up to the bound is a
    member of the class."""
    checked = 0
    for B in cat.objects(grade_bound):
        for S in cat.substructures(B):
            checked += 1
            if not cat.is_member(S):
                return ClosureReport(HP, grade_bound, FAIL, (B, S), f"{S} inside {B} is not in {cat.tag}")
    return ClosureReport(HP, grade_bound, PASS, detail=f"{checked} substructures checked")


def _candidates(cat: FiniteCategory, budget: int, generator: Iterable[Obj] | None) -> list[Obj]:
    return list(generator) if generator is not None else cat.objects(budget)


def check_JEP(cat: FiniteCategory, grade_bound: int, budget: int,
              generator: Iterable[Obj] | None = None) -> ClosureReport:
    """For every pair A, B up to the bound some D (among objects of grade at
    most ``budget``) receives both."""
    cands = _candidates(cat, budget, generator)
    obs = cat.objects(grade_bound)
    evidence = []
    for A, B in itertools.combinations_with_replacement(obs, 2):
        D = next((D for D in cands if cat.hom(A, D) and cat.hom(B, D)), None)
        if D is None:
            return ClosureReport(JEP, grade_bound, INCONCLUSIVE, (A, B), f"no joint embedding within grade {budget}")
        evidence.append((A, B, D))
    return ClosureReport(JEP, grade_bound, PASS, detail=f"{len(evidence)} pairs", evidence=evidence)


def find_amalgam(cat: FiniteCategory, f: Mor, g: Mor, cands: list[Obj]) -> tuple[Mor, Mor] | None:
    """u: B -> D and v: C -> D with u·f = v·g, for the first D that has one."""
    for D in cands:
        us, vs = cat.hom(f.cod, D), cat.hom(g.cod, D)
        if not us or not vs:
            continue
        by_image = {}
        for v in vs:
            by_image.setdefault(cat.compose(v, g), v)
        for u in us:
            v = by_image.get(cat.compose(u, f))
            if v is not None:
                return u, v
    return None


def check_AP(cat: FiniteCategory, grade_bound: int, budget: int,
             generator: Iterable[Obj] | None = None) -> ClosureReport:
    """Every span f: A -> B, g: A -> C up to the bound has an amalgam among
    objects of grade at most ``budget``."""
    cands = _candidates(cat, budget, generator)
    obs = cat.objects(grade_bound)
    evidence = []
    for A in obs:
        for B, C in itertools.product(obs, repeat=2):
            for f in cat.hom(A, B):
                for g in cat.hom(A, C):
                    found = find_amalgam(cat, f, g, cands)
                    if found is None:
                        return ClosureReport(AP, grade_bound, INCONCLUSIVE, (f, g),
                                             f"no amalgam within grade {budget}")
                    evidence.append((f, g) + found)
    return ClosureReport(AP, grade_bound, PASS, detail=f"{len(evidence)} spans", evidence=evidence)


# ---------------------------------------------------------------------------
# expansions


def expansions(U: Functor, A: Obj) -> list[Obj]:
    """Objects of the expanded category lying over A, at A's grade."""
    return [X for X in U.source.objects_of_grade(A.grade) if U(X) == A]


def _lift(U: Functor, f: Mor, A_star: Obj, B_star: Obj) -> Mor | None:
    """The morphism A* -> B* over f, if there is one."""
    for h in U.source.hom(A_star, B_star):
        if U(h) == f:
            return h
    return None


def check_order_expansion(U: Functor, grade_bound: int) -> ClosureReport:
    """Every object of the base up to the bound has at least one expansion."""
    counts = []
    for A in U.target.objects(grade_bound):
        n = len(expansions(U, A))
        if n == 0:
            return ClosureReport(ORDER_EXPANSION, grade_bound, FAIL, A, f"{A} has no expansion")
        counts.append((A, n))
    return ClosureReport(ORDER_EXPANSION, grade_bound, PASS,
                         detail=", ".join(f"{A}: {n}" for A, n in counts), evidence=[n for _, n in counts])


def check_reasonable(U: Functor, grade_bound: int,
                     extender: Callable[[Mor, Obj], Obj | None] | None = None) -> ClosureReport:
    """For every f: A -> B in the base and every expansion A* of A, some
    expansion B* of B makes f a morphism A* -> B*.

    ``extender(f, A*)`` may propose B* directly; its proposal is validated.
    Without it every expansion of B is tried.
    """
    base = U.target
    obs = base.objects(grade_bound)
    evidence = []
    for A, B in itertools.product(obs, repeat=2):
        for f in base.hom(A, B):
            for A_star in expansions(U, A):
                if extender is not None:
                    B_star = extender(f, A_star)
                    ok = B_star is not None and U(B_star) == B and _lift(U, f, A_star, B_star) is not None
                    choices = [B_star] if ok else []
                else:
                    choices = [X for X in expansions(U, B) if _lift(U, f, A_star, X) is not None][:1]
                if not choices:
                    return ClosureReport(REASONABLE, grade_bound, FAIL, (f, A_star),
                                         f"{f} does not lift from {A_star}")
                evidence.append((f, A_star, choices[0]))
    return ClosureReport(REASONABLE, grade_bound, PASS, detail=f"{len(evidence)} lifts", evidence=evidence)


def check_ordering_witness(C_star: FiniteCategory, U: Functor, A: Obj, B: Obj) -> ClosureReport:
    """B witnesses the ordering property for A: every expansion of A embeds
    into every expansion of B."""
    if U.source is not C_star:
        raise ValueError("U must start at the expanded category")
    pairs = []
    for A_star in expansions(U, A):
        for B_star in expansions(U, B):
            h = next(iter(C_star.hom(A_star, B_star)), None)
            if h is None:
                return ClosureReport(ORDERING, B.grade, FAIL, (A_star, B_star),
                                     f"{A_star} does not embed into {B_star}")
            pairs.append(h)
    if not pairs:
        return ClosureReport(ORDERING, B.grade, FAIL, (A, B), "no expansions to compare")
    return ClosureReport(ORDERING, B.grade, PASS, detail=f"{len(pairs)} expansion pairs", evidence=pairs)


def find_ordering_witness(C_star: FiniteCategory, U: Functor, A: Obj, budget: int,
                          generator: Iterable[Obj] | None = None) -> tuple[Obj | None, ClosureReport]:
    """First B (grade-ascending, grade at most ``budget``) witnessing the
    ordering property for A."""
    base = U.target
    cands = _candidates(base, budget, generator)
    last = ClosureReport(ORDERING, budget, INCONCLUSIVE, A, f"no witness within grade {budget}")
    for B in cands:
        if not base.hom(A, B):
            continue
        rep = check_ordering_witness(C_star, U, A, B)
        if rep.passed:
            return B, rep
    return None, last
