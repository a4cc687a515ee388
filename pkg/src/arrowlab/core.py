"""Finite categories: objects, morphisms, composition, automorphisms and
subobject classes, plus the opposite and product constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence


class DomainError(ValueError):
    """An object or morphism does not belong where it was used."""


class CompositionError(DomainError):
    pass


class PreconditionError(ValueError):
    """A documented precondition of an operation is not met."""


@dataclass(frozen=True)
class Obj:
    tag: str
    payload: Hashable
    grade: int = field(compare=False)
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.label or f"{self.tag}:{self.payload}"


@dataclass(frozen=True)
class Mor:
    dom: Obj
    cod: Obj
    payload: Hashable

    def __str__(self) -> str:
        return f"{self.dom}->{self.cod}:{self.payload}"


@dataclass(frozen=True)
class LawViolation:
    law: str
    detail: str

    def __str__(self) -> str:
        return f"{self.law}: {self.detail}"


class FiniteCategory:
    """Base class for every concrete and derived category.

    Subclasses implement ``objects_of_grade``, ``_hom``, ``identity`` and
    ``_compose``; everything else (caching, ordering, membership) is shared.
    Composition follows the usual convention: ``compose(g, f)`` is g after f.
    """

    tag = "category"
    min_grade = 0

    def __init__(self) -> None:
        self._cache: dict = {}

    def cached(self, key, fn: Callable):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = fn()
            return value

    # -- enumeration ------------------------------------------------------
    def objects_of_grade(self, n: int) -> list[Obj]:
        raise NotImplementedError

    def objects(self, max_grade: int) -> list[Obj]:
        out: list[Obj] = []
        for n in range(self.min_grade, max_grade + 1):
            out.extend(self.objects_of_grade(n))
        return out

    def contains(self, A: Obj) -> bool:
        if not isinstance(A, Obj) or A.grade < self.min_grade:
            return False
        return A in self.cached(("grade", A.grade), lambda: set(self.objects_of_grade(A.grade)))

    def require(self, *objs: Obj) -> None:
        for A in objs:
            if not self.contains(A):
                raise DomainError(f"{A!s} is not an object of {self.tag}")

    def hom(self, A: Obj, B: Obj) -> list[Mor]:
        key = ("hom", A, B)
        if key not in self._cache:
            self.require(A, B)
            self._cache[key] = list(self._hom(A, B))
        return self._cache[key]

    def hom_index(self, A: Obj, B: Obj) -> dict[Mor, int]:
        return self.cached(("hom_index", A, B), lambda: {f: i for i, f in enumerate(self.hom(A, B))})

    def _hom(self, A: Obj, B: Obj) -> Iterable[Mor]:
        raise NotImplementedError

    def identity(self, A: Obj) -> Mor:
        raise NotImplementedError

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f.cod != g.dom:
            raise CompositionError(f"cannot compose {g} after {f}")
        return self._compose(g, f)

    def _compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    def arrow_exists(self, A: Obj, B: Obj) -> bool:
        return bool(self.hom(A, B))

    # -- membership for hereditary checks -------------------------------
    def is_member(self, candidate) -> bool:
        return isinstance(candidate, Obj) and self.contains(candidate)

    def substructures(self, B: Obj) -> Iterator:
        raise NotImplementedError(f"{self.tag} does not enumerate substructures")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.tag}>"


# ---------------------------------------------------------------------------
# Law checking, automorphisms, subobject classes


def verify_category_laws(cat: FiniteCategory, grade_bound: int) -> list[LawViolation]:
    """Every violated identity or associativity instance among objects of
    grade at most ``grade_bound``. An empty list means the laws hold there."""
    obs = cat.objects(grade_bound)
    report: list[LawViolation] = []
    for A in obs:
        idA = cat.identity(A)
        if idA.dom != A or idA.cod != A:
            report.append(LawViolation("identity-typing", f"id of {A} is {idA}"))
        for B in obs:
            idB = cat.identity(B)
            for f in cat.hom(A, B):
                if cat.compose(idB, f) != f:
                    report.append(LawViolation("left-identity", str(f)))
                if cat.compose(f, idA) != f:
                    report.append(LawViolation("right-identity", str(f)))
    for A, B, C, D in itertools.product(obs, repeat=4):
        hs, gs, fs = cat.hom(A, B), cat.hom(B, C), cat.hom(C, D)
        if not (hs and gs and fs):
            continue
        for h in hs:
            for g in gs:
                gh = cat.compose(g, h)
                if gh.dom != A or gh.cod != C:
                    report.append(LawViolation("composition-typing", f"{g} after {h}"))
                    continue
                for f in fs:
                    if cat.compose(cat.compose(f, g), h) != cat.compose(f, gh):
                        report.append(LawViolation("associativity", f"{f}, {g}, {h}"))
    return report


def inverse(cat: FiniteCategory, f: Mor) -> Mor | None:
    for g in cat.hom(f.cod, f.dom):
        if cat.compose(g, f) == cat.identity(f.dom) and cat.compose(f, g) == cat.identity(f.cod):
            return g
    return None


def automorphisms(cat: FiniteCategory, A: Obj) -> list[Mor]:
    cat.require(A)
    return cat.cached(("aut", A), lambda: [f for f in cat.hom(A, A) if inverse(cat, f) is not None])


def is_rigid(cat: FiniteCategory, A: Obj) -> bool:
    return automorphisms(cat, A) == [cat.identity(A)]


def is_monic_on(cat: FiniteCategory, f: Mor, sources: Iterable[Obj]) -> bool:
    """Left cancellability of ``f`` tested against every object in ``sources``."""
    for X in sources:
        images = [cat.compose(f, g) for g in cat.hom(X, f.dom)]
        if len(set(images)) != len(images):
            return False
    return True


@dataclass(frozen=True)
class SubobjectClass:
    """The coset f·Aut(A) inside hom(A, B), named by its first member in
    the category's hom order."""

    representative: Mor
    members: tuple[Mor, ...] = field(compare=False, repr=False)

    @property
    def source(self) -> Obj:
        return self.representative.dom

    @property
    def target(self) -> Obj:
        return self.representative.cod

    def __contains__(self, f: Mor) -> bool:
        return f in self.members


def class_of(cat: FiniteCategory, f: Mor) -> SubobjectClass:
    key = ("class_of", f)
    if key in cat._cache:
        return cat._cache[key]
    index = cat.hom_index(f.dom, f.cod)
    if f not in index:
        raise DomainError(f"{f} is not a morphism of {cat.tag}")
    coset = {cat.compose(f, a) for a in automorphisms(cat, f.dom)}
    members = tuple(sorted(coset, key=index.__getitem__))
    cls = SubobjectClass(members[0], members)
    for g in members:
        cat._cache[("class_of", g)] = cls
    return cls


def subobject_classes(cat: FiniteCategory, A: Obj, B: Obj) -> list[SubobjectClass]:
    """hom(A, B) modulo the right action of Aut(A), one entry per coset,
    ordered by representative."""

    def build():
        seen: set[Mor] = set()
        out = []
        for f in cat.hom(A, B):
            if f in seen:
                continue
            cls = class_of(cat, f)
            seen.update(cls.members)
            out.append(cls)
        return out

    return cat.cached(("classes", A, B), build)


def act_on_class(cat: FiniteCategory, w: Mor, cls: SubobjectClass) -> SubobjectClass:
    if w.dom != cls.target:
        raise CompositionError(f"{w} does not act on classes inside {cls.target}")
    return class_of(cat, cat.compose(w, cls.representative))


def is_cofinal(cat: FiniteCategory, sub: FiniteCategory, grade_bound: int, search_bound: int) -> list[Obj]:
    """Objects of ``cat`` up to ``grade_bound`` that admit no morphism into
    an object of ``sub`` of grade at most ``search_bound``."""
    targets = sub.objects(search_bound)
    return [A for A in cat.objects(grade_bound) if not any(cat.hom(A, T) for T in targets)]


# ---------------------------------------------------------------------------
# Derived categories


class OppositeCategory(FiniteCategory):
    """Same objects; a morphism A -> B here is a base morphism B -> A with
    the same payload."""

    def __init__(self, base: FiniteCategory) -> None:
        super().__init__()
        self.base = base
        self.tag = f"{base.tag}^op"
        self.min_grade = base.min_grade

    def objects_of_grade(self, n):
        return self.base.objects_of_grade(n)

    def contains(self, A):
        return self.base.contains(A)

    def _hom(self, A, B):
        for f in self.base.hom(B, A):
            yield Mor(A, B, f.payload)

    def to_base(self, f: Mor) -> Mor:
        return Mor(f.cod, f.dom, f.payload)

    def from_base(self, f: Mor) -> Mor:
        return Mor(f.cod, f.dom, f.payload)

    def identity(self, A):
        return self.from_base(self.base.identity(A))

    def _compose(self, g, f):
        return self.from_base(self.base.compose(self.to_base(f), self.to_base(g)))

    def is_member(self, candidate):
        return self.base.is_member(candidate)


def opposite(cat: FiniteCategory) -> OppositeCategory:
    return OppositeCategory(cat)


class ProductCategory(FiniteCategory):
    def __init__(self, first: FiniteCategory, second: FiniteCategory) -> None:
        super().__init__()
        self.first, self.second = first, second
        self.tag = f"({first.tag}x{second.tag})"
        self.min_grade = first.min_grade + second.min_grade

    def pair(self, A1: Obj, A2: Obj) -> Obj:
        return Obj(self.tag, (A1, A2), A1.grade + A2.grade, f"({A1}, {A2})")

    def pair_mor(self, f1: Mor, f2: Mor) -> Mor:
        return Mor(self.pair(f1.dom, f2.dom), self.pair(f1.cod, f2.cod), (f1, f2))

    def objects_of_grade(self, n):
        out = []
        for g1 in range(self.first.min_grade, n - self.second.min_grade + 1):
            for A1 in self.first.objects_of_grade(g1):
                for A2 in self.second.objects_of_grade(n - g1):
                    out.append(self.pair(A1, A2))
        return out

    def contains(self, A):
        if not (isinstance(A, Obj) and A.tag == self.tag):
            return False
        A1, A2 = A.payload
        return self.first.contains(A1) and self.second.contains(A2)

    def _hom(self, A, B):
        (A1, A2), (B1, B2) = A.payload, B.payload
        for f1, f2 in itertools.product(self.first.hom(A1, B1), self.second.hom(A2, B2)):
            yield self.pair_mor(f1, f2)

    def identity(self, A):
        A1, A2 = A.payload
        return self.pair_mor(self.first.identity(A1), self.second.identity(A2))

    def _compose(self, g, f):
        (g1, g2), (f1, f2) = g.payload, f.payload
        return self.pair_mor(self.first.compose(g1, f1), self.second.compose(g2, f2))


def product(cat1: FiniteCategory, cat2: FiniteCategory) -> ProductCategory:
    return ProductCategory(cat1, cat2)


class UnitCategory(FiniteCategory):
    """One object, one morphism."""

    tag = "1"

    def __init__(self) -> None:
        super().__init__()
        self.point = Obj(self.tag, (), 0, "*")

    def objects_of_grade(self, n):
        return [self.point] if n == 0 else []

    def _hom(self, A, B):
        yield self.identity(A)

    def identity(self, A):
        return Mor(A, A, ())

    def _compose(self, g, f):
        return f


class FullSubcategory(FiniteCategory):
    """Objects of ``base`` satisfying ``keep``; all base morphisms between them."""

    def __init__(self, base: FiniteCategory, keep: Callable[[Obj], bool], tag: str | None = None) -> None:
        super().__init__()
        self.base, self.keep = base, keep
        self.tag = tag or f"{base.tag}|sub"
        self.min_grade = base.min_grade

    def objects_of_grade(self, n):
        return [A for A in self.base.objects_of_grade(n) if self.keep(A)]

    def _hom(self, A, B):
        return self.base.hom(A, B)

    def identity(self, A):
        return self.base.identity(A)

    def _compose(self, g, f):
        return self.base.compose(g, f)

    def is_member(self, candidate):
        if isinstance(candidate, Obj):
            return self.contains(candidate)
        obj = getattr(self.base, "member_object", lambda c: None)(candidate)
        return self.base.is_member(candidate) and (obj is None or self.keep(obj))

    def substructures(self, B):
        return self.base.substructures(B)


class TableCategory(FiniteCategory):
    """A category given by explicit tables.

    ``objects`` maps object names to grades; ``morphisms`` maps morphism
    names to ``(dom, cod)``; ``compose`` maps ``(g, f)`` name pairs to a
    name. Identities must be listed as ``id_<object>``; their compositions
    are filled in automatically.
    """

    def __init__(self, tag: str, objects: dict[str, int], morphisms: dict[str, Sequence[str]],
                 compose: dict[tuple[str, str], str]) -> None:
        super().__init__()
        self.tag = tag
        self._grades = dict(objects)
        self.min_grade = min(objects.values(), default=0)
        self._obs = {name: Obj(tag, name, g, name) for name, g in objects.items()}
        self._mors = {}
        for name in objects:
            self._mors[f"id_{name}"] = (name, name)
        for name, (d, c) in morphisms.items():
            self._mors[name] = (d, c)
        self._table = dict(compose)
        for name, (d, c) in self._mors.items():
            self._table.setdefault((f"id_{c}", name), name)
            self._table.setdefault((name, f"id_{d}"), name)

    def ob(self, name: str) -> Obj:
        return self._obs[name]

    def mor(self, name: str) -> Mor:
        d, c = self._mors[name]
        return Mor(self._obs[d], self._obs[c], name)

    def objects_of_grade(self, n):
        return [o for o in self._obs.values() if o.grade == n]

    def _hom(self, A, B):
        for name, (d, c) in self._mors.items():
            if d == A.payload and c == B.payload:
                yield self.mor(name)

    def identity(self, A):
        return self.mor(f"id_{A.payload}")

    def _compose(self, g, f):
        try:
            return self.mor(self._table[(g.payload, f.payload)])
        except KeyError:
            raise CompositionError(f"no table entry for {g.payload} after {f.payload}") from None
