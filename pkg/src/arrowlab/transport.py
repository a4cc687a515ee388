"""Functors, natural transformations, adjunctions and equivalences as
executable data, with bounded law checks and witness transport."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable

from .arrow import HOM, SUBOBJECT, ArrowQuery, RamseyOracle, color_map
from .core import (
    DomainError,
    FiniteCategory,
    LawViolation,
    Mor,
    Obj,
    PreconditionError,
    automorphisms,
    class_of,
    inverse,
    subobject_classes,
)


class Functor:
    """Object and morphism maps between two finite categories.

    ``max_grade`` marks the range the maps were verified on; applying the
    functor to anything of larger grade is refused.
    """

    def __init__(self, source: FiniteCategory, target: FiniteCategory, on_obj: Callable[[Obj], Obj],
                 on_mor: Callable[[Mor], Mor], name: str = "F", max_grade: int | None = None) -> None:
        self.source, self.target = source, target
        self._on_obj, self._on_mor = on_obj, on_mor
        self.name = name
        self.max_grade = max_grade

    def _guard(self, A: Obj) -> None:
        if self.max_grade is not None and A.grade > self.max_grade:
            raise DomainError(f"{self.name} is only tabulated up to grade {self.max_grade}, got {A}")

    def obj(self, A: Obj) -> Obj:
        self._guard(A)
        return self._on_obj(A)

    def mor(self, f: Mor) -> Mor:
        self._guard(f.dom)
        self._guard(f.cod)
        return self._on_mor(f)

    def __call__(self, x):
        return self.obj(x) if isinstance(x, Obj) else self.mor(x)

    def __repr__(self) -> str:
        return f"<Functor {self.name}: {self.source.tag} -> {self.target.tag}>"

    @classmethod
    def from_tables(cls, source, target, objects: dict[Obj, Obj], morphisms: dict[Mor, Mor],
                    name: str = "table") -> "Functor":
        def lookup(table, x):
            try:
                return table[x]
            except KeyError:
                raise DomainError(f"{name} has no entry for {x}") from None

        grade = max((A.grade for A in objects), default=0)
        return cls(source, target, lambda A: lookup(objects, A), lambda f: lookup(morphisms, f), name, grade)


def identity_functor(cat: FiniteCategory) -> Functor:
    return Functor(cat, cat, lambda A: A, lambda f: f, f"ID_{cat.tag}")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    if F.target is not G.source:
        raise DomainError(f"cannot compose {G.name} after {F.name}")
    return Functor(F.source, G.target, lambda A: G.obj(F.obj(A)), lambda f: G.mor(F.mor(f)), f"{G.name}{F.name}")


class NaturalTransformation:
    """Components ``alpha[A]: F(A) -> G(A)``."""

    def __init__(self, F: Functor, G: Functor, component: Callable[[Obj], Mor], name: str = "alpha") -> None:
        self.F, self.G = F, G
        self.component = component
        self.name = name

    def __getitem__(self, A: Obj) -> Mor:
        return self.component(A)


def identity_transformation(F: Functor, G: Functor | None = None, name: str = "id") -> NaturalTransformation:
    """Identity components; G defaults to F (use it when F and G agree on objects)."""
    return NaturalTransformation(F, G or F, lambda A: F.target.identity(F.obj(A)), name)


@dataclass
class Adjunction:
    """F: C -> D left adjoint to G: D -> C with unit eta: ID -> GF and
    counit eps: FG -> ID."""

    F: Functor
    G: Functor
    unit: NaturalTransformation
    counit: NaturalTransformation
    name: str = "adjunction"

    @property
    def C(self) -> FiniteCategory:
        return self.F.source

    @property
    def D(self) -> FiniteCategory:
        return self.F.target

    def phi(self, f: Mor, X: Obj) -> Mor:
        """hom(F(X), Y) -> hom(X, G(Y)), f |-> G(f)·eta_X."""
        return self.C.compose(self.G(f), self.unit[X])

    def phi_inv(self, g: Mor, Y: Obj) -> Mor:
        """hom(X, G(Y)) -> hom(F(X), Y), g |-> eps_Y·F(g)."""
        return self.D.compose(self.counit[Y], self.F(g))


@dataclass
class Equivalence:
    """E: C -> D and H: D -> C with natural isomorphisms eta: ID -> HE and
    eps: ID -> EH."""

    E: Functor
    H: Functor
    eta: NaturalTransformation
    eps: NaturalTransformation
    name: str = "equivalence"

    @property
    def C(self) -> FiniteCategory:
        return self.E.source

    @property
    def D(self) -> FiniteCategory:
        return self.E.target

    def eps_inv(self, Y: Obj) -> Mor:
        e = self.eps[Y]
        inv = inverse(self.D, e)
        if inv is None:
            raise PreconditionError(f"eps at {Y} is not invertible")
        return inv

    def as_adjunction(self) -> Adjunction:
        """E left adjoint to H, with counit eps^-1: EH -> ID."""
        counit = NaturalTransformation(compose_functors(self.E, self.H), identity_functor(self.D),
                                       self.eps_inv, f"{self.eps.name}^-1")
        return Adjunction(self.E, self.H, self.eta, counit, f"{self.name} as adjunction")

    def inverse(self) -> "Equivalence":
        return Equivalence(self.H, self.E, self.eps, self.eta, f"{self.name}^-1")


def identity_equivalence(cat: FiniteCategory) -> Equivalence:
    I = identity_functor(cat)
    unit = identity_transformation(I, name="id")
    return Equivalence(I, I, unit, unit, f"id[{cat.tag}]")


def identity_adjunction(cat: FiniteCategory) -> Adjunction:
    return identity_equivalence(cat).as_adjunction()


# ---------------------------------------------------------------------------
# law checks


def verify_functor(F: Functor, grade_bound: int) -> list[LawViolation]:
    report: list[LawViolation] = []
    src, tgt = F.source, F.target
    obs = src.objects(grade_bound)
    for A in obs:
        FA = F(A)
        if not tgt.contains(FA):
            report.append(LawViolation("object-map", f"{F.name}({A}) = {FA} is not in {tgt.tag}"))
            continue
        if F(src.identity(A)) != tgt.identity(FA):
            report.append(LawViolation("preserves-identity", str(A)))
    for A, B in itertools.product(obs, repeat=2):
        for f in src.hom(A, B):
            Ff = F(f)
            if Ff.dom != F(A) or Ff.cod != F(B) or Ff not in tgt.hom_index(F(A), F(B)):
                report.append(LawViolation("morphism-map", f"{F.name}({f}) = {Ff}"))
    if report:
        # composites of mistyped images are meaningless
        return report
    for A, B, C in itertools.product(obs, repeat=3):
        fs, gs = src.hom(A, B), src.hom(B, C)
        for f in fs:
            Ff = F(f)
            for g in gs:
                if F(src.compose(g, f)) != tgt.compose(F(g), Ff):
                    report.append(LawViolation("preserves-composition", f"{g} after {f}"))
    return report


def verify_natural(alpha: NaturalTransformation, grade_bound: int) -> list[LawViolation]:
    F, G = alpha.F, alpha.G
    src, tgt = F.source, F.target
    report: list[LawViolation] = []
    obs = src.objects(grade_bound)
    for A in obs:
        a = alpha[A]
        if a.dom != F(A) or a.cod != G(A) or a not in tgt.hom_index(F(A), G(A)):
            report.append(LawViolation("component-typing", f"{alpha.name}[{A}] = {a}"))
    for A, B in itertools.product(obs, repeat=2):
        for f in src.hom(A, B):
            if tgt.compose(G(f), alpha[A]) != tgt.compose(alpha[B], F(f)):
                report.append(LawViolation("naturality", f"{alpha.name} at {f}"))
    return report


def verify_adjunction(adj: Adjunction, grade_bound: int, d_bound: int | None = None) -> list[LawViolation]:
    """Functor laws, naturality of unit and counit, both triangle identities,
    and that phi / phi_inv are mutually inverse bijections natural in both
    arguments, all up to the given grades."""
    d_bound = grade_bound if d_bound is None else d_bound
    C, D, F, G = adj.C, adj.D, adj.F, adj.G
    report = verify_functor(F, grade_bound) + verify_functor(G, d_bound)
    report += verify_natural(adj.unit, grade_bound) + verify_natural(adj.counit, d_bound)
    if report:
        return report
    c_obs, d_obs = C.objects(grade_bound), D.objects(d_bound)
    for X in c_obs:
        if D.compose(adj.counit[F(X)], F(adj.unit[X])) != D.identity(F(X)):
            report.append(LawViolation("triangle-F", str(X)))
    for Y in d_obs:
        if C.compose(G(adj.counit[Y]), adj.unit[G(Y)]) != C.identity(G(Y)):
            report.append(LawViolation("triangle-G", str(Y)))
    for X in c_obs:
        for Y in d_obs:
            left, right = D.hom(F(X), Y), C.hom(X, G(Y))
            if len(left) != len(right):
                report.append(LawViolation("phi-bijective", f"|hom(F{X}, {Y})| = {len(left)}, |hom({X}, G{Y})| = {len(right)}"))
            for f in left:
                if adj.phi_inv(adj.phi(f, X), Y) != f:
                    report.append(LawViolation("phi-inverse", f"phi_inv(phi({f})) != f"))
            for g in right:
                if adj.phi(adj.phi_inv(g, Y), X) != g:
                    report.append(LawViolation("phi-inverse", f"phi(phi_inv({g})) != g"))
    # naturality of phi: in Y along h: Y -> Y', in X along k: X' -> X
    for X in c_obs:
        for Y, Y2 in itertools.product(d_obs, repeat=2):
            for h in D.hom(Y, Y2):
                for f in D.hom(F(X), Y):
                    if adj.phi(D.compose(h, f), X) != C.compose(G(h), adj.phi(f, X)):
                        report.append(LawViolation("phi-natural-D", f"{h}, {f}"))
    for Y in d_obs:
        for X, X2 in itertools.product(c_obs, repeat=2):
            for k in C.hom(X2, X):
                for f in D.hom(F(X), Y):
                    if adj.phi(D.compose(f, F(k)), X2) != C.compose(adj.phi(f, X), k):
                        report.append(LawViolation("phi-natural-C", f"{f}, {k}"))
    return report


def _full_and_faithful(F: Functor, grade_bound: int, label: str) -> list[LawViolation]:
    report = []
    obs = F.source.objects(grade_bound)
    for A, B in itertools.product(obs, repeat=2):
        images = {F(f) for f in F.source.hom(A, B)}
        n_src, n_tgt = len(F.source.hom(A, B)), len(F.target.hom(F(A), F(B)))
        if len(images) != n_src:
            report.append(LawViolation(f"{label}-faithful", f"{A} -> {B}"))
        if len(images) != n_tgt:
            report.append(LawViolation(f"{label}-full", f"{A} -> {B}: {len(images)} of {n_tgt}"))
    return report


def verify_equivalence(eq: Equivalence, grade_bound: int, d_bound: int | None = None) -> list[LawViolation]:
    """Functor laws, naturality, invertible components, E and H full and
    faithful, and H(eps^-1)·HE(m)·eta_A = m for every m: A -> H(Y)."""
    d_bound = grade_bound if d_bound is None else d_bound
    C, D, E, H = eq.C, eq.D, eq.E, eq.H
    report = verify_functor(E, grade_bound) + verify_functor(H, d_bound)
    report += verify_natural(eq.eta, grade_bound) + verify_natural(eq.eps, d_bound)
    if report:
        return report
    for X in C.objects(grade_bound):
        if inverse(C, eq.eta[X]) is None:
            report.append(LawViolation("eta-invertible", str(X)))
    for Y in D.objects(d_bound):
        if inverse(D, eq.eps[Y]) is None:
            report.append(LawViolation("eps-invertible", str(Y)))
    report += _full_and_faithful(E, grade_bound, "E") + _full_and_faithful(H, d_bound, "H")
    if report:
        return report
    for Y in D.objects(d_bound):
        back = H(eq.eps_inv(Y))
        for A in C.objects(grade_bound):
            for m in C.hom(A, H(Y)):
                if C.compose(back, C.compose(H(E(m)), eq.eta[A])) != m:
                    report.append(LawViolation("dual-adjunction-identity", f"{m}"))
    return report


# ---------------------------------------------------------------------------
# transport of Ramsey witnesses


def adjunction_transport_hom(adj: Adjunction, d_oracle: RamseyOracle, B: Obj, A: Obj) -> RamseyOracle:
    """From C_D -hom-> (F(B))^F(A)_k in D to G(C_D) -hom-> (B)^A_k in C.

    A coloring chi of hom(A, G(C_D)) is pulled back to hom(F(A), C_D) by
    chi_D(f) = chi(phi(f)); the answer (i, w) of the oracle becomes
    (i, G(w)·eta_B).
    """
    qd = d_oracle.query
    F, G = adj.F, adj.G
    if qd.variant != HOM or qd.B != F(B) or qd.A != F(A):
        raise PreconditionError("oracle does not prove C_D -hom-> (F(B))^F(A)_k")
    CD = qd.C
    q = ArrowQuery(adj.C, G(CD), B, A, qd.k, HOM)
    eta_B = adj.unit[B]
    d_items = qd.items()

    def evaluate(chi):
        chi = color_map(chi)
        chi_d = {f: chi[adj.phi(f, A)] for f in d_items}
        i, w = d_oracle(chi_d)
        return i, adj.C.compose(G(w), eta_B)

    return RamseyOracle(q, evaluate, f"{adj.name}*({d_oracle.name})")


def check_aut_condition(F: Functor, A: Obj) -> bool:
    """Aut(F(A)) = F(Aut(A)) as sets."""
    image = {F(a) for a in automorphisms(F.source, A)}
    return image == set(automorphisms(F.target, F(A)))


def class_phi_compat(adj: Adjunction, A: Obj, Y: Obj) -> bool:
    """phi(f·Aut(F(A))) = phi(f)·Aut(A) for every f: F(A) -> Y.

    Refused (PreconditionError, with the two class counts) when the
    automorphism condition fails, which is exactly when this can break.
    """
    F = adj.F
    if not check_aut_condition(F, A):
        n_d = len(subobject_classes(adj.D, F(A), Y))
        n_c = len(subobject_classes(adj.C, A, adj.G(Y)))
        raise PreconditionError(
            f"Aut(F({A})) != F(Aut({A})); classes: {n_d} in hom(F(A), {Y}) vs {n_c} in hom(A, G({Y}))")
    for f in adj.D.hom(F(A), Y):
        lhs = {adj.phi(g, A) for g in class_of(adj.D, f).members}
        rhs = set(class_of(adj.C, adj.phi(f, A)).members)
        if lhs != rhs:
            return False
    return True


def adjunction_transport_obj(adj: Adjunction, d_oracle: RamseyOracle, B: Obj, A: Obj) -> RamseyOracle:
    """Subobject-variant transport; needs the automorphism condition at A."""
    qd = d_oracle.query
    F, G = adj.F, adj.G
    if qd.variant != SUBOBJECT or qd.B != F(B) or qd.A != F(A):
        raise PreconditionError("oracle does not prove C_D -> (F(B))^F(A)_k")
    if not class_phi_compat(adj, A, qd.C):
        raise PreconditionError("phi does not respect classes")
    q = ArrowQuery(adj.C, G(qd.C), B, A, qd.k, SUBOBJECT)
    eta_B = adj.unit[B]

    def evaluate(chi):
        chi = color_map(chi)
        chi_d = {cls: chi[class_of(adj.C, adj.phi(cls.representative, A))] for cls in qd.items()}
        i, w = d_oracle(chi_d)
        return i, adj.C.compose(G(w), eta_B)

    return RamseyOracle(q, evaluate, f"{adj.name}*({d_oracle.name})")


def equivalence_transport_obj(eq: Equivalence, d_oracle: RamseyOracle, B: Obj, A: Obj,
                              check_identity: bool = True) -> RamseyOracle:
    """From C -> (E(B))^E(A)_k in D to H(C) -> (B)^A_k in C.

    A class [g] of binom(C, E(A)) gets the color of [m], where m: A -> H(C)
    is the unique morphism with E(m) = eps_C·g (E is full and faithful).
    The oracle's answer (i, w) becomes (i, H(w)·eta_B).
    """
    qd = d_oracle.query
    C_cat, D_cat, E, H = eq.C, eq.D, eq.E, eq.H
    if qd.variant != SUBOBJECT or qd.B != E(B) or qd.A != E(A):
        raise PreconditionError("oracle does not prove C -> (E(B))^E(A)_k")
    Cd = qd.C
    HC = H(Cd)
    q = ArrowQuery(C_cat, HC, B, A, qd.k, SUBOBJECT)
    eps_C = eq.eps[Cd]
    lift: dict[Mor, Mor] = {}
    for m in C_cat.hom(A, HC):
        lift.setdefault(E(m), m)
    if check_identity:
        back = H(eq.eps_inv(Cd))
        for m in C_cat.hom(A, HC):
            if C_cat.compose(back, C_cat.compose(H(E(m)), eq.eta[A])) != m:
                raise PreconditionError(f"H(eps^-1)·HE(m)·eta != m for {m}")
    source_class: dict = {}
    for cls in qd.items():
        g = D_cat.compose(eps_C, cls.representative)
        if g not in lift:
            raise PreconditionError(f"E is not full: nothing maps to {g}")
        source_class[cls] = class_of(C_cat, lift[g])
    eta_B = eq.eta[B]

    def evaluate(chi):
        chi = color_map(chi)
        chi_d = {cls: chi[src] for cls, src in source_class.items()}
        i, w = d_oracle(chi_d)
        return i, C_cat.compose(H(w), eta_B)

    return RamseyOracle(q, evaluate, f"{eq.name}*({d_oracle.name})")


def equivalence_transport_hom(eq: Equivalence, d_oracle: RamseyOracle, B: Obj, A: Obj) -> RamseyOracle:
    """Hom-variant transport along an equivalence, read as E left adjoint to H."""
    return adjunction_transport_hom(eq.as_adjunction(), d_oracle, B, A)


# ---------------------------------------------------------------------------
# ordering-property transport


def commuting_square_violations(top: Functor, right: Functor, left: Functor, bottom: Functor,
                                grade_bound: int) -> list[LawViolation]:
    """right∘top = bottom∘left on objects and morphisms up to the bound."""
    report = []
    obs = top.source.objects(grade_bound)
    for X in obs:
        if right(top(X)) != bottom(left(X)):
            report.append(LawViolation("square-objects", str(X)))
    for X, Y in itertools.product(obs, repeat=2):
        for f in top.source.hom(X, Y):
            if right(top(f)) != bottom(left(f)):
                report.append(LawViolation("square-morphisms", str(f)))
    return report


def ordering_transport(eq_star: Equivalence, eq: Equivalence, U: Functor, V: Functor, A: Obj,
                       witness_B: Obj, bound: int) -> Obj:
    """Carry an ordering-property witness for H(A) in C over to A in D.

    The squares V∘E* = E∘U and U∘H* = H∘V must commute up to ``bound``.
    The result E(witness_B) is checked to be a witness for A.
    """
    from .fraisse import check_ordering_witness

    bad = commuting_square_violations(eq_star.E, V, U, eq.E, bound)
    bad += commuting_square_violations(eq_star.H, U, V, eq.H, bound)
    if bad:
        raise PreconditionError(f"squares do not commute: {bad[0]}")
    before = check_ordering_witness(U.source, U, eq.H(A), witness_B)
    if not before.passed:
        raise PreconditionError(f"{witness_B} is not an ordering witness for {eq.H(A)}: {before.counterexample}")
    out = eq.E(witness_B)
    after = check_ordering_witness(V.source, V, A, out)
    if not after.passed:
        raise AssertionError(f"transported {out} is not an ordering witness for {A}: {after.counterexample}")
    return out


# ---------------------------------------------------------------------------
# table functors from JSON


def load_functor_json(spec, source: FiniteCategory, target: FiniteCategory) -> Functor:
    """Build a table functor from ``{"name", "max_grade", "target_max_grade",
    "objects": [[a, b], ...],
    "morphisms": [[{"dom", "cod", "payload"}, {...}], ...]}`` where every
    payload is given in its JSON form. ``spec`` may be a dict or a path."""
    from .serialize import jsonable, tupled

    if not isinstance(spec, dict):
        with open(spec) as fh:
            spec = json.load(fh)
    bound = spec["max_grade"]

    def index(cat):
        obs = cat.objects(bound)
        return {json.dumps(jsonable(A.payload)): A for A in obs}

    src_obs = index(source)
    tgt_all = {json.dumps(jsonable(A.payload)): A for A in target.objects(spec.get("target_max_grade", bound))}

    def find(table, payload, what):
        key = json.dumps(payload)
        if key not in table:
            raise DomainError(f"{what} {payload} not found")
        return table[key]

    objects = {find(src_obs, a, "source object"): find(tgt_all, b, "target object") for a, b in spec["objects"]}

    def mor(cat, obs, m):
        dom, cod = find(obs, m["dom"], "object"), find(obs, m["cod"], "object")
        f = Mor(dom, cod, tupled(m["payload"]))
        if f not in cat.hom_index(dom, cod):
            raise DomainError(f"{m} is not a morphism of {cat.tag}")
        return f

    morphisms = {mor(source, src_obs, a): mor(target, tgt_all, b) for a, b in spec["morphisms"]}
    F = Functor.from_tables(source, target, objects, morphisms, spec.get("name", "table"))
    F.max_grade = bound
    return F

