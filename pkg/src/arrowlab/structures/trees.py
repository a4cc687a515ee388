"""Finite rooted trees as unary algebras (each node maps to its parent, the
root to itself), embeddings, homogeneous trees, and the homogeneous-closure
adjunction.

A tree object's payload is a parent array in canonical breadth-first order:
node 0 is the root (parent -1), parents are non-decreasing, and siblings
are ordered by the canonical code of their subtrees.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..core import DomainError, FiniteCategory, FullSubcategory, Mor, Obj
from ..transport import Adjunction, Functor, NaturalTransformation, compose_functors, identity_functor


def _children(parents: Sequence[int]) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)
    return kids


def validate_parents(parents: Sequence[int]) -> None:
    """Exactly one root, every other parent a valid node, no cycles."""
    n = len(parents)
    roots = [v for v, p in enumerate(parents) if p == -1]
    if n == 0 or len(roots) != 1:
        raise DomainError("a tree needs exactly one root")
    for v, p in enumerate(parents):
        if p != -1 and not 0 <= p < n:
            raise DomainError(f"node {v} has invalid parent {p}")
    for v in range(n):
        seen, x = set(), v
        while parents[x] != -1:
            if x in seen:
                raise DomainError("parent table has a cycle")
            seen.add(x)
            x = parents[x]


def canonical(parents: Sequence[int]) -> tuple[int, ...]:
    """Canonical parent array of the tree given by any parent table."""
    validate_parents(parents)
    kids = _children(parents)
    root = list(parents).index(-1)
    codes: dict[int, str] = {}

    def code(v):
        if v not in codes:
            codes[v] = "(" + "".join(sorted(code(c) for c in kids[v])) + ")"
        return codes[v]

    code(root)
    order, out, queue = {root: 0}, [-1], [root]
    while queue:
        nxt = []
        for v in queue:
            for c in sorted(kids[v], key=code):
                order[c] = len(out)
                out.append(order[v])
                nxt.append(c)
        queue = nxt
    return tuple(out)


def levels(parents: Sequence[int]) -> tuple[int, ...]:
    out = []
    for v in range(len(parents)):
        d, x = 0, v
        while parents[x] != -1:
            x, d = parents[x], d + 1
        out.append(d)
    return tuple(out)


def branching(parents: Sequence[int]) -> tuple[int, ...]:
    """b(l) = largest number of children of a node at level l, for every
    level that has a node with children."""
    lev, kids = levels(parents), _children(parents)
    depth = max(lev)
    return tuple(max(len(kids[v]) for v in range(len(parents)) if lev[v] == l) for l in range(depth))


def is_homogeneous(parents: Sequence[int]) -> bool:
    """Every node at level l has the same number of children, and all leaves
    sit on the last level."""
    lev, kids = levels(parents), _children(parents)
    depth = max(lev)
    for l in range(depth + 1):
        counts = {len(kids[v]) for v in range(len(parents)) if lev[v] == l}
        if len(counts) != 1 or (l < depth and 0 in counts):
            return False
    return True


def homogeneous_tree(b: Sequence[int]) -> tuple[int, ...]:
    """The homogeneous tree with branching numbers b(0), b(1), ..."""
    out, frontier = [-1], [0]
    for k in b:
        if k < 1:
            raise DomainError("branching numbers are positive")
        nxt = []
        for v in frontier:
            for _ in range(k):
                nxt.append(len(out))
                out.append(v)
        frontier = nxt
    return tuple(out)


def homogeneous_closure_parents(parents: Sequence[int]) -> tuple[int, ...]:
    """The smallest homogeneous tree containing the given tree."""
    return homogeneous_tree(branching(canonical(parents)))


def embeddings(src: Sequence[int], dst: Sequence[int]) -> list[tuple[int, ...]]:
    """Injective parent-preserving maps sending root to root, as image
    tables, in lexicographic order."""
    if len(src) > len(dst):
        return []
    ks, kd = _children(src), _children(dst)
    order = [0]
    for v in order:
        order.extend(ks[v])
    out: list[tuple[int, ...]] = []
    image = [-1] * len(src)

    def place(pos, used):
        if pos == len(order):
            out.append(tuple(image))
            return
        v = order[pos]
        if v == 0:
            candidates = [0]
        else:
            candidates = kd[image[src[v]]]
        for c in candidates:
            if c in used:
                continue
            image[v] = c
            used.add(c)
            place(pos + 1, used)
            used.discard(c)
        image[v] = -1

    place(0, set())
    return sorted(out)


def _trees_with(n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [(-1,)]
    found = set()
    for t in _trees_with(n - 1):
        for v in range(len(t)):
            found.add(canonical(t + (v,)))
    return sorted(found)


class TreeCategory(FiniteCategory):
    """Finite rooted trees (node count >= 1) with embeddings."""

    tag = "Tree"
    min_grade = 1

    def tree(self, parents: Sequence[int], label: str = "") -> Obj:
        c = canonical(parents)
        return Obj(self.tag, c, len(c), label or f"T{list(c)}")

    def objects_of_grade(self, n):
        return [self.tree(t) for t in self.cached(("trees", n), lambda: _trees_with(n))] if n >= 1 else []

    def contains(self, A):
        if not isinstance(A, Obj) or A.tag != self.tag:
            return False
        try:
            return canonical(A.payload) == A.payload
        except DomainError:
            return False

    def _hom(self, A, B):
        for table in embeddings(A.payload, B.payload):
            yield Mor(A, B, table)

    def identity(self, A):
        return Mor(A, A, tuple(range(len(A.payload))))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, tuple(g.payload[x] for x in f.payload))


@lru_cache(maxsize=None)
def tree_category() -> TreeCategory:
    return TreeCategory()


@lru_cache(maxsize=None)
def homogeneous_tree_category() -> FullSubcategory:
    return FullSubcategory(tree_category(), lambda A: is_homogeneous(A.payload), "HTree")


def homogeneous_closure(T: Obj) -> Obj:
    return tree_category().tree(homogeneous_closure_parents(T.payload))


def closure_adjunction(max_grade: int | None = None) -> Adjunction:
    """F (homogeneous closure): Tree -> HTree, left adjoint candidate to the
    inclusion G. eta_A is the first embedding A -> F(A); F(f) is the first
    embedding h with h·eta_A = eta_A'·f; the counit is the identity.

    Extensions h need not be unique, so this is an adjunction only where
    ``verify_adjunction`` says so; ``max_grade`` guards F accordingly.
    """
    T, H = tree_category(), homogeneous_tree_category()

    def eta(A):
        return T.hom(A, homogeneous_closure(A))[0]

    def F_mor(f):
        FA, FB = homogeneous_closure(f.dom), homogeneous_closure(f.cod)
        target = T.compose(eta(f.cod), f)
        for h in T.hom(FA, FB):
            if T.compose(h, eta(f.dom)) == target:
                return h
        raise DomainError(f"no extension of {f} to the closures")

    F = Functor(T, H, homogeneous_closure, F_mor, "Closure", max_grade)
    G = Functor(H, T, lambda B: B, lambda g: g, "Inclusion")
    unit = NaturalTransformation(identity_functor(T), compose_functors(G, F), eta, "eta")
    counit = NaturalTransformation(compose_functors(F, G), identity_functor(H), H.identity, "eps")
    return Adjunction(F, G, unit, counit, "closure")


# Figure-1 fixture: root a0 with children x, y; x has two children, y one.
FIGURE1_A = (-1, 0, 0, 1, 1, 2)


def figure1_tree() -> Obj:
    return tree_category().tree(FIGURE1_A, "A")
