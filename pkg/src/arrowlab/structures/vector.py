"""Finite-dimensional vector spaces over GF(p) with injective or surjective
linear maps.

A map F^n -> F^m is an m x n matrix (column vectors), stored row-major as a
tuple of rows. Vectors of F^n are enumerated in lexicographic order.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy

from ..core import DomainError, FiniteCategory, Mor, Obj, OppositeCategory
from ..transport import Equivalence, Functor, NaturalTransformation, compose_functors, identity_functor
from .sets import rgs

Matrix = tuple[tuple[int, ...], ...]


def _require_prime(p: int) -> None:
    if not sympy.isprime(p):
        raise DomainError(f"{p} is not prime")


def vectors(n: int, p: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(p), repeat=n))


def mat_vec(T: Matrix, x, p: int) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) % p for row in T)


def mat_mul(S: Matrix, T: Matrix, p: int) -> Matrix:
    cols = list(zip(*T)) if T else []
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in S)


def transpose(T: Matrix, n: int | None = None) -> Matrix:
    if not T:
        return tuple(() for _ in range(n or 0))
    return tuple(zip(*T))


def adjoint(T: Matrix) -> Matrix:
    """The adjoint for the standard inner product: the transpose."""
    return transpose(T)


def inner(x, y, p: int) -> int:
    return sum(a * b for a, b in zip(x, y)) % p


def rank(T: Matrix, p: int) -> int:
    rows = [list(r) for r in T]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _matrices(m: int, n: int, p: int):
    for entries in itertools.product(range(p), repeat=m * n):
        yield tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(m))


class LinearCategory(FiniteCategory):
    """GF(p)^n, n >= 1, with injective (``kind="inj"``) or surjective
    (``kind="surj"``) linear maps."""

    min_grade = 1

    def __init__(self, p: int, kind: str) -> None:
        super().__init__()
        _require_prime(p)
        if kind not in ("inj", "surj"):
            raise DomainError(f"unknown kind {kind!r}")
        self.p, self.kind = p, kind
        self.tag = f"Vec{kind.capitalize()}({p})"

    def space(self, n: int) -> Obj:
        return Obj(self.tag, n, n, f"F{self.p}^{n}")

    def objects_of_grade(self, n):
        return [self.space(n)] if n >= 1 else []

    def _hom(self, A, B):
        n, m = A.payload, B.payload
        need = n if self.kind == "inj" else m
        if (self.kind == "inj" and n > m) or (self.kind == "surj" and m > n):
            return
        for T in _matrices(m, n, self.p):
            if rank(T, self.p) == need:
                yield Mor(A, B, T)

    def identity(self, A):
        n = A.payload
        return Mor(A, A, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, mat_mul(g.payload, f.payload, self.p))


@lru_cache(maxsize=None)
def vector_space_categories(p: int) -> tuple[LinearCategory, LinearCategory]:
    return LinearCategory(p, "inj"), LinearCategory(p, "surj")


@lru_cache(maxsize=None)
def surjective_op(p: int) -> OppositeCategory:
    return OppositeCategory(vector_space_categories(p)[1])


def duality(p: int) -> Equivalence:
    """Injective maps and the opposite of surjective maps: a space goes to
    itself, T to its adjoint."""
    inj, _ = vector_space_categories(p)
    op = surjective_op(p)
    surj = op.base

    def E_mor(T):
        # T: F^n -> F^m injective; T*: F^m -> F^n surjective, an op-morphism F^n -> F^m
        return Mor(surj.space(T.dom.payload), surj.space(T.cod.payload), adjoint(T.payload))

    def H_mor(g):
        return Mor(inj.space(g.dom.payload), inj.space(g.cod.payload), adjoint(g.payload))

    E = Functor(inj, op, lambda A: surj.space(A.payload), E_mor, "adjoint")
    H = Functor(op, inj, lambda A: inj.space(A.payload), H_mor, "adjoint^-1")
    eta = NaturalTransformation(identity_functor(inj), compose_functors(H, E), inj.identity, "eta")
    eps = NaturalTransformation(identity_functor(op), compose_functors(E, H), op.identity, "eps")
    return Equivalence(E, H, eta, eps, f"duality[{p}]")


def subspaces(n: int, dim: int, p: int) -> list[frozenset[tuple[int, ...]]]:
    """All subspaces of GF(p)^n of the given dimension, as vector sets."""
    _require_prime(p)
    if not 0 <= dim <= n:
        raise DomainError("dimension out of range")
    found = set()
    for basis in itertools.combinations(vectors(n, p)[1:], dim):
        if rank(basis, p) < dim:
            continue
        span = frozenset(
            tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(n))
            for coeffs in itertools.product(range(p), repeat=dim))
        found.add(span)
    if dim == 0:
        found.add(frozenset({(0,) * n}))
    return sorted(found, key=sorted)


def quotient_partitions_lin(n: int, d: int, p: int) -> list[tuple[int, ...]]:
    """Coset partitions V/W of V = GF(p)^n for every subspace W of
    codimension d, as restricted growth strings over the vectors of V."""
    if not 0 <= d <= n:
        raise DomainError("codimension out of range")
    vs = vectors(n, p)
    out = []
    for W in subspaces(n, n - d, p):
        reps: dict = {}
        label = []
        for v in vs:
            key = min(tuple((a - b) % p for a, b in zip(v, w)) for w in W)
            label.append(reps.setdefault(key, len(reps)))
        out.append(rgs(label))
    return sorted(out)
