"""Finite powers A^n of a primal algebra, with and without the
antilexicographic orders.

Homomorphisms A^n -> A^m are coordinate selections x |-> (x_{i_1}, ..., x_{i_m})
with 1-based indices i_t in {1..n}; they are embeddings iff every index
occurs. Permutations are given in one-line form (pi(1), ..., pi(n)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..core import DomainError, FiniteCategory, Mor, Obj
from ..transport import Equivalence, Functor, NaturalTransformation, compose_functors, identity_functor
from .sets import partitions

Perm = tuple[int, ...]


def permutations_of(n: int) -> list[Perm]:
    return list(itertools.permutations(range(1, n + 1)))


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for s, v in enumerate(p, start=1):
        inv[v - 1] = s
    return tuple(inv)


def _check_perm(p: Sequence[int], n: int | None = None) -> None:
    if sorted(p) != list(range(1, len(p) + 1)) or (n is not None and len(p) != n):
        raise DomainError(f"{tuple(p)} is not a permutation of 1..{n or len(p)}")


# ---------------------------------------------------------------------------
# antilexicographic orders


def antilex_key(base_order: Sequence, pi: Sequence[int], x: Sequence) -> tuple:
    """Sort key for x under the order induced by ``pi``: permute, then read
    the ranks from the last coordinate backwards."""
    rank = {a: r for r, a in enumerate(base_order)}
    return tuple(rank[x[pi[t] - 1]] for t in range(len(pi) - 1, -1, -1))


def antilex_compare(base_order: Sequence, n: int, pi: Sequence[int], x: Sequence, y: Sequence) -> int:
    """-1, 0 or 1 as x is below, equal to or above y in A^n ordered by pi.

    The last coordinate (after permuting by pi) where x and y differ decides.
    """
    if len(x) != n or len(y) != n:
        raise DomainError(f"tuples must have length {n}")
    _check_perm(pi, n)
    rank = {a: r for r, a in enumerate(base_order)}
    for t in range(n - 1, -1, -1):
        a, b = rank[x[pi[t] - 1]], rank[y[pi[t] - 1]]
        if a != b:
            return -1 if a < b else 1
    return 0


def apply_selection(payload: Sequence[int], x: Sequence) -> tuple:
    return tuple(x[i - 1] for i in payload)


# ---------------------------------------------------------------------------
# ordered homomorphisms


def derived_sequence(payload: Sequence[int], pi: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """j_s = pi^-1(i_sigma(s))."""
    inv = perm_inverse(pi)
    return tuple(inv[payload[sigma[s] - 1] - 1] for s in range(len(sigma)))


def satisfies_order_conditions(payload: Sequence[int], pi: Sequence[int], sigma: Sequence[int]) -> bool:
    n = len(pi)
    j = derived_sequence(payload, pi, sigma)
    if j[-1] != n:
        return False
    for s in range(len(j) - 1):
        k = j[s]
        if k < n and not set(range(k + 1, n + 1)) <= set(j[s + 1:]):
            return False
    return True


@dataclass(frozen=True)
class OrderedHom:
    payload: tuple[int, ...]
    embedding: bool


def enumerate_ordered_homs(base: int | Sequence, n: int, pi: Sequence[int], m: int,
                           sigma: Sequence[int]) -> list[OrderedHom]:
    """Index tuples giving order-preserving homomorphisms
    (A^n, pi) -> (A^m, sigma), in lexicographic order of the tuples.

    The answer does not depend on the base algebra beyond |A| >= 2.
    """
    if n < 1 or m < 1:
        raise DomainError("exponents start at 1")
    if _base_size(base) < 2:
        raise DomainError("the base algebra needs at least two elements")
    _check_perm(pi, n)
    _check_perm(sigma, m)
    out = []
    for payload in itertools.product(range(1, n + 1), repeat=m):
        if satisfies_order_conditions(payload, pi, sigma):
            out.append(OrderedHom(payload, len(set(payload)) == n))
    return out


def _base_size(base) -> int:
    return base if isinstance(base, int) else len(base)


def _carrier(base) -> list:
    return list(range(base)) if isinstance(base, int) else list(base)


def is_ordered_hom_oracle(payload: Sequence[int], pi: Sequence[int], sigma: Sequence[int],
                          base: int | Sequence = 2) -> bool:
    """Brute force: x below-or-equal y under pi implies the images compare
    the same way under sigma, for every pair of tuples in A^n."""
    n, m = len(pi), len(sigma)
    if len(payload) != m or any(not 1 <= i <= n for i in payload):
        return False
    order = _carrier(base)
    tuples = list(itertools.product(order, repeat=n))
    key_n = {x: antilex_key(order, pi, x) for x in tuples}
    key_m = {x: antilex_key(order, sigma, apply_selection(payload, x)) for x in tuples}
    for x in tuples:
        for y in tuples:
            if key_n[x] <= key_n[y] and key_m[x] > key_m[y]:
                return False
    return True


# ---------------------------------------------------------------------------
# decompositions used by the hereditary and reasonable-expansion checks


def _check_embedding(payload: Sequence[int]) -> int:
    n = max(payload, default=0)
    if not payload or set(payload) != set(range(1, n + 1)):
        raise DomainError(f"{tuple(payload)} is not an embedding payload")
    return n


def hp_decompose(payload: Sequence[int], sigma: Sequence[int]) -> Perm:
    """The order pi on A^n pulled back along the embedding ``payload`` into
    (A^m, sigma): coordinates s are ranked by the last position t (in sigma
    order) with i_sigma(t) = s."""
    n = _check_embedding(payload)
    _check_perm(sigma, len(payload))
    last = {}
    for t, idx in enumerate(sigma, start=1):
        last[payload[idx - 1]] = t
    return tuple(sorted(range(1, n + 1), key=last.__getitem__))


def reasonable_extension(payload: Sequence[int], pi: Sequence[int]) -> Perm:
    """An order sigma on A^m making ``payload`` an ordered embedding of
    (A^n, pi): list the positions hit by pi(1), then by pi(2), and so on."""
    n = _check_embedding(payload)
    _check_perm(pi, n)
    sigma: list[int] = []
    for s in range(n):
        sigma.extend(t for t, i in enumerate(payload, start=1) if i == pi[s])
    return tuple(sigma)


def pulled_back_order_is(payload: Sequence[int], sigma: Sequence[int], pi: Sequence[int], base=2) -> bool:
    """x below y in the order pulled back from (A^m, sigma) iff x below y under pi, for all pairs."""
    order = _carrier(base)
    tuples = list(itertools.product(order, repeat=len(pi)))
    key_pi = {x: antilex_key(order, pi, x) for x in tuples}
    key_pb = {x: antilex_key(order, sigma, apply_selection(payload, x)) for x in tuples}
    return all((key_pi[x] < key_pi[y]) == (key_pb[x] < key_pb[y]) for x in tuples for y in tuples)


# ---------------------------------------------------------------------------
# categories


def _compose_selection(g: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    # (g·f)(x) = g(f(x)); coordinate u of the result is x_{f[g[u]]}
    return tuple(f[j - 1] for j in g)


def _embedding_payloads(n: int, m: int):
    for payload in itertools.product(range(1, n + 1), repeat=m):
        if len(set(payload)) == n:
            yield payload


@dataclass(frozen=True)
class SubPower:
    """The image of A^n inside (A^m, sigma) under an embedding, with the
    induced order: a candidate substructure for the hereditary check."""

    base: int
    payload: tuple[int, ...]
    sigma: tuple[int, ...]

    @property
    def n(self) -> int:
        return max(self.payload)


class PowerCategory(FiniteCategory):
    """Powers A^n, n >= 1, of an algebra with |A| = base, and embeddings."""

    min_grade = 1

    def __init__(self, base: int, tag: str) -> None:
        super().__init__()
        if base < 2:
            raise DomainError("the base algebra needs at least two elements")
        self.base, self.tag = base, tag

    def power(self, n: int) -> Obj:
        return Obj(self.tag, n, n, f"{self.tag}^{n}")

    def objects_of_grade(self, n):
        return [self.power(n)] if n >= 1 else []

    def _hom(self, A, B):
        for payload in _embedding_payloads(A.payload, B.payload):
            yield Mor(A, B, payload)

    def identity(self, A):
        return Mor(A, A, tuple(range(1, A.payload + 1)))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, _compose_selection(g.payload, f.payload))

    def substructures(self, B):
        for n in range(1, B.payload + 1):
            yield self.power(n)


class OrderedPowerCategory(FiniteCategory):
    """Objects (n, pi): A^n with the order induced by pi. Morphisms are the
    ordered embeddings, listed via the index-tuple conditions."""

    min_grade = 1

    def __init__(self, base: int, tag: str) -> None:
        super().__init__()
        if base < 2:
            raise DomainError("the base algebra needs at least two elements")
        self.base, self.tag = base, tag

    def ordered(self, n: int, pi: Sequence[int] | None = None) -> Obj:
        pi = tuple(range(1, n + 1)) if pi is None else tuple(pi)
        _check_perm(pi, n)
        return Obj(self.tag, (n, pi), n, f"{self.tag}^{n}[{''.join(map(str, pi))}]")

    def objects_of_grade(self, n):
        return [self.ordered(n, p) for p in permutations_of(n)] if n >= 1 else []

    def _hom(self, A, B):
        (n, pi), (m, sigma) = A.payload, B.payload
        for h in enumerate_ordered_homs(self.base, n, pi, m, sigma):
            if h.embedding:
                yield Mor(A, B, h.payload)

    def identity(self, A):
        return Mor(A, A, tuple(range(1, A.payload[0] + 1)))

    def _compose(self, g, f):
        return Mor(f.dom, g.cod, _compose_selection(g.payload, f.payload))

    def substructures(self, B):
        """One candidate per subalgebra isomorphic to some A^n: an embedding
        payload for every partition of the m coordinates."""
        m, sigma = B.payload
        for p in partitions(m):
            yield SubPower(self.base, tuple(b + 1 for b in p), sigma)

    def member_object(self, candidate) -> Obj | None:
        if isinstance(candidate, Obj):
            return candidate if self.contains(candidate) else None
        pi = hp_decompose(candidate.payload, candidate.sigma)
        if pulled_back_order_is(candidate.payload, candidate.sigma, pi, candidate.base):
            return self.ordered(candidate.n, pi)
        return None

    def is_member(self, candidate):
        return self.member_object(candidate) is not None


@lru_cache(maxsize=None)
def ov_fin_category(base: int) -> OrderedPowerCategory:
    return OrderedPowerCategory(base, "OFBA" if base == 2 else f"OV({base})")


@lru_cache(maxsize=None)
def vfin_category(base: int) -> PowerCategory:
    return PowerCategory(base, "FBA" if base == 2 else f"V({base})")


def ofba_category() -> OrderedPowerCategory:
    return ov_fin_category(2)


def fba_category() -> PowerCategory:
    return vfin_category(2)


# ---------------------------------------------------------------------------
# functors between the skeletons


def _relabel(src: FiniteCategory, tgt: FiniteCategory, make, name: str) -> Functor:
    def on_obj(A):
        return make(A)

    def on_mor(f):
        return Mor(make(f.dom), make(f.cod), f.payload)

    return Functor(src, tgt, on_obj, on_mor, name)


def _obj_maker(tgt):
    if isinstance(tgt, OrderedPowerCategory):
        return lambda A: tgt.ordered(*A.payload)
    return lambda A: tgt.power(A.payload)


def _payload_equivalence(C, D, name: str) -> Equivalence:
    E = _relabel(C, D, _obj_maker(D), f"{name}")
    H = _relabel(D, C, _obj_maker(C), f"{name}^-1")
    eta = NaturalTransformation(identity_functor(C), compose_functors(H, E), C.identity, "eta")
    eps = NaturalTransformation(identity_functor(D), compose_functors(E, H), D.identity, "eps")
    return Equivalence(E, H, eta, eps, name)


def skeleton_equivalence(base: int) -> Equivalence:
    """OFBA and the ordered powers of a base algebra with ``base`` elements:
    same labels (n, pi), same index-tuple payloads."""
    return _payload_equivalence(ofba_category(), ov_fin_category(base), f"skel[{base}]")


def power_equivalence(base: int) -> Equivalence:
    """FBA and the unordered powers of a primal algebra with ``base`` elements."""
    return _payload_equivalence(fba_category(), vfin_category(base), f"pow[{base}]")


def forgetful(base: int) -> Functor:
    """(n, pi) |-> n; payloads unchanged."""
    src, tgt = ov_fin_category(base), vfin_category(base)
    return Functor(src, tgt, lambda A: tgt.power(A.payload[0]),
                   lambda f: Mor(tgt.power(f.dom.payload[0]), tgt.power(f.cod.payload[0]), f.payload),
                   f"U[{src.tag}]")

