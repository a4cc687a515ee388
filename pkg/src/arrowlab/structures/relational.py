"""Encoding operations as relations: an n-ary operation f becomes the
(n+1)-ary relation R_f = {(x, f(x))}, so that embeddings are unchanged."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..core import DomainError


@dataclass(frozen=True)
class FunctionalStructure:
    """Carrier {0..size-1}; ``ops`` maps a name to (arity, table) where the
    table sends each argument tuple to a carrier element."""

    size: int
    ops: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, (arity, table) in self.ops.items():
            for args in itertools.product(range(self.size), repeat=arity):
                if args not in table or not 0 <= table[args] < self.size:
                    raise DomainError(f"operation {name} is not total at {args}")

    def __hash__(self):
        return hash((self.size, tuple(sorted(self.ops))))


@dataclass(frozen=True)
class RelationalStructure:
    size: int
    relations: dict = field(default_factory=dict)

    def __hash__(self):
        return hash((self.size, tuple(sorted(self.relations))))


def unary(size: int, values) -> FunctionalStructure:
    return FunctionalStructure(size, {"f": (1, {(x,): v for x, v in enumerate(values)})})


def relationalize(S: FunctionalStructure) -> RelationalStructure:
    rels = {}
    for name, (arity, table) in S.ops.items():
        rels[f"R_{name}"] = (arity + 1, frozenset(args + (v,) for args, v in table.items()))
    return RelationalStructure(S.size, rels)


def check_star_sentences(S: FunctionalStructure, R: RelationalStructure) -> bool:
    """For every operation f: R_f(x, y) holds iff f(x) = y, over the whole
    carrier. In particular every x has exactly one y."""
    for name, (arity, table) in S.ops.items():
        key = f"R_{name}"
        if key not in R.relations or R.relations[key][0] != arity + 1:
            return False
        rel = R.relations[key][1]
        for args in itertools.product(range(S.size), repeat=arity):
            for y in range(S.size):
                if ((args + (y,)) in rel) != (table[args] == y):
                    return False
    return True


def functional_embeddings(S: FunctionalStructure, T: FunctionalStructure) -> list[tuple[int, ...]]:
    """Injective maps h with h(f(x)) = f(h(x)) for every operation."""
    out = []
    for h in itertools.permutations(range(T.size), S.size):
        ok = all(h[table[args]] == T.ops[name][1][tuple(h[a] for a in args)]
                 for name, (arity, table) in S.ops.items() for args in table)
        if ok:
            out.append(h)
    return out


def relational_embeddings(R: RelationalStructure, Q: RelationalStructure) -> list[tuple[int, ...]]:
    """Injective maps h with r(x) iff r(h(x)) for every relation r."""
    out = []
    for h in itertools.permutations(range(Q.size), R.size):
        ok = True
        for name, (arity, rel) in R.relations.items():
            target = Q.relations[name][1]
            for tup in itertools.product(range(R.size), repeat=arity):
                if (tup in rel) != (tuple(h[a] for a in tup) in target):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(h)
    return out
