"""Arrow relations C -> (B)^A_k: queries, certificates, and the two search
modes (numpy-chunked exhaustive enumeration and propagating backtracking).

A query compiles to a hypergraph: vertices are the colored items (copies of
A in C, or morphisms A -> C), and each w: B -> C contributes the edge
w·(items of B). The arrow fails iff some k-coloring leaves no edge
monochromatic.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .core import (
    DomainError,
    FiniteCategory,
    Mor,
    Obj,
    PreconditionError,
    SubobjectClass,
    class_of,
    subobject_classes,
)

HOM = "hom"
SUBOBJECT = "subobject"
VARIANTS = (HOM, SUBOBJECT)

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"

DEFAULT_EXHAUSTIVE_BUDGET = 2**25
DEFAULT_BACKTRACK_BUDGET = 5_000_000
TABLE_LIMIT = 2**16


class WitnessError(AssertionError):
    """An oracle produced an output violating the monochromatic postcondition."""


class InconclusiveError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class ArrowQuery:
    cat: FiniteCategory
    C: Obj
    B: Obj
    A: Obj
    k: int
    variant: str = SUBOBJECT

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}")
        if self.k < 1:
            raise DomainError("at least one color is needed")
        self.cat.require(self.A, self.B, self.C)
        if not self.cat.hom(self.A, self.B):
            raise DomainError(f"no morphism {self.A} -> {self.B}")
        if not self.cat.hom(self.B, self.C):
            raise DomainError(f"no morphism {self.B} -> {self.C}")

    def items(self) -> list:
        if self.variant == HOM:
            return self.cat.hom(self.A, self.C)
        return subobject_classes(self.cat, self.A, self.C)

    def pattern(self) -> list:
        if self.variant == HOM:
            return self.cat.hom(self.A, self.B)
        return subobject_classes(self.cat, self.A, self.B)

    def witnesses(self) -> list[Mor]:
        return self.cat.hom(self.B, self.C)

    def image(self, w: Mor) -> list:
        """w·(items of B), computed directly from the category."""
        if self.variant == HOM:
            return [self.cat.compose(w, f) for f in self.pattern()]
        return [class_of(self.cat, self.cat.compose(w, p.representative)) for p in self.pattern()]

    @property
    def notation(self) -> str:
        arrow = "-hom->" if self.variant == HOM else "->"
        return f"{self.C} {arrow} ({self.B})^{self.A}_{self.k}"

    def key(self) -> tuple:
        return (self.cat.tag, self.C, self.B, self.A, self.k, self.variant)


@dataclass(frozen=True)
class Coloring:
    kind: str
    items: tuple
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise DomainError("a coloring uses k >= 2 colors")
        if len(self.items) != len(self.colors):
            raise DomainError("coloring is not total")
        if any(not 1 <= c <= self.k for c in self.colors):
            raise DomainError("color out of range")

    def as_dict(self) -> dict:
        return dict(zip(self.items, self.colors))

    def __getitem__(self, item) -> int:
        return self.as_dict()[item]


# ---------------------------------------------------------------------------
# naive validators: straight from the definitions, no compiled structure


def color_map(chi) -> Mapping:
    return chi.as_dict() if isinstance(chi, Coloring) else chi


def is_monochromatic_witness(q: ArrowQuery, chi, color: int, w: Mor) -> bool:
    chi = color_map(chi)
    if w.dom != q.B or w.cod != q.C or w not in q.cat.hom_index(q.B, q.C):
        return False
    return all(chi[item] == color for item in q.image(w))


def is_bad_coloring(q: ArrowQuery, chi) -> bool:
    """True iff every w: B -> C sees at least two colors."""
    chi = color_map(chi)
    if set(chi) != set(q.items()):
        return False
    return all(len({chi[item] for item in q.image(w)}) >= 2 for w in q.witnesses())


# ---------------------------------------------------------------------------
# compiled hypergraph


@dataclass
class Compiled:
    items: list
    index: dict
    edges: list[tuple[int, ...]]          # distinct edges, sorted
    witness_edges: list[tuple[Mor, tuple[int, ...]]]  # every w in hom order


def compile_query(q: ArrowQuery) -> Compiled:
    def build():
        items = q.items()
        index = {item: i for i, item in enumerate(items)}
        witness_edges = []
        seen: dict[tuple[int, ...], None] = {}
        for w in q.witnesses():
            e = tuple(sorted({index[item] for item in q.image(w)}))
            witness_edges.append((w, e))
            seen.setdefault(e, None)
        return Compiled(items, index, list(seen), witness_edges)

    return q.cat.cached(("compiled",) + q.key()[1:], build)


def find_witness(q: ArrowQuery, chi) -> tuple[int, Mor] | None:
    """First w in hom order whose image is monochromatic, with its color."""
    chi = color_map(chi)
    comp = compile_query(q)
    colors = [chi[item] for item in comp.items]
    for w, e in comp.witness_edges:
        c = colors[e[0]]
        if all(colors[i] == c for i in e):
            return c, w
    return None


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class ArrowVerdict:
    query: ArrowQuery
    status: str
    mode: str
    bad_coloring: Coloring | None = None
    explored: int = 0
    budget: int | None = None
    finder: Callable | None = field(default=None, repr=False)
    table: list | None = field(default=None, repr=False)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE

    def witness(self, chi) -> tuple[int, Mor]:
        if self.finder is None:
            raise PreconditionError("verdict carries no witness finder")
        return self.finder(chi)


def _finder_for(q: ArrowQuery) -> Callable:
    def finder(chi):
        out = find_witness(q, chi)
        if out is None:
            raise WitnessError(f"no monochromatic copy for a coloring although {q.notation} was decided")
        return out

    return finder


def _holds(q, mode, explored, budget) -> ArrowVerdict:
    return ArrowVerdict(q, HOLDS, mode, explored=explored, budget=budget, finder=_finder_for(q))


def _fails(q, mode, colors, explored, budget) -> ArrowVerdict:
    items = compile_query(q).items
    col = Coloring(q.variant, tuple(items), tuple(c + 1 for c in colors), q.k)
    if not is_bad_coloring(q, col):
        raise WitnessError(f"search returned an invalid bad coloring for {q.notation}")
    return ArrowVerdict(q, FAILS, mode, bad_coloring=col, explored=explored, budget=budget)


def check_arrow(q: ArrowQuery, mode: str = "backtracking", budget: int | None = None,
                jobs: int = 1, preseed: Coloring | None = None,
                inject_fault: bool = False) -> ArrowVerdict:
    """Decide ``q`` by searching for a coloring without monochromatic copies.

    ``budget`` caps colorings examined (exhaustive) or search nodes
    (backtracking); running out gives an inconclusive verdict. A ``preseed``
    coloring is tried first and returned as the certificate if it is bad.
    """
    if q.k < 2:
        raise DomainError("arrow relations are defined for k >= 2")
    if mode not in ("exhaustive", "backtracking"):
        raise DomainError(f"unknown mode {mode!r}")
    comp = compile_query(q)
    if preseed is not None and is_bad_coloring(q, preseed):
        colors = [preseed.as_dict()[item] - 1 for item in comp.items]
        return _fails(q, mode, colors, 0, budget)
    if mode == "exhaustive":
        budget = DEFAULT_EXHAUSTIVE_BUDGET if budget is None else budget
        status, colors, explored = exhaustive_search(len(comp.items), q.k, comp.edges, budget, jobs)
    else:
        budget = DEFAULT_BACKTRACK_BUDGET if budget is None else budget
        status, colors, explored = backtracking_search(len(comp.items), q.k, comp.edges, budget,
                                                       inject_fault=inject_fault)
    if status == FAILS:
        return _fails(q, mode, colors, explored, budget)
    if status == HOLDS:
        return _holds(q, mode, explored, budget)
    return ArrowVerdict(q, INCONCLUSIVE, mode, explored=explored, budget=budget)


def cross_check_modes(q: ArrowQuery, budget: int | None = None, inject_fault: bool = False) -> bool:
    """True iff exhaustive and backtracking search agree on ``q``."""
    a = check_arrow(q, "exhaustive", budget)
    b = check_arrow(q, "backtracking", inject_fault=inject_fault)
    if a.inconclusive or b.inconclusive:
        raise InconclusiveError(f"cannot cross-check {q.notation} within budget")
    return a.status == b.status


# ---------------------------------------------------------------------------
# exhaustive mode


CHUNK = 2**16


def _chunk_first_bad(start: int, stop: int, n: int, k: int, edges: Sequence[tuple[int, ...]]) -> int | None:
    """Smallest index in [start, stop) encoding a canonical bad coloring.

    Index i encodes the coloring whose base-k digits, most significant
    first, are the colors of items 0..n-1; index order is lexicographic.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.size, n), dtype=np.int8)
    rest = idx.copy()
    for pos in range(n - 1, -1, -1):
        digits[:, pos] = rest % k
        rest //= k
    # color-permutation canonical form: colors appear in order 0, 1, 2, ...
    running = np.maximum.accumulate(digits, axis=1)
    ok = digits[:, 0] == 0
    if n > 1:
        ok &= np.all(digits[:, 1:] <= running[:, :-1] + 1, axis=1)
    for e in edges:
        if not ok.any():
            return None
        if len(e) == 1:
            return None
        first = digits[:, e[0]]
        mono = np.ones(idx.size, dtype=bool)
        for i in e[1:]:
            mono &= digits[:, i] == first
        ok &= ~mono
    hits = np.flatnonzero(ok)
    return int(idx[hits[0]]) if hits.size else None


def _decode(index: int, n: int, k: int) -> list[int]:
    out = []
    for _ in range(n):
        index, d = divmod(index, k)
        out.append(d)
    return out[::-1]


def exhaustive_search(n: int, k: int, edges, budget: int, jobs: int = 1):
    """Scan every canonical coloring in lexicographic order; the first bad
    one found is the lexicographically least bad coloring overall."""
    if n == 0:
        return (HOLDS if edges else FAILS), [], 1
    # canonical colorings start with color 0, so only the first k^(n-1) indices matter
    stop_all = k ** (n - 1)
    if stop_all > budget:
        return INCONCLUSIVE, None, 0
    starts = list(range(0, stop_all, CHUNK))
    explored = 0
    if jobs <= 1:
        for s in starts:
            t = min(s + CHUNK, stop_all)
            hit = _chunk_first_bad(s, t, n, k, edges)
            explored += t - s
            if hit is not None:
                return FAILS, _decode(hit, n, k), explored
        return HOLDS, None, explored
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for b in range(0, len(starts), jobs):
            batch = starts[b:b + jobs]
            futs = [pool.submit(_chunk_first_bad, s, min(s + CHUNK, stop_all), n, k, edges) for s in batch]
            hits = [f.result() for f in futs]
            explored += sum(min(s + CHUNK, stop_all) - s for s in batch)
            found = [h for h in hits if h is not None]
            if found:
                return FAILS, _decode(min(found), n, k), explored
    return HOLDS, None, explored


# ---------------------------------------------------------------------------
# backtracking mode


class _Backtracker:
    """Search for a k-coloring with no monochromatic edge.

    Each edge tracks per-color counts and its number of uncolored items.
    When all colored items of an edge share color c and one item remains,
    that item is forbidden c; an item with a single allowed color is forced.
    Branching follows a static most-constrained-first order and introduces
    at most one fresh color per branch point.
    """

    def __init__(self, n, k, edges, budget, inject_fault=False):
        self.n, self.k, self.budget = n, k, budget
        self.edges = [e for e in edges]
        self.item_edges = [[] for _ in range(n)]
        for ei, e in enumerate(self.edges):
            for i in e:
                self.item_edges[i].append(ei)
        self.order = sorted(range(n), key=lambda i: (-len(self.item_edges[i]), i))
        self.color = [-1] * n
        self.count = [[0] * k for _ in self.edges]
        self.uncolored = [len(e) for e in self.edges]
        self.forbid = [[0] * k for _ in range(n)]
        self.nodes = 0
        self.fault = inject_fault

    def _assign(self, i, c, trail, queue) -> bool:
        self.color[i] = c
        trail.append(("color", i, c))
        ok = True
        for ei in self.item_edges[i]:
            cnt = self.count[ei]
            cnt[c] += 1
            self.uncolored[ei] -= 1
            size = len(self.edges[ei])
            if self.uncolored[ei] == 0:
                if cnt[c] == size:
                    ok = False
            elif self.uncolored[ei] == 1 and cnt[c] == size - 1:
                j = next(x for x in self.edges[ei] if self.color[x] < 0)
                bad = (c + 1) % self.k if self.fault else c
                self.forbid[j][bad] += 1
                trail.append(("forbid", j, bad))
                if self.forbid[j][bad] == 1:
                    queue.append(j)
        return ok

    def _undo(self, trail, mark):
        while len(trail) > mark:
            kind, i, c = trail.pop()
            if kind == "forbid":
                self.forbid[i][c] -= 1
            else:
                self.color[i] = -1
                for ei in self.item_edges[i]:
                    self.count[ei][c] -= 1
                    self.uncolored[ei] += 1

    def _propagate(self, queue, trail) -> bool:
        while queue:
            j = queue.pop()
            if self.color[j] >= 0:
                continue
            allowed = [c for c in range(self.k) if self.forbid[j][c] == 0]
            if not allowed:
                return False
            if len(allowed) == 1:
                if not self._assign(j, allowed[0], trail, queue):
                    return False
        return True

    def run(self):
        if any(len(e) == 1 for e in self.edges):
            return HOLDS, None
        trail: list = []
        try:
            found = self._search(0, -1, trail)
        except _OutOfBudget:
            return INCONCLUSIVE, None
        return (FAILS, list(self.color)) if found else (HOLDS, None)

    def _search(self, pos, top, trail) -> bool:
        while pos < self.n and self.color[self.order[pos]] >= 0:
            pos += 1
        if pos == self.n:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        i = self.order[pos]
        used = max(top, max(self.color))
        for c in range(min(used + 2, self.k)):
            if self.forbid[i][c]:
                continue
            mark = len(trail)
            queue: list[int] = []
            if self._assign(i, c, trail, queue) and self._propagate(queue, trail):
                if self._search(pos + 1, max(used, c), trail):
                    return True
            self._undo(trail, mark)
        return False


class _OutOfBudget(Exception):
    pass


def backtracking_search(n: int, k: int, edges, budget: int, inject_fault: bool = False):
    import sys

    bt = _Backtracker(n, k, edges, budget, inject_fault)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    try:
        status, colors = bt.run()
    finally:
        sys.setrecursionlimit(limit)
    return status, colors, bt.nodes


# ---------------------------------------------------------------------------
# witness tables


def all_colorings(n: int, k: int):
    """Every k-coloring of n items (colors 1..k) in lexicographic order."""
    import itertools

    return itertools.product(range(1, k + 1), repeat=n)


def coloring_hash(colors: Sequence[int]) -> str:
    return hashlib.sha256(json.dumps(list(colors)).encode()).hexdigest()[:16]


def materialize_table(v: ArrowVerdict) -> list[tuple[str, int, Mor]]:
    """Witness for every coloring of the query's items (at most 2^16 of them)."""
    if not v.holds:
        raise PreconditionError("only a holding verdict has a witness table")
    q = v.query
    comp = compile_query(q)
    n = len(comp.items)
    if q.k ** n > TABLE_LIMIT:
        raise PreconditionError(f"{q.k}^{n} colorings exceed the table limit")
    table = []
    for colors in all_colorings(n, q.k):
        chi = dict(zip(comp.items, colors))
        c, w = v.witness(chi)
        table.append((coloring_hash(colors), c, w))
    v.table = table
    return table


# ---------------------------------------------------------------------------
# oracles


class RamseyOracle:
    """A packaged proof of an arrow relation: ``oracle(chi)`` returns a color
    and a monochromatic w: B -> C, and raises WitnessError otherwise."""

    def __init__(self, query: ArrowQuery, evaluate: Callable[[Mapping], tuple[int, Mor]],
                 name: str = "oracle") -> None:
        self.query = query
        self.evaluate = evaluate
        self.name = name
        self.evaluations = 0

    def __call__(self, chi) -> tuple[int, Mor]:
        chi = color_map(chi)
        color, w = self.evaluate(chi)
        self.evaluations += 1
        if not 1 <= color <= self.query.k or not is_monochromatic_witness(self.query, chi, color, w):
            raise WitnessError(f"{self.name} returned a non-monochromatic witness for {self.query.notation}")
        return color, w

    def __repr__(self) -> str:
        return f"<RamseyOracle {self.name}: {self.query.notation}>"


def oracle_from_verdict(v: ArrowVerdict, name: str | None = None) -> RamseyOracle:
    if not v.holds:
        raise PreconditionError(f"{v.query.notation} is not known to hold")
    return RamseyOracle(v.query, v.finder, name or f"search[{v.query.notation}]")


def random_coloring(items: Sequence, k: int, rng) -> dict:
    return {item: int(rng.integers(1, k + 1)) for item in items}


def item_key(item: Hashable):
    """The morphism naming a colored item (class representative or the morphism)."""
    return item.representative if isinstance(item, SubobjectClass) else item
