"""Acceptance suite: one test per criterion. Each test prints a single
PASS/FAIL line with its measured time against the pinned limit."""

import itertools
import json
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from arrowlab import cli
from arrowlab.arrow import HOM, ArrowQuery, check_arrow, is_bad_coloring, oracle_from_verdict, random_coloring
from arrowlab.constructions import nonrigidity_coloring, pigeonhole_oracle, product_arrow_witness
from arrowlab.core import (
    FullSubcategory,
    ProductCategory,
    TableCategory,
    subobject_classes,
    verify_category_laws,
)
from arrowlab.fraisse import check_HP, check_ordering_witness, check_reasonable, find_ordering_witness
from arrowlab.structures.boolean import fbas_category, fbas_op_category, stone_duality
from arrowlab.structures.ordered import (
    enumerate_ordered_homs,
    fba_category,
    forgetful,
    is_ordered_hom_oracle,
    ofba_category,
    ov_fin_category,
    permutations_of,
    power_equivalence,
    reasonable_extension,
    skeleton_equivalence,
    vfin_category,
)
from arrowlab.structures.sets import fsi_category, fss_category, fss_op_category
from arrowlab.structures.trees import (
    closure_adjunction,
    figure1_tree,
    homogeneous_closure,
    homogeneous_tree_category,
    tree_category,
)
from arrowlab.structures.vector import duality, surjective_op, vector_space_categories
from arrowlab.transport import (
    Adjunction,
    Equivalence,
    Functor,
    NaturalTransformation,
    check_aut_condition,
    equivalence_transport_obj,
    verify_adjunction,
    verify_equivalence,
    verify_functor,
)

FSI = fsi_category()
SCENARIOS = Path(__file__).parent / "scenarios"

# pinned wall-clock limits, seconds
LIMITS = {1: 1, 2: 10, 3: 5, 4: 300, 5: 60, 6: 60, 7: 300, 8: 1, 9: 120, 10: 300, 11: 120, 12: 600}
TRANSPORT_SAMPLES = 200
PRODUCT_SAMPLES = 100


@contextmanager
def criterion(n: int, title: str, log: list):
    """Time the block, print one line, and enforce the pinned limit."""
    state = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < LIMITS[n]
        verdict = "PASS" if ok else "FAIL"
        line = f"[acceptance {n:02d}] {verdict} {title}: {state['detail']} ({elapsed:.2f} s, limit {LIMITS[n]} s)"
        print("\n" + line)
        log.append(line)
    assert elapsed < LIMITS[n], f"criterion {n} took {elapsed:.2f} s"


def test_01_pigeonhole(acceptance_log):
    with criterion(1, "pigeonhole arrows in FSI", acceptance_log) as st:
        checked = 0
        for m in (1, 2, 3):
            for k in (2, 3):
                top = k * (m - 1) + 1
                assert check_arrow(ArrowQuery(FSI, FSI(top), FSI(m), FSI(1), k)).holds
                below = k * (m - 1)
                if below >= m:
                    v = check_arrow(ArrowQuery(FSI, FSI(below), FSI(m), FSI(1), k))
                    assert v.fails and is_bad_coloring(v.query, v.bad_coloring)
                # for m = 1 the lower size is 0: no object, nothing to refute
                checked += 1
        st["detail"] = f"{checked} (m, k) pairs exact"


def test_02_r33(acceptance_log):
    with criterion(2, "R(3,3) endpoint, exhaustive", acceptance_log) as st:
        holds = check_arrow(ArrowQuery(FSI, FSI(6), FSI(3), FSI(2), 2), "exhaustive")
        fails = check_arrow(ArrowQuery(FSI, FSI(5), FSI(3), FSI(2), 2), "exhaustive")
        assert holds.holds and fails.fails
        assert is_bad_coloring(fails.query, fails.bad_coloring)
        st["detail"] = f"C=6 holds ({holds.explored} colorings), C=5 fails with a re-validated coloring"


def test_03_rigidity(acceptance_log):
    with criterion(3, "rigidity obstruction", acceptance_log) as st:
        A = FSI(2)
        swap = FSI.hom(A, A)[1]
        for c in range(2, 6):
            q = ArrowQuery(FSI, FSI(c), FSI(min(3, c)), A, 2, HOM)
            pre = nonrigidity_coloring(FSI, A, FSI(c), swap)
            assert is_bad_coloring(q, pre)
            v = check_arrow(q, preseed=pre)
            assert v.fails and v.bad_coloring == pre
            assert check_arrow(q).fails
        st["detail"] = "hom variant fails for |C| = 2..5, certificate = nonrigidity coloring"


def test_04_dual_micro_ramsey(acceptance_log):
    op = fss_op_category()
    fss = fss_category()
    with criterion(4, "dual micro-Ramsey in FSS^op", acceptance_log) as st:
        verdicts = {}
        for n in range(3, 8):
            q = ArrowQuery(op, fss(n), fss(3), fss(2), 2)
            bt = check_arrow(q, "backtracking")
            if n <= 5:
                assert len(q.items()) <= 15
                ex = check_arrow(q, "exhaustive")
                assert ex.status == bt.status
            assert not bt.inconclusive
            if bt.fails:
                assert is_bad_coloring(q, bt.bad_coloring)
            verdicts[n] = bt.status
        assert [verdicts[n] for n in (3, 4, 5)] == ["fails"] * 3
        st["detail"] = ", ".join(f"n={n}: {s}" for n, s in verdicts.items())


def test_05_lemma_oracle_equivalence(acceptance_log):
    with criterion(5, "ordered-hom enumeration vs brute force", acceptance_log) as st:
        compared = discrepancies = 0
        for base in (2, 3):
            for n, m in itertools.product((1, 2, 3), repeat=2):
                for pi in permutations_of(n):
                    for sigma in permutations_of(m):
                        listed = {h.payload for h in enumerate_ordered_homs(base, n, pi, m, sigma)}
                        for payload in itertools.product(range(1, n + 1), repeat=m):
                            compared += 1
                            if (payload in listed) != is_ordered_hom_oracle(payload, pi, sigma, base):
                                discrepancies += 1
        assert discrepancies == 0
        st["detail"] = f"{compared} index tuples, 0 discrepancies"


def _oracle_count(base, n, pi, m, sigma):
    return sum(1 for p in itertools.product(range(1, n + 1), repeat=m)
               if len(set(p)) == n and is_ordered_hom_oracle(p, pi, sigma, base))


def test_06_skeleton_equivalence(acceptance_log):
    with criterion(6, "skeleton equivalence across carriers", acceptance_log) as st:
        two, three = ofba_category(), ov_fin_category(3)
        pairs = 0
        for A, B in itertools.product(two.objects(3), repeat=2):
            (n, pi), (m, sigma) = A.payload, B.payload
            c2 = len(two.hom(A, B))
            assert c2 == len(three.hom(three.ordered(n, pi), three.ordered(m, sigma)))
            assert c2 == _oracle_count(2, n, pi, m, sigma) == _oracle_count(3, n, pi, m, sigma)
            pairs += 1
        eq = skeleton_equivalence(3)
        assert verify_functor(eq.E, 3) == [] and verify_functor(eq.H, 3) == []
        assert verify_equivalence(eq, 3) == []
        st["detail"] = f"{pairs} object pairs agree, functor and equivalence reports empty"


def test_07_stone_transport(acceptance_log):
    with criterion(7, "Stone transport to FBAS^op", acceptance_log) as st:
        ba, op = fbas_category(), fbas_op_category()
        eq = stone_duality().inverse()
        v = check_arrow(ArrowQuery(FSI, FSI(6), FSI(3), FSI(2), 2), "exhaustive")
        moved = equivalence_transport_obj(eq, oracle_from_verdict(v), ba.algebra(3), ba.algebra(2))
        rng = np.random.default_rng(0)
        for _ in range(TRANSPORT_SAMPLES):
            moved(random_coloring(moved.query.items(), 2, rng))
        # every holding query at 4 atoms, checked on all colorings
        exhaustive = 0
        for a, b in itertools.combinations_with_replacement(range(1, 5), 2):
            src = check_arrow(ArrowQuery(FSI, FSI(4), FSI(b), FSI(a), 2))
            if not src.holds:
                continue
            o = equivalence_transport_obj(eq, oracle_from_verdict(src), ba.algebra(b), ba.algebra(a))
            items = o.query.items()
            for colors in itertools.product((1, 2), repeat=len(items)):
                o(dict(zip(items, colors)))
                exhaustive += 1
        matched = 0
        for a, b, c in itertools.combinations_with_replacement(range(1, 6), 3):
            left = check_arrow(ArrowQuery(FSI, FSI(c), FSI(b), FSI(a), 2))
            right = check_arrow(ArrowQuery(op, ba.algebra(c), ba.algebra(b), ba.algebra(a), 2))
            assert left.status == right.status
            matched += 1
        st["detail"] = (f"{TRANSPORT_SAMPLES} random + {exhaustive} exhaustive checks, "
                        f"{matched} matched verdicts agree")


def test_08_figure1(acceptance_log):
    with criterion(8, "Figure-1 class counts", acceptance_log) as st:
        T = tree_category()
        A = figure1_tree()
        B = homogeneous_closure(A)
        FA = closure_adjunction().F(A)
        assert FA == B
        n_FA = len(subobject_classes(T, FA, B))
        n_A = len(subobject_classes(T, A, B))
        assert (n_FA, n_A) == (1, 4)
        assert check_aut_condition(closure_adjunction().F, A) is False
        st["detail"] = f"|hom(F(A),B)/~| = {n_FA}, |hom(A,B)/~| = {n_A}, aut condition false"


def test_09_product(acceptance_log):
    with criterion(9, "product construction in FSI x FSI", acceptance_log) as st:
        P = ProductCategory(FSI, FSI)
        o1 = pigeonhole_oracle(FSI, 2, 2)
        C, o = product_arrow_witness(o1, lambda kk: pigeonhole_oracle(FSI, 2, kk),
                                     (FSI(1), FSI(1)), (FSI(2), FSI(2)), 2, P)
        assert C == P.pair(FSI(3), FSI(9))
        rng = np.random.default_rng(0)
        for _ in range(PRODUCT_SAMPLES):
            o(random_coloring(o.query.items(), 2, rng))
        v = check_arrow(ArrowQuery(P, P.pair(FSI(3), FSI(3)), P.pair(FSI(2), FSI(2)), P.pair(FSI(1), FSI(1)), 2),
                        "exhaustive")
        assert v.fails and is_bad_coloring(v.query, v.bad_coloring)
        st["detail"] = f"C = (3, 9), {PRODUCT_SAMPLES} oracle checks; (3, 3) fails with a certified coloring"


def test_10_closure_suite(acceptance_log):
    with criterion(10, "hereditary, reasonable and ordering checks", acceptance_log) as st:
        U = forgetful(3)
        cat = U.source
        assert check_HP(cat, 3).passed
        ext = lambda f, A: cat.ordered(f.cod.payload, reasonable_extension(f.payload, A.payload[1]))  # noqa: E731
        assert check_reasonable(U, 3, ext).passed
        U2 = forgetful(2)
        A = fba_category().power(2)
        B, rep = find_ordering_witness(U2.source, U2, A, 5)
        assert B is not None and rep.passed
        assert check_ordering_witness(U2.source, U2, A, B).passed
        st["detail"] = f"HP and reasonable pass at n <= 3, ordering witness {B} for {A}"


def _law_targets():
    inj, surj = vector_space_categories(2)
    categories = [
        (FSI, 3), (fss_category(), 3), (fss_op_category(), 3), (fbas_category(), 3), (fbas_op_category(), 3),
        (ofba_category(), 3), (ov_fin_category(3), 3), (fba_category(), 3), (vfin_category(3), 3),
        (tree_category(), 4), (homogeneous_tree_category(), 4), (inj, 2), (surj, 2), (surjective_op(2), 2),
    ]
    equivalences = [(stone_duality(), 3), (skeleton_equivalence(3), 3), (power_equivalence(3), 3), (duality(2), 2)]
    adjunctions = [(closure_adjunction(), 4)] + [(e.as_adjunction(), b) for e, b in equivalences]
    functors = [(forgetful(2), 3), (forgetful(3), 3)]
    return categories, equivalences, adjunctions, functors


def _faults():
    """Violation counts for one corrupted variant per kind of law."""
    table = TableCategory("T", {"a": 1, "b": 2, "c": 3},
                          {"f1": ("a", "b"), "f2": ("a", "b"), "g": ("b", "c"), "h1": ("a", "c"), "h2": ("a", "c")},
                          {("g", "f1"): "h1", ("g", "f2"): "h2"})
    table._table[("id_b", "f1")], table._table[("id_b", "f2")] = "f2", "f1"
    stone = stone_duality()
    E = stone.E
    bad_functor = Functor(E.source, E.target, E.obj,
                          lambda f: E.target.identity(E(f.cod)) if f.dom != f.cod else E(f), "bad")
    adj = stone.as_adjunction()
    bad_unit = NaturalTransformation(adj.unit.F, adj.unit.G, lambda A: FSI.hom(A, A)[-1], "bad-eta")
    holey = FullSubcategory(FSI, lambda A: A.payload != 2)
    return {
        "category table": len(verify_category_laws(table, 3)),
        "functor map": len(verify_functor(bad_functor, 3)),
        "adjunction unit": len(verify_adjunction(Adjunction(adj.F, adj.G, bad_unit, adj.counit), 3)),
        "equivalence unit": len(verify_equivalence(Equivalence(stone.E, stone.H, bad_unit, stone.eps), 3)),
        "missing object": int(not check_HP(holey, 3).passed),
    }


def test_11_law_suite(acceptance_log):
    with criterion(11, "law suite", acceptance_log) as st:
        categories, equivalences, adjunctions, functors = _law_targets()
        for cat, bound in categories:
            assert verify_category_laws(cat, bound) == [], cat.tag
        for eq, bound in equivalences:
            assert verify_equivalence(eq, bound) == [], eq.name
        for adj, bound in adjunctions:
            assert verify_adjunction(adj, bound) == [], adj.name
        for F, bound in functors:
            assert verify_functor(F, bound) == [], F.name
        faults = _faults()
        for name, count in faults.items():
            assert count >= 1, name
        st["detail"] = (f"{len(categories)} categories, {len(equivalences)} equivalences, "
                        f"{len(adjunctions)} adjunctions, {len(functors)} functors clean; "
                        f"{len(faults)} faults detected")


def test_12_reproducibility(tmp_path, capsys, acceptance_log):
    with criterion(12, "reproducible envelopes", acceptance_log) as st:
        names = sorted(p.stem for p in SCENARIOS.glob("*.json"))
        for name in names:
            blobs = []
            for run in (1, 2):
                out = tmp_path / f"{name}.{run}.env"
                code = cli.main(["run", "--scenario", str(SCENARIOS / f"{name}.json"), "--out", str(out),
                                 "--deterministic"])
                assert code in (0, 1), name
                env = json.loads(out.read_text())
                env.pop("wall_clock")
                blobs.append(cli.dump_envelope(env))
                ok, why = cli.revalidate(json.loads(out.read_text()))
                assert ok, f"{name}: {why}"
            assert blobs[0] == blobs[1], name
        capsys.readouterr()
        st["detail"] = f"{len(names)} scenarios byte-identical and revalidated"
