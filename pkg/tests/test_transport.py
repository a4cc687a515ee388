import itertools

import numpy as np
import pytest

from arrowlab.arrow import HOM, ArrowQuery, check_arrow, oracle_from_verdict, random_coloring
from arrowlab.core import Mor, PreconditionError, subobject_classes
from arrowlab.serialize import jsonable
from arrowlab.structures.boolean import fbas_op_category, stone_duality
from arrowlab.structures.ordered import (
    forgetful,
    ofba_category,
    ov_fin_category,
    power_equivalence,
    skeleton_equivalence,
)
from arrowlab.structures.sets import fsi_category
from arrowlab.structures.trees import closure_adjunction, figure1_tree, homogeneous_closure, tree_category
from arrowlab.structures.vector import duality
from arrowlab.transport import (
    Adjunction,
    Equivalence,
    Functor,
    NaturalTransformation,
    adjunction_transport_hom,
    check_aut_condition,
    class_phi_compat,
    equivalence_transport_hom,
    equivalence_transport_obj,
    identity_adjunction,
    identity_equivalence,
    identity_functor,
    load_functor_json,
    ordering_transport,
    verify_adjunction,
    verify_equivalence,
    verify_functor,
)

FSI = fsi_category()


def test_functor_laws():
    assert verify_functor(stone_duality().E, 3) == []
    assert verify_functor(stone_duality().H, 3) == []
    assert verify_functor(skeleton_equivalence(3).E, 3) == []
    assert verify_functor(forgetful(3), 3) == []


def test_fault_injected_functor():
    E = stone_duality().E
    bad = Functor(E.source, E.target, E.obj, lambda f: E.target.identity(E(f.cod)) if f.dom != f.cod else E(f))
    assert verify_functor(bad, 3) != []


@pytest.mark.parametrize("eq", [stone_duality(), skeleton_equivalence(3), power_equivalence(3), duality(2)],
                         ids=lambda e: e.name)
def test_equivalences(eq):
    assert verify_equivalence(eq, 3) == []
    assert verify_adjunction(eq.as_adjunction(), 3) == []


def test_tree_adjunction_at_small_sizes():
    assert verify_adjunction(closure_adjunction(), 4) == []


def test_fault_injected_unit():
    adj = stone_duality().as_adjunction()
    fsi = adj.C
    swap = lambda A: fsi.hom(A, A)[-1]  # noqa: E731
    bad = Adjunction(adj.F, adj.G, NaturalTransformation(adj.unit.F, adj.unit.G, swap, "bad"), adj.counit)
    assert verify_adjunction(bad, 3) != []


def test_identity_transport():
    v = check_arrow(ArrowQuery(FSI, FSI(6), FSI(3), FSI(2), 2), "exhaustive")
    o = oracle_from_verdict(v)
    moved = equivalence_transport_obj(identity_equivalence(FSI), o, FSI(3), FSI(2))
    rng = np.random.default_rng(1)
    items = o.query.items()
    for _ in range(20):
        chi = random_coloring(items, 2, rng)
        assert moved(chi) == o(chi)


def test_stone_transport_to_fbas_op():
    v = check_arrow(ArrowQuery(FSI, FSI(6), FSI(3), FSI(2), 2), "exhaustive")
    eq = stone_duality().inverse()
    op = fbas_op_category()
    B, A = op.base.algebra(3), op.base.algebra(2)
    moved = equivalence_transport_obj(eq, oracle_from_verdict(v), B, A)
    assert moved.query.C == op.base.algebra(6)
    rng = np.random.default_rng(0)
    for _ in range(50):
        moved(random_coloring(moved.query.items(), 2, rng))


def test_class_compat():
    adj = stone_duality().as_adjunction()
    for a, y in itertools.product(range(1, 4), repeat=2):
        if a <= y:
            assert class_phi_compat(adj, FSI(a), fbas_op_category().base.algebra(y))
    assert class_phi_compat(identity_adjunction(FSI), FSI(2), FSI(3))


def test_aut_condition():
    sk = skeleton_equivalence(3)
    assert all(check_aut_condition(sk.E, A) for A in ofba_category().objects(3))
    assert check_aut_condition(identity_functor(FSI), FSI(3))
    adj = closure_adjunction()
    A = figure1_tree()
    assert not check_aut_condition(adj.F, A)
    with pytest.raises(PreconditionError, match="1 in .* 4 in"):
        class_phi_compat(adj, A, homogeneous_closure(A))


def test_hom_transport_through_tree_adjunction():
    T = tree_category()
    adj = closure_adjunction()
    A, B = T.tree((-1,)), T.tree((-1, 0))
    # in HTree, a star with 3 leaves arrows (star with 2 leaves)^root for hom colorings of the root
    star3 = T.tree((-1, 0, 0, 0))
    H = adj.D
    qd = ArrowQuery(H, star3, adj.F(B), adj.F(A), 2, HOM)
    v = check_arrow(qd)
    assert v.holds
    moved = adjunction_transport_hom(adj, oracle_from_verdict(v), B, A)
    items = moved.query.items()
    for colors in itertools.product((1, 2), repeat=len(items)):
        moved(dict(zip(items, colors)))


def test_equivalence_hom_transport_identity():
    A, B = FSI(1), FSI(2)
    v = check_arrow(ArrowQuery(FSI, FSI(3), B, A, 2, HOM))
    moved = equivalence_transport_hom(identity_equivalence(FSI), oracle_from_verdict(v), B, A)
    for colors in itertools.product((1, 2), repeat=3):
        chi = dict(zip(moved.query.items(), colors))
        assert moved(chi) == v.witness(chi)


def test_ordering_transport():
    sk = skeleton_equivalence(3)
    pw = power_equivalence(3)
    U, V = forgetful(2), forgetful(3)
    A = pw.D.power(2)
    out = ordering_transport(sk, pw, U, V, A, pw.C.power(2), 3)
    assert out == pw.D.power(2)
    wrong = Functor(U.source, U.target, lambda X: U.target.power(1), lambda f: U.target.identity(U.target.power(1)))
    with pytest.raises(PreconditionError):
        ordering_transport(sk, pw, wrong, V, A, pw.C.power(2), 2)


def test_load_functor_json():
    fsi = FSI
    spec = {
        "name": "id2",
        "max_grade": 2,
        "objects": [[1, 1], [2, 2]],
        "morphisms": [[jsonable(f), jsonable(f)] for A in fsi.objects(2) for B in fsi.objects(2) for f in fsi.hom(A, B)],
    }
    F = load_functor_json(spec, fsi, fsi)
    assert verify_functor(F, 2) == []
    spec["morphisms"][1][1] = spec["morphisms"][2][1]
    assert verify_functor(load_functor_json(spec, fsi, fsi), 2) != []


def test_equivalence_inverse_round_trip():
    eq = stone_duality()
    inv = eq.inverse()
    assert inv.E is eq.H and inv.eta is eq.eps
    assert verify_equivalence(inv, 3) == []
