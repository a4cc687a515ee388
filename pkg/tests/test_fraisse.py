import pytest

from arrowlab.core import FullSubcategory, Mor, TableCategory
from arrowlab.fraisse import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    check_AP,
    check_HP,
    check_JEP,
    check_order_expansion,
    check_ordering_witness,
    check_reasonable,
    expansions,
    find_ordering_witness,
)
from arrowlab.structures.ordered import fba_category, forgetful, ofba_category, ov_fin_category, reasonable_extension
from arrowlab.structures.sets import fsi_category
from arrowlab.transport import Functor

FSI = fsi_category()


def test_hp():
    assert check_HP(FSI, 4).status == PASS
    assert check_HP(ov_fin_category(3), 3).status == PASS
    holey = FullSubcategory(FSI, lambda A: A.payload != 2, "FSI-2")
    rep = check_HP(holey, 3)
    assert rep.status == FAIL and rep.counterexample[1] == FSI(2)


def test_jep_ap():
    assert check_JEP(FSI, 3, 6).status == PASS
    rep = check_AP(FSI, 3, 6)
    assert rep.status == PASS
    for f, g, u, v in rep.evidence:
        assert FSI.compose(u, f) == FSI.compose(v, g)
    assert check_AP(ofba_category(), 2, 4).status == PASS


def test_budget_zero_is_inconclusive():
    assert check_AP(FSI, 2, 0).status == INCONCLUSIVE
    assert check_JEP(FSI, 2, 0).status == INCONCLUSIVE


def test_order_expansion_counts():
    rep = check_order_expansion(forgetful(2), 3)
    assert rep.status == PASS and rep.evidence == [1, 2, 6]


def test_reasonable():
    for base in (2, 3):
        U = forgetful(base)
        cat = U.source
        ext = lambda f, A: cat.ordered(f.cod.payload, reasonable_extension(f.payload, A.payload[1]))  # noqa: E731
        assert check_reasonable(U, 3, ext).status == PASS
        assert check_reasonable(U, 2).status == PASS


def _identity_only():
    O, V = ofba_category(), fba_category()
    sub = FullSubcategory(O, lambda A: A.payload[1] == tuple(range(1, A.payload[0] + 1)), "OFBA|id")
    U = Functor(sub, V, lambda A: V.power(A.payload[0]),
                lambda f: Mor(V.power(f.dom.payload[0]), V.power(f.cod.payload[0]), f.payload), "U|id")
    return U


def test_reasonable_fails_when_orders_are_restricted():
    rep = check_reasonable(_identity_only(), 2)
    assert rep.status == FAIL
    f, A_star = rep.counterexample
    assert f.payload == (2, 1) and A_star == ofba_category().ordered(2)


def test_ordering_witness():
    U = forgetful(2)
    V = U.target
    B, rep = find_ordering_witness(U.source, U, V.power(2), 5)
    assert B is not None and rep.passed
    assert check_ordering_witness(U.source, U, V.power(2), B).passed
    # a unique expansion embeds everywhere
    assert check_ordering_witness(U.source, U, V.power(1), V.power(3)).passed
    assert len(expansions(U, V.power(3))) == 6


def test_ordering_fault_fixture():
    star = TableCategory("S", {"a1": 1, "a2": 1}, {}, {})
    base = TableCategory("B", {"a": 1}, {}, {})
    a = base.ob("a")
    U = Functor(star, base, lambda X: a, lambda f: base.identity(a), "U")
    rep = check_ordering_witness(star, U, a, a)
    assert rep.status == FAIL
    assert {X.payload for X in rep.counterexample} == {"a1", "a2"}


def test_ordering_wrong_source():
    with pytest.raises(ValueError):
        check_ordering_witness(FSI, forgetful(2), fba_category().power(1), fba_category().power(1))


@pytest.mark.parametrize("base", [2, 3])
def test_reasonable_expansion_passes_amalgamation_down(base):
    U = forgetful(base)
    assert check_reasonable(U, 2).passed and check_AP(U.source, 2, 4).passed
    assert check_AP(U.target, 2, 4).passed
