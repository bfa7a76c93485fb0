import numpy as np
import pytest

from colpoly.colouring import colouring_polynomial, enumerate_colourings, quandle_colourings
from colpoly.diagram import load_fixture
from colpoly.errors import HypothesisError
from colpoly.group_ring import polynomial
from colpoly.quandle import (Cocycle2, conjugation_augmentation, conjugation_quandle, inner_augmentation,
                             section_cocycle)
from colpoly.state_sum import (Extension, based_state_sums, closed_lifting_filter, crosscheck_cp_equals_ss,
                               lift_colouring, specialize_ss_to_cp, state_sum)


def test_trefoil_state_sum(group):
    G = group("A5")
    lam = section_cocycle(G)
    ss = state_sum(load_fixture("trefoil_left").code(), lam.quandle, lam)
    assert ss == polynomial(G, {0: 12, 1: 60})


def test_trivial_cocycle_counts_colourings(group):
    lam = section_cocycle(group("A5"))
    Q, L = lam.quandle, lam.labels
    code = load_fixture("fig8").code()
    ss = state_sum(code, Q, Cocycle2.trivial(Q, L))
    assert sum(ss.terms.values()) == quandle_colourings(code, Q)


def test_full_enumeration_matches_shortcut(group):
    lam = section_cocycle(group("PSL2_7", "mat:1,1,0,1"))
    code = load_fixture("fig8").code()
    assert state_sum(code, lam.quandle, lam, full=True) == state_sum(code, lam.quandle, lam)
    sums = based_state_sums(code, lam.quandle, lam)
    assert all(s == sums[0] for s in sums)


@pytest.mark.parametrize("name", ["trefoil_left", "trefoil_right", "fig8"])
def test_crosscheck(group, name):
    ok, ss, poly = crosscheck_cp_equals_ss(group("A5"), load_fixture(name).code(), details=True)
    assert ok, (ss, poly)


def test_crosscheck_needs_abelian_longitudes(group):
    G = group("S7", "(1,2)")
    assert not G.longitude_subgroup().is_abelian()
    with pytest.raises(HypothesisError):
        crosscheck_cp_equals_ss(G, load_fixture("trefoil_left").code())


def test_specialization_round_trip(group):
    lam = section_cocycle(group("A5"))
    code = load_fixture("trefoil_left").code()
    value, G, poly = specialize_ss_to_cp(lam.quandle, lam, code, details=True)
    assert value == state_sum(code, lam.quandle, lam)
    assert Extension(lam).size == lam.quandle.size * lam.labels.order
    assert sum(poly.terms.values()) == sum(colouring_polynomial(code, group("A5")).terms.values())


def test_lifting_is_a_bijection(group):
    G = group("A5")
    Q = conjugation_quandle(G)
    aug = conjugation_augmentation(Q)
    code = load_fixture("fig8").code()
    cols = enumerate_colourings(code, G)
    lifts = {tuple(lift_colouring(code, c, aug, Q.basepoint)) for c in cols}
    assert len(lifts) == len(cols) == quandle_colourings(code, Q, Q.basepoint, closed=False)


def test_closed_lifting_filter(group):
    G = group("A5")
    Q = conjugation_quandle(G)
    for aug in (conjugation_augmentation(Q), inner_augmentation(Q)):
        for name in ("trefoil_left", "fig8"):
            code = load_fixture(name).code()
            kept = closed_lifting_filter(code, aug, Q.basepoint)
            assert len(kept) == quandle_colourings(code, Q, Q.basepoint, closed=True)


def test_lift_rejects_wrong_start(group):
    G = group("A5")
    Q = conjugation_quandle(G)
    aug = conjugation_augmentation(Q)
    code = load_fixture("trefoil_left").code()
    c = enumerate_colourings(code, G)[0]
    other = int(np.nonzero(np.arange(Q.size) != Q.basepoint)[0][0])
    with pytest.raises(HypothesisError):
        lift_colouring(code, c, aug, other)
