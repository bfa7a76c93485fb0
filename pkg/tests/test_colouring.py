import pytest

from colpoly.colouring import (check_prime_congruence, colouring_number, colouring_polynomial,
                               enumerate_colourings, longitudes, quandle_colourings, total_colouring_number)
from colpoly.diagram import UNKNOT, load_fixture
from colpoly.errors import SearchLimitExceeded
from colpoly.group_ring import apply_map, polynomial
from colpoly.groups import find_obversion
from colpoly.quandle import conjugation_quandle
from colpoly.verify import fixture_code

FIXTURES = ["unknot", "trefoil_left", "trefoil_right", "fig8", "kinoshita_terasaka", "conway",
            "bretzel_3_5_7", "8_17"]


def test_trefoil_over_s3(group):
    G = group("D6")
    code = load_fixture("trefoil_left").code()
    assert colouring_number(code, G) == 3
    # trivial, two abelian ones at the 3-cycles, nine at the transpositions
    assert total_colouring_number(code, G) == 12


def test_unknot(group):
    G = group("A5")
    assert colouring_polynomial(UNKNOT, G) == polynomial(G, {0: 1})
    assert total_colouring_number(UNKNOT, G) == G.order


def test_colourings_are_consistent(group):
    G = group("A5")
    code = load_fixture("fig8").code()
    cols = enumerate_colourings(code, G)
    assert all(c.arcs[0] == G.basepoint for c in cols)
    assert all(c.arcs[-1] == G.basepoint for c in cols)
    for c in cols:
        for i, (k, e) in enumerate(zip(code.kappa, code.eps), 1):
            prev, over = c.arcs[i - 1], c.arcs[k]
            want = G.conj(prev, over) if e == 1 else G.conj(prev, G.inv(over))
            assert c.arcs[i] == want
    assert sum(colouring_polynomial(code, G).terms.values()) == len(cols)


def test_longitudes_commute_with_meridian(group):
    G = group("PSL2_7", "mat:1,1,0,1")
    code = load_fixture("conway").code()
    for c in enumerate_colourings(code, G):
        assert G.mul(c.longitude, G.basepoint) == G.mul(G.basepoint, c.longitude)
        assert c.partial_longitudes(code, G)[-1] == c.longitude


@pytest.mark.parametrize("d,b", [("A5", "(1,2,3,4,5)"), ("PSL2_7", "mat:1,1,0,1"), ("PSL2_7", "mat:0,1,6,1")])
@pytest.mark.parametrize("name", FIXTURES[:-2])
def test_inverse_knot_gives_inverse_polynomial(group, d, b, name):
    G = group(d, b)
    P = colouring_polynomial(fixture_code(name), G)
    assert colouring_polynomial(fixture_code(name, "inv"), G) == apply_map(P, None, "inv")


@pytest.mark.parametrize("name", ["trefoil_left", "fig8", "kinoshita_terasaka", "conway"])
def test_obversion_and_reversion_equivariance(group, name):
    G = group("A7", "(1,2,3,4,5,6,7)")
    obv, rev = find_obversion(G)
    P = colouring_polynomial(fixture_code(name), G)
    assert colouring_polynomial(fixture_code(name, "obv"), G) == apply_map(P, obv, "obv")
    assert colouring_polynomial(fixture_code(name, "rev"), G) == apply_map(P, rev, "rev")


def test_workers_give_identical_rows(group):
    G = group("PSL2_7", "mat:1,1,0,1")
    code = load_fixture("kinoshita_terasaka").code()
    one = enumerate_colourings(code, G, workers=1)
    two = enumerate_colourings(code, G, workers=2)
    assert [c.arcs for c in one] == [c.arcs for c in two]
    assert [c.longitude for c in one] == [c.longitude for c in two]


def test_node_cap(group):
    with pytest.raises(SearchLimitExceeded):
        colouring_polynomial(load_fixture("kinoshita_terasaka").code(), group("A7", "(1,2,3,4,5,6,7)"),
                             node_cap=1000)


def test_quandle_colouring_counts(group):
    G = group("A5")
    Q = conjugation_quandle(G)
    code = load_fixture("trefoil_left").code()
    assert quandle_colourings(code, Q, Q.basepoint) == 6
    assert quandle_colourings(code, Q) == 6 * Q.size
    assert quandle_colourings(code, Q, Q.basepoint, closed=False) == 6
    rows = quandle_colourings(code, Q, Q.basepoint, listing=True)
    assert rows.shape == (6, code.n + 1)


def test_colouring_json(group):
    G = group("A5")
    c = enumerate_colourings(load_fixture("trefoil_left").code(), G)[0]
    doc = c.to_json(G)
    assert doc["arcs"][0] == "(1,2,3,4,5)"


def test_longitudes_vectorized_matches_assignments(group):
    import numpy as np
    G = group("A5")
    code = load_fixture("fig8").code()
    cols = enumerate_colourings(code, G)
    arcs = np.array([c.arcs for c in cols])
    assert list(longitudes(code, G, arcs)) == [c.longitude for c in cols]


def test_prime_congruence(group):
    G = group("A5")
    P = polynomial(G, {0: 1, 1: 5})
    assert check_prime_congruence(P) is True
    assert check_prime_congruence(P * P) is True
    assert check_prime_congruence(P + P) is False
    assert check_prime_congruence(P, p=2) is False
    # conjugation by a 6-cycle has order 6, not a prime power
    S = group("<(1,2,3,4,5,6),(1,2)>")
    assert check_prime_congruence(polynomial(S, {0: 1})) is None


def test_order_three_basepoint_choice_within_class(group):
    """Every representative of the order-3 class gives the same polynomial in its own variable."""
    G = group("PSL2_7", "mat:0,1,6,1")
    code = load_fixture("conway").code()
    want = {0: 1, 1: 12}
    for y in G.conjugacy_class()[:6]:
        H = G.with_basepoint(int(y))
        assert colouring_polynomial(code, H) == polynomial(H, want)
