import json

import pytest

from colpoly.colouring import colouring_polynomial
from colpoly.diagram import (UNKNOT, BraidWord, WirtingerCode, braid_symmetry, braid_to_long_wirtinger,
                             bretzel_diagram, connected_sum, fixture_dir, list_fixtures, load_fixture,
                             parse_braid_word, parse_fixture, parse_pd, pd_signs, pd_to_long_wirtinger,
                             wirtinger_symmetry)
from colpoly.errors import HypothesisError, ParseError
from colpoly.group_ring import polynomial

TREFOIL_PD = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"


def test_braid_notations_agree():
    a = parse_braid_word("s1 s2^-1 s1 s2^-1")
    assert a == parse_braid_word("aBaB") == parse_braid_word("[1,-2,1,-2]")
    assert parse_braid_word("s1^3").letters == ((1, 1),) * 3


@pytest.mark.parametrize("text,pos", [("s1 s2^", 5), ("[1,0]", 3)])
def test_braid_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_braid_word(text)
    assert err.value.position == pos


@pytest.mark.parametrize("text", ["X[1,2,3]", "X[1,5,2,4] X[3,1,4,6]", "Y[1,2,3,4]"])
def test_pd_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pd(text)


def test_pd_formats_agree():
    a = parse_pd(TREFOIL_PD)
    assert parse_pd("PD[" + TREFOIL_PD.replace(" ", ",") + "]") == a
    assert parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]") == a


def test_two_component_closure_rejected():
    b = parse_braid_word("s1 s1")
    assert b.components() == 2
    with pytest.raises(HypothesisError):
        braid_to_long_wirtinger(b)


def test_trefoil_code():
    code = braid_to_long_wirtinger(parse_braid_word("s1^3"))
    assert code.n == 3 and code.eps == (1, 1, 1)
    assert sorted(code.kappa) == [1, 2, 3]


def test_wirtinger_json_round_trip():
    code = load_fixture("kinoshita_terasaka").code()
    assert WirtingerCode.from_json(json.dumps(code.to_json())) == code
    with pytest.raises(ParseError):
        WirtingerCode.from_json('{"kappa": [1], "eps": [2]}')


@pytest.mark.parametrize("op", ["obv", "rev", "inv"])
def test_symmetries_are_involutions(op):
    code = load_fixture("conway").code()
    assert wirtinger_symmetry(wirtinger_symmetry(code, op), op) == code
    b = load_fixture("fig8").braid()
    assert braid_symmetry(braid_symmetry(b, op), op) == b


def test_inv_is_rev_of_obv():
    code = load_fixture("8_17").code()
    assert wirtinger_symmetry(code, "inv") == wirtinger_symmetry(wirtinger_symmetry(code, "obv"), "rev")


def test_pd_signs_of_trefoil():
    assert len(set(pd_signs(parse_pd(TREFOIL_PD)))) == 1


def test_cut_arc_invariance(group):
    """Cutting the PD diagram at any edge gives the same polynomial."""
    G = group("PSL2_7", "mat:1,1,0,1")
    pd = load_fixture("kinoshita_terasaka").pd()
    values = {colouring_polynomial(pd_to_long_wirtinger(pd, e), G)
              for e in sorted(pd.labels())}
    assert len(values) == 1


def test_cut_arc_invariance_small(group):
    G = group("A5")
    pd = parse_pd(TREFOIL_PD)
    values = [colouring_polynomial(pd_to_long_wirtinger(pd, e), G) for e in range(1, 7)]
    assert all(v == values[0] for v in values)


def test_reverse_of_fig8(group):
    G = group("PSL2_7", "mat:1,1,0,1")
    code = load_fixture("fig8").code()
    assert colouring_polynomial(wirtinger_symmetry(code, "rev"), G) == colouring_polynomial(code, G)


def test_bretzel_111_is_left_trefoil(group):
    G = group("A5")
    assert colouring_polynomial(bretzel_diagram(1, 1, 1), G) == polynomial(G, {0: 1, 1: 5})
    assert colouring_polynomial(bretzel_diagram(-1, -1, -1), G) == polynomial(G, {0: 1, -1: 5})
    with pytest.raises(HypothesisError):
        bretzel_diagram(2, 1, 1)


def test_connected_sum(group):
    G = group("A5")
    left = load_fixture("trefoil_left").code()
    right = wirtinger_symmetry(left, "obv")
    P = colouring_polynomial(connected_sum(left, right), G)
    assert P == colouring_polynomial(left, G) * colouring_polynomial(right, G)
    assert connected_sum(UNKNOT, left) == left


def test_fixtures_listed():
    assert set(list_fixtures()) >= {"unknot", "trefoil_left", "trefoil_right", "fig8",
                                    "kinoshita_terasaka", "conway", "bretzel_3_5_7", "8_17"}
    for name in list_fixtures():
        fx = load_fixture(name)
        assert fx.provenance


def test_fixture_directory_override(tmp_path, monkeypatch, group):
    (tmp_path / "hopf_free.knot").write_text("name: hopf_free\nencoding: braid\ndata: s1^-3\n")
    monkeypatch.setenv("COLPOLY_FIXTURES", str(tmp_path))
    assert fixture_dir() == tmp_path
    assert list_fixtures() == ["hopf_free"]
    G = group("A5")
    assert colouring_polynomial(load_fixture("hopf_free").code(), G) == polynomial(G, {0: 1, 1: 5})
    with pytest.raises(ParseError):
        load_fixture("trefoil_left")


def test_fixture_parse_errors():
    with pytest.raises(ParseError):
        parse_fixture("name: x\nno colon here\n")
    with pytest.raises(ParseError):
        parse_fixture("data: s1\n")


def test_braid_word_text_round_trip():
    b = BraidWord(3, ((1, 1), (2, -1)))
    assert parse_braid_word(b.to_text(), 3) == b
