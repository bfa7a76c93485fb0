import numpy as np
import pytest

from colpoly.errors import HypothesisError, ParseError
from colpoly.groups import Perm, build_named_group, colouring_core, find_obversion, parse_cycles


def test_right_action_product():
    a, b = Perm.from_cycles("(1,2,3)"), Perm.from_cycles("(1,2)")
    # apply a first, then b
    assert a * b == Perm.from_cycles("(2,3)")
    assert Perm.from_cycles("(1,2)") == Perm.from_cycles("(1,2)", 5)


def test_parse_cycles_rejects_garbage():
    assert parse_cycles("(1,2)(3,4,5)") == [(1, 2), (3, 4, 5)]
    with pytest.raises(ParseError):
        parse_cycles("(1,2")


@pytest.mark.parametrize("desc,order", [("A5", 60), ("PSL2_7", 168), ("A7", 2520), ("S7", 5040),
                                        ("M11", 7920), ("Aff5", 20), ("D6", 6), ("C3", 3)])
def test_named_group_orders(group, desc, order):
    assert group(desc).order == order


def test_conjugation_is_right_action(group):
    G = group("A5")
    a, g = G.parse_element("(1,2,3,4,5)"), G.parse_element("(1,2)(3,4)")
    assert G.conj(a, g) == G.mul(G.mul(G.inv(g), a), g)


def test_longitude_subgroup_of_A5(group):
    G = group("A5", "(1,2,3,4,5)")
    lam = G.longitude_subgroup()
    assert lam.order == 5 and lam.generator() == G.basepoint


def test_basepoint_by_order_prefers_family_default(group):
    M = build_named_group("M11", "order:11")
    assert M.basepoint == group("M11").basepoint
    with pytest.raises(HypothesisError):
        build_named_group("A5", "order:7")


def test_unknown_descriptor():
    with pytest.raises(ParseError):
        build_named_group("Foo")


def test_generators_descriptor():
    G = build_named_group("<(1,2,3),(1,2)>")
    assert G.order == 6


def test_obversion_of_A7_is_valid(group):
    obv, rev = find_obversion(group("A7", "(1,2,3,4,5,6,7)"))
    G = obv.source
    assert obv.is_valid() and obv.is_bijective()
    assert obv(G.basepoint) == G.inv(G.basepoint)
    assert rev.kind == "anti-homomorphism" and rev.is_valid()


def test_affine_five_has_no_obversion(group):
    G = group("Aff5")
    assert G.basepoint != G.inv(G.basepoint)
    assert find_obversion(G) is None


def test_colouring_group_condition(group):
    assert group("C3").is_colouring_group()
    G = build_named_group("<(1,2,3),(1,2)>", "(1,2,3)")
    assert not G.is_colouring_group()
    assert colouring_core(G).order == 3


def test_psl_basepoints(group):
    z = group("PSL2_7", "mat:1,1,0,1")
    x = group("PSL2_7", "mat:0,1,6,1")
    assert z.element_order(z.basepoint) == 7
    assert x.element_order(x.basepoint) == 3
    assert np.all(np.sort(z.perms, axis=1) == np.arange(z.degree))
