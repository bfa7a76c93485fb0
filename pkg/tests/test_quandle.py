import numpy as np
import pytest

from colpoly.errors import ParseError, SearchLimitExceeded
from colpoly.quandle import (Cocycle2, FiniteQuandle, coboundary, cocycle_from_csv, cocycle_from_section,
                             cocycle_to_csv, conjugation_augmentation, conjugation_quandle, covering_quandle,
                             inner_augmentation, inner_group, is_cohomologous, is_connected, quandle_from_csv,
                             quandle_to_csv, section_cocycle, verify_quandle_axioms)


def dihedral_quandle(n):
    a = np.arange(n)
    return FiniteQuandle((2 * a[None, :] - a[:, None]) % n, name=f"R{n}")


def test_dihedral_quandle_axioms():
    assert verify_quandle_axioms(dihedral_quandle(5))
    assert is_connected(dihedral_quandle(5))
    assert not is_connected(dihedral_quandle(4))


def test_idempotency_violation_is_reported():
    star = np.array([[1, 0], [0, 1]])
    report = verify_quandle_axioms(FiniteQuandle(star))
    assert not report and report.violation.startswith("(Q1)")


def test_right_invertibility_violation():
    star = np.array([[0, 0, 0], [0, 1, 1], [2, 2, 2]])
    report = verify_quandle_axioms(FiniteQuandle(star))
    assert not report and "(Q2)" in report.violation


def test_disjoint_trivial_quandles_not_connected():
    trivial = np.tile(np.arange(4)[:, None], (1, 4))
    Q = FiniteQuandle(trivial)
    assert verify_quandle_axioms(Q)
    assert not is_connected(Q)


def test_conjugation_quandle(group):
    G = group("A5")
    Q = conjugation_quandle(G)
    assert Q.size == 12 and is_connected(Q)
    assert verify_quandle_axioms(Q)
    assert inner_group(Q).order == 60


def test_augmentations(group):
    Q = conjugation_quandle(group("PSL2_7", "mat:1,1,0,1"))
    assert inner_augmentation(Q).verify()
    assert conjugation_augmentation(Q).verify()


@pytest.mark.parametrize("d,b", [("A5", None), ("PSL2_7", "mat:1,1,0,1"), ("PSL2_7", "mat:0,1,6,1")])
def test_covering_quandle(group, d, b):
    G = group(d, b)
    cov = covering_quandle(G)
    assert verify_quandle_axioms(cov)
    assert cov.verify_covering()
    lam_order = G.longitude_subgroup().order
    assert cov.size == conjugation_quandle(G).size * lam_order


def test_covering_too_large(group):
    with pytest.raises(SearchLimitExceeded):
        covering_quandle(group("M11"))


@pytest.mark.parametrize("d,b", [("A5", None), ("PSL2_7", "mat:1,1,0,1"), ("PSL2_7", "mat:0,1,6,1")])
def test_section_cocycle(group, d, b):
    G = group(d, b)
    lam = cocycle_from_section(covering_quandle(G))
    assert lam.is_normalized() and lam.is_cocycle()
    assert section_cocycle(G) == lam


def test_section_cocycle_without_covering_table(group):
    lam = section_cocycle(group("M11"))
    assert lam.quandle.size == 720 and lam.labels.order == 11
    assert lam.is_normalized()


def test_cohomology(group):
    lam = section_cocycle(group("A5"))
    Q, L = lam.quandle, lam.labels
    rng = np.random.default_rng(3)
    mu = rng.integers(0, L.order, Q.size)
    other = lam.times(coboundary(Q, mu, L))
    assert other != lam
    assert is_cohomologous(lam, other)
    assert not is_cohomologous(lam, Cocycle2.trivial(Q, L))


def test_quandle_csv_round_trip():
    Q = dihedral_quandle(7)
    back = quandle_from_csv(quandle_to_csv(Q))
    assert np.array_equal(back.star, Q.star)
    with pytest.raises(ParseError):
        quandle_from_csv("0,1\n1\n")
    with pytest.raises(ParseError):
        quandle_from_csv("0,a\n1,1\n")


def test_cocycle_csv_round_trip(group):
    lam = section_cocycle(group("PSL2_7", "mat:1,1,0,1"))
    assert cocycle_from_csv(cocycle_to_csv(lam), lam.quandle, lam.labels) == lam
    with pytest.raises(ParseError):
        cocycle_from_csv("(1,2)\n", lam.quandle, lam.labels)
