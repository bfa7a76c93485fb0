"""Acceptance criteria 1-12, each an exact ring equality or exact count.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import time

import numpy as np
import pytest

from colpoly.colouring import check_prime_congruence, colouring_polynomial, quandle_colourings
from colpoly.diagram import connected_sum, load_fixture
from colpoly.group_ring import apply_map, augmentation, polynomial
from colpoly.groups import find_obversion
from colpoly.quandle import coboundary, conjugation_quandle, inner_augmentation, section_cocycle
from colpoly.state_sum import closed_lifting_filter, state_sum
from colpoly.verify import (REFERENCE_VALUES, SMALL_GROUPS, fixture_code, group, suite_axioms,
                            suite_cocycle, suite_yb, theorem_checks)

PSL_Z = ("PSL2_7", "mat:1,1,0,1")
PSL_X = ("PSL2_7", "mat:0,1,6,1")
A7 = ("A7", "(1,2,3,4,5,6,7)")


def _P(name, variant, d, b=None):
    return colouring_polynomial(fixture_code(name, variant), group(d, b))


def _expect(pairs):
    """pairs: (label, got, wanted); returns (ok, detail)."""
    bad = [f"{lab}: got {got}, expected {want}" for lab, got, want in pairs if got != want]
    return not bad, "; ".join(bad) or f"{len(pairs)} values equal"


def criterion_1():
    G = group("A5", "(1,2,3,4,5)")
    return _expect([
        ("left trefoil", _P("trefoil_left", "none", "A5", "(1,2,3,4,5)"), polynomial(G, {0: 1, 1: 5})),
        ("right trefoil", _P("trefoil_right", "none", "A5", "(1,2,3,4,5)"), polynomial(G, {0: 1, -1: 5})),
    ])


def criterion_2():
    G = group(*PSL_Z)
    want, want_inv = polynomial(G, {0: 1, 5: 7, 6: 7}), polynomial(G, {0: 1, 1: 7, 2: 7})
    return _expect([(f"{k}^{v}", _P(k, v, *PSL_Z), w)
                    for k in ("kinoshita_terasaka", "conway") for v, w in (("none", want), ("inv", want_inv))])


def criterion_3():
    G = group(*PSL_X)
    table = {("kinoshita_terasaka", "none"): {0: 1, 1: 6}, ("kinoshita_terasaka", "inv"): {0: 1, 2: 6},
             ("conway", "none"): {0: 1, 1: 12}, ("conway", "inv"): {0: 1, 2: 12}}
    return _expect([(f"{k}^{v}", _P(k, v, *PSL_X), polynomial(G, c)) for (k, v), c in table.items()])


def criterion_4():
    G = group(*A7)
    return _expect([(f"{e[0]}^{e[3]}", _P(e[0], e[3], *A7), polynomial(G, e[4]))
                    for e in REFERENCE_VALUES if e[1] == "A7"])


def _m11_rows(names):
    G = group("M11")
    return _expect([(f"{e[0]}^{e[3]}", _P(e[0], e[3], "M11"), polynomial(G, e[4]))
                    for e in REFERENCE_VALUES if e[1] == "M11" and e[0] in names])


def criterion_5():
    return _m11_rows(("kinoshita_terasaka", "conway"))


def criterion_6():
    return _m11_rows(("bretzel_3_5_7",))


def criterion_7():
    ok, detail = _m11_rows(("8_17",))
    P = _P("8_17", "none", "M11")
    inv_ok = _P("8_17", "inv", "M11") == apply_map(P, None, "inv")
    return ok and inv_ok, detail + ("" if inv_ok else "; P(inv) != inv(P)")


def criterion_8():
    G = group("A5", "(1,2,3,4,5)")
    t = load_fixture("trefoil_left").code()
    s = connected_sum(t, t)
    P = colouring_polynomial(s, G)
    want = polynomial(G, {0: 1, 1: 5})
    return _expect([("enumerated sum", P, want * want), ("6 crossings", s.n, 6)])


def criterion_9():
    pairs = []
    for d, b in SMALL_GROUPS[:2]:
        for name in ("trefoil_left", "fig8"):
            for what, (ok, detail) in theorem_checks(group(d, b), name).items():
                pairs.append((f"{what} {name} {d}", ok, True))
    return _expect(pairs)


def _gauge_pairs(samples=20, seed=1):
    rng = np.random.default_rng(seed)
    out = []
    for d, b in SMALL_GROUPS[:2]:
        lam = section_cocycle(group(d, b))
        Q, L = lam.quandle, lam.labels
        for name in ("trefoil_left", "fig8"):
            code = fixture_code(name)
            base = state_sum(code, Q, lam)
            for _ in range(samples):
                mu = rng.integers(0, L.order, Q.size)
                out.append((f"gauge {name} {d}", state_sum(code, Q, lam.times(coboundary(Q, mu, L))), base))
    return out


def criterion_10():
    checks = list(suite_axioms()) + list(suite_cocycle()) + list(suite_yb())
    pairs = [(c.name, c.ok, True) for c in checks]
    pairs += _gauge_pairs()
    return _expect(pairs)


def criterion_11():
    M = group("M11")
    pairs = [("|M11|", M.order, 7920), ("|Lambda|", M.longitude_subgroup().order, 11),
             ("Lambda generated by x", M.longitude_subgroup().generator(), M.basepoint)]
    for e in REFERENCE_VALUES:
        P = _P(e[0], e[3], e[1], e[2])
        pairs.append((f"P = 1 mod p for {e[0]}^{e[3]} over {e[1]}", check_prime_congruence(P), True))
    aff = group("Aff5")
    pairs.append(("Aff5 basepoint is not an involution", aff.basepoint != aff.inv(aff.basepoint), True))
    pairs.append(("Aff5 obversion", find_obversion(aff), None))
    return _expect(pairs)


def criterion_12():
    G = group("A5", "(1,2,3,4,5)")
    Q = conjugation_quandle(G)
    aug = inner_augmentation(Q)
    q = Q.basepoint
    Gx = aug.group.with_basepoint(int(aug.phi[q]))
    pairs = []
    for name in ("trefoil_left", "fig8", "8_17"):
        code = fixture_code(name)
        open_q = quandle_colourings(code, Q, q, closed=False)
        cols = colouring_polynomial(code, Gx)
        pairs.append((f"long colourings {name}", open_q, augmentation(cols)))
        closed_q = quandle_colourings(code, Q, q, closed=True)
        pairs.append((f"closed lifts {name}", len(closed_lifting_filter(code, aug, q)), closed_q))
    return _expect(pairs)


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}
SLOW = {4, 5, 6, 7, 9, 10, 11}


def _record(i):
    from conftest import ACCEPTANCE_LINES
    t0 = time.perf_counter()
    ok, detail = CRITERIA[i]()
    line = f"{'PASS' if ok else 'FAIL'} criterion {i}: {detail} ({time.perf_counter() - t0:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok, detail


@pytest.mark.parametrize("i", [pytest.param(i, marks=pytest.mark.slow) if i in SLOW else i for i in CRITERIA])
def test_criterion(i):
    ok, detail = _record(i)
    assert ok, detail


if __name__ == "__main__":
    import sys
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    results = [_record(i)[0] for i in CRITERIA]
    sys.exit(0 if all(results) else 1)
