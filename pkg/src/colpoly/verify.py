"""Self-check suites run by ``colpoly verify`` and by the test-suite.

Each suite yields ``Check`` records; nothing here raises on a failed
identity, so a run always reports every result.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .colouring import check_prime_congruence, colouring_polynomial
from .diagram import braid_to_long_wirtinger, load_fixture, wirtinger_symmetry
from .errors import ColpolyError
from .group_ring import polynomial
from .groups import build_named_group, find_obversion
from .quandle import (coboundary, cocycle_from_section, conjugation_quandle, covering_quandle,
                      inner_augmentation, is_cohomologous, section_difference, verify_quandle_axioms)
from .state_sum import specialize_ss_to_cp, state_sum
from .yang_baxter import (build_yb_operator, closed_trace, covering_operator, long_partial_trace,
                          markov_spot_check)

SUITES = ("axioms", "cocycle", "yb", "theorems", "golden")

# (fixture, group, basepoint, variant, {exponent of the basepoint: coefficient})
REFERENCE_VALUES = [
    ("trefoil_left", "A5", "(1,2,3,4,5)", "none", {0: 1, 1: 5}),
    ("trefoil_right", "A5", "(1,2,3,4,5)", "none", {0: 1, -1: 5}),
    ("kinoshita_terasaka", "PSL2_7", "mat:1,1,0,1", "none", {0: 1, 5: 7, 6: 7}),
    ("kinoshita_terasaka", "PSL2_7", "mat:1,1,0,1", "inv", {0: 1, 1: 7, 2: 7}),
    ("conway", "PSL2_7", "mat:1,1,0,1", "none", {0: 1, 5: 7, 6: 7}),
    ("conway", "PSL2_7", "mat:1,1,0,1", "inv", {0: 1, 1: 7, 2: 7}),
    ("kinoshita_terasaka", "PSL2_7", "mat:0,1,6,1", "none", {0: 1, 1: 6}),
    ("kinoshita_terasaka", "PSL2_7", "mat:0,1,6,1", "inv", {0: 1, 2: 6}),
    ("conway", "PSL2_7", "mat:0,1,6,1", "none", {0: 1, 1: 12}),
    ("conway", "PSL2_7", "mat:0,1,6,1", "inv", {0: 1, 2: 12}),
    ("kinoshita_terasaka", "A7", "(1,2,3,4,5,6,7)", "none", {0: 1, 2: 7, 5: 28, 6: 28}),
    ("kinoshita_terasaka", "A7", "(1,2,3,4,5,6,7)", "inv", {0: 1, 1: 28, 2: 28, 5: 7}),
    ("conway", "A7", "(1,2,3,4,5,6,7)", "none", {0: 1, 2: 7, 3: 7, 5: 21, 6: 14}),
    ("conway", "A7", "(1,2,3,4,5,6,7)", "inv", {0: 1, 1: 14, 2: 21, 4: 7, 5: 7}),
    ("kinoshita_terasaka", "M11", None, "none", {0: 1, 3: 11, 7: 11}),
    ("kinoshita_terasaka", "M11", None, "inv", {0: 1, 4: 11, 8: 11}),
    ("kinoshita_terasaka", "M11", None, "obv", {0: 1, 4: 11, 8: 22}),
    ("kinoshita_terasaka", "M11", None, "rev", {0: 1, 3: 22, 7: 11}),
    ("conway", "M11", None, "none", {0: 1, 3: 11, 7: 11}),
    ("conway", "M11", None, "inv", {0: 1, 4: 11, 8: 11}),
    ("conway", "M11", None, "obv", {0: 1, 4: 11, 6: 11, 8: 11}),
    ("conway", "M11", None, "rev", {0: 1, 3: 11, 5: 11, 7: 11}),
    ("bretzel_3_5_7", "M11", None, "none", {0: 1, 1: 11}),
    ("bretzel_3_5_7", "M11", None, "obv", {0: 1, 7: 11}),
    ("bretzel_3_5_7", "M11", None, "inv", {0: 1, 10: 11}),
    ("bretzel_3_5_7", "M11", None, "rev", {0: 1, 4: 11}),
    ("8_17", "M11", None, "none", {0: 1, 5: 11, 6: 11}),
    ("8_17", "M11", None, "rev", {0: 1}),
]


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'} [{self.suite}] {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self):
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def _run(suite, name, fn):
    t0 = time.perf_counter()
    try:
        out = fn()
        ok, detail = (out if isinstance(out, tuple) else (bool(out), ""))
    except ColpolyError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(suite, name, bool(ok), str(detail), time.perf_counter() - t0)


_GROUP_CACHE = {}


def group(descriptor, basepoint=None):
    key = (descriptor, basepoint)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = build_named_group(descriptor, basepoint)
    return _GROUP_CACHE[key]


SMALL_GROUPS = [("A5", "(1,2,3,4,5)"), ("PSL2_7", "mat:1,1,0,1"), ("PSL2_7", "mat:0,1,6,1")]


def fixture_code(name, variant="none"):
    return wirtinger_symmetry(load_fixture(name).code(), variant)


def reference_polynomial(G, coeffs):
    return polynomial(G, coeffs)


# -- suites ---------------------------------------------------------------------

def suite_axioms():
    for d, b in SMALL_GROUPS + [("A7", "(1,2,3,4,5,6,7)"), ("M11", None)]:
        G = group(d, b)
        Q = conjugation_quandle(G)
        yield _run("axioms", f"conjugation quandle {d} {b or ''}".strip(),
                   lambda Q=Q: (bool(r := verify_quandle_axioms(Q)), str(r)))
        if G.order <= 2000:
            yield _run("axioms", f"inner augmentation {d} {b or ''}".strip(),
                       lambda Q=Q: inner_augmentation(Q).verify())
            cov = covering_quandle(G)
            yield _run("axioms", f"covering quandle {d} {b or ''}".strip(),
                       lambda cov=cov: (bool(r := verify_quandle_axioms(cov)), str(r)))
            yield _run("axioms", f"covering (E1)/(E2) {d} {b or ''}".strip(), cov.verify_covering)


def suite_cocycle(samples: int = 100, seed: int = 0):
    rng = np.random.default_rng(seed)
    for d, b in SMALL_GROUPS:
        G = group(d, b)
        cov = covering_quandle(G)
        lam = cocycle_from_section(cov)
        Q, L = lam.quandle, lam.labels
        yield _run("cocycle", f"section cocycle {d} {b}", lambda lam=lam: lam.is_cocycle())

        def complex_property(Q=Q, L=L):
            for _ in range(samples):
                mu = rng.integers(0, L.order, Q.size)
                if not coboundary(Q, mu, L).is_cocycle():
                    return False, "delta^2 delta^1 mu is not zero"
            return True, f"{samples} random cochains"
        yield _run("cocycle", f"delta^2 delta^1 = 0 {d} {b}", complex_property)

        def other_section(cov=cov, lam=lam):
            # lexicographically largest representative in every fibre
            sec2 = np.array(cov.section)
            order = G.lexicographic_order(cov.elements)[::-1]
            seen = set()
            for g in order:
                p = int(cov.element_position[g])
                f = int(cov.projection[p])
                if f not in seen:
                    seen.add(f)
                    sec2[f] = p
            lam2 = cocycle_from_section(cov, sec2)
            mu = section_difference(cov, cov.section, sec2)
            return (lam2 == lam.times(coboundary(lam.quandle, mu, lam.labels))
                    and is_cohomologous(lam, lam2)), "sections differ by a coboundary"
        yield _run("cocycle", f"section independence {d} {b}", other_section)


def suite_yb(trials: int = 10):
    for d, b in SMALL_GROUPS[:2]:
        G = group(d, b)
        for deformed in (False, True):
            op = build_yb_operator(G, deformed)
            tag = f"{'deformed' if deformed else 'plain'} {d}"
            yield _run("yb", f"Yang-Baxter equation {tag}", op.check_yang_baxter)
            yield _run("yb", f"far commutation {tag}", op.check_far_commutation)
            yield _run("yb", f"invertibility {tag}", op.check_invertible)
            yield _run("yb", f"trace condition {tag}", op.check_trace_condition)
        op = build_yb_operator(G)
        for name in ("trefoil_left", "fig8"):
            braid = load_fixture(name).braid()
            yield _run("yb", f"Markov moves {name} {d}",
                       lambda braid=braid, op=op: (bool(r := markov_spot_check(braid, op, trials)), str(r.base)))


def theorem_checks(G, name):
    """Closed state sum, closed trace, long trace and specialization against P."""
    fx = load_fixture(name)
    braid = fx.braid()
    code = braid_to_long_wirtinger(braid) if braid is not None else fx.code()
    P = colouring_polynomial(code, G)
    Q = conjugation_quandle(G)
    lam = cocycle_from_section(covering_quandle(G))
    out = {}
    ss = state_sum(code, Q, lam)
    out["state sum = P|Q|"] = (ss == P * Q.size, f"{ss}")
    if braid is not None:
        op = build_yb_operator(G)
        ct = closed_trace(braid, op)
        out["closed trace = P|Q|"] = (ct == P * Q.size, f"{ct}")
        cop, cov = covering_operator(G)
        lt = long_partial_trace(braid, cop, cov)
        out["long partial trace = P"] = (lt == P, f"{lt}")
    special = specialize_ss_to_cp(Q, lam, code)
    out["specialization = state sum"] = (special == ss, f"{special}")
    return out


def suite_theorems():
    for d, b in SMALL_GROUPS[:2]:
        G = group(d, b)
        for name in ("trefoil_left", "fig8"):
            t0 = time.perf_counter()
            try:
                results = theorem_checks(G, name)
            except ColpolyError as exc:
                yield Check("theorems", f"{name} {d}", False, f"{type(exc).__name__}: {exc}")
                continue
            dt = (time.perf_counter() - t0) / max(1, len(results))
            for what, (ok, detail) in results.items():
                yield Check("theorems", f"{what} {name} {d}", bool(ok), detail, dt)


def golden_check(entry):
    name, d, b, variant, coeffs = entry
    G = group(d, b)
    P = colouring_polynomial(fixture_code(name, variant), G)
    want = reference_polynomial(G, coeffs)
    cong = check_prime_congruence(P, G)
    ok = P == want and cong is not False
    return ok, f"got {P}, expected {want}"


def suite_golden():
    for entry in REFERENCE_VALUES:
        name, d, b, variant, _ = entry
        yield _run("golden", f"{name}{'' if variant == 'none' else '^' + variant} over {d} {b or ''}".strip(),
                   lambda e=entry: golden_check(e))
    yield _run("golden", "M11 order and longitude group",
               lambda: (group("M11").order == 7920 and group("M11").longitude_subgroup().order == 11
                        and group("M11").longitude_subgroup().generator() == group("M11").basepoint,
                        "|M11| = 7920, Lambda = <x> of order 11"))

    def no_obversion():
        G = group("Aff5")
        x = G.basepoint
        return (x != G.inv(x) and find_obversion(G) is None,
                f"basepoint {G.format_element(x)}")
    yield _run("golden", "Aff5 has no obversion", no_obversion)


def run_suite(name):
    fns = {"axioms": suite_axioms, "cocycle": suite_cocycle, "yb": suite_yb,
           "theorems": suite_theorems, "golden": suite_golden}
    if name == "all":
        for s in SUITES:
            yield from fns[s]()
    elif name in fns:
        yield from fns[name]()
    else:
        raise ValueError(f"unknown suite {name!r}")
