"""Cocycle state sums, lifting of colourings, and the two comparisons
between state sums and colouring polynomials."""
from __future__ import annotations

import numpy as np

from .colouring import (DEFAULT_NODE_CAP, ColouringAssignment, ColourTables, colouring_polynomial,
                        enumerate_colourings, solve)
from .diagram import WirtingerCode
from .errors import HypothesisError, VerificationFailure
from .group_ring import RingElement
from .groups import PointedGroup, closure
from .quandle import (Augmentation, Cocycle2, FiniteQuandle, LabelGroup, cocycle_from_section,
                      conjugation_quandle, covering_quandle, inner_group, is_connected)


def colouring_weights(code: WirtingerCode, cocycle: Cocycle2, rows: np.ndarray) -> np.ndarray:
    """Total weight (local label index) of each quandle colouring row.

    A positive crossing with incoming colour a under b contributes
    lambda(a, b); a negative one contributes lambda(a, b)^-1 where a is the
    outgoing colour (the one that satisfies a*b = incoming).
    """
    L = cocycle.labels
    lam = cocycle.table
    acc = np.zeros(len(rows), dtype=np.int64)
    for i in range(1, code.n + 1):
        k, e = code.kappa[i - 1], code.eps[i - 1]
        if e == 1:
            w = lam[rows[:, i - 1], rows[:, k]]
        else:
            w = L.inv[lam[rows[:, i], rows[:, k]]]
        acc = L.mul[acc, w]
    return acc


def _tables(Q: FiniteQuandle):
    return ColourTables(Q.star, Q.bar)


def state_sum(code: WirtingerCode, Q: FiniteQuandle, cocycle: Cocycle2, full: bool = False,
              workers: int = 1, node_cap: int = DEFAULT_NODE_CAP) -> RingElement:
    """Sum of total weights over all closed Q-colourings of the diagram.

    For connected Q the based sum at one colour is multiplied by |Q|
    (every colouring is conjugate to one with the chosen colour on arc 0);
    ``full=True`` enumerates every colour of arc 0 instead.
    """
    L = cocycle.labels
    if full or not is_connected(Q):
        counts = np.zeros(L.order, dtype=np.int64)
        for q in range(Q.size):
            rows = solve(code, _tables(Q), {0: q}, True, workers, node_cap)
            counts += np.bincount(colouring_weights(code, cocycle, rows), minlength=L.order)
        return L.ring_element(counts)
    q = Q.basepoint if Q.basepoint is not None else 0
    rows = solve(code, _tables(Q), {0: q}, True, workers, node_cap)
    counts = np.bincount(colouring_weights(code, cocycle, rows), minlength=L.order)
    return L.ring_element(counts * Q.size)


def based_state_sums(code: WirtingerCode, Q: FiniteQuandle, cocycle: Cocycle2):
    """Per-basepoint weighted sums (equal to one another for connected Q)."""
    L = cocycle.labels
    out = []
    for q in range(Q.size):
        rows = solve(code, _tables(Q), {0: q}, True)
        out.append(L.ring_element(np.bincount(colouring_weights(code, cocycle, rows), minlength=L.order)))
    return out


def lift_colouring(code: WirtingerCode, colouring: ColouringAssignment, aug: Augmentation, q: int):
    """Quandle colouring starting at q that lies over the group colouring.

    Each arc is obtained from the previous one by acting with the over-arc's
    group colour (or its inverse at negative crossings); the last arc ends at
    q acted on by the longitude.
    """
    G = aug.group
    if int(aug.phi[q]) != int(colouring.arcs[0]):
        raise HypothesisError("the lift must start over the colour of arc 0")
    lift = [int(q)]
    for i in range(1, code.n + 1):
        k, e = code.kappa[i - 1], code.eps[i - 1]
        g = colouring.arcs[k] if e == 1 else G.inv(colouring.arcs[k])
        lift.append(int(aug.act(np.array([lift[-1]]), np.array([g]))[0]))
    end = int(aug.act(np.array([q]), np.array([colouring.longitude]))[0])
    if lift[-1] != end:
        raise VerificationFailure("lift does not end at q moved by the longitude")
    if any(int(aug.phi[a]) != int(f) for a, f in zip(lift, colouring.arcs)):
        raise VerificationFailure("lift does not project to the group colouring")
    return lift


def closed_lifting_filter(code: WirtingerCode, aug: Augmentation, q: int, colourings=None):
    """Group colourings whose longitude fixes q, i.e. whose lift closes up."""
    G = aug.group.with_basepoint(int(aug.phi[q]))
    if colourings is None:
        colourings = enumerate_colourings(code, G)
    longs = np.array([c.longitude for c in colourings], dtype=np.int64)
    if len(longs) == 0:
        return []
    keep = aug.act(np.full(len(longs), q), longs) == q
    return [c for c, k in zip(colourings, keep) if k]


def crosscheck_cp_equals_ss(G: PointedGroup, code: WirtingerCode, details: bool = False):
    """State sum with the section cocycle against |Q| times the polynomial."""
    if not G.longitude_subgroup().is_abelian():
        raise HypothesisError("the longitude group is not abelian")
    Q = conjugation_quandle(G)
    lam = cocycle_from_section(covering_quandle(G))
    ss = state_sum(code, Q, lam)
    poly = colouring_polynomial(code, G) * Q.size
    return (ss == poly, ss, poly) if details else ss == poly


class Extension(FiniteQuandle):
    """Lambda x Q with (m, a)*(n, b) = (m lambda(a,b), a*b); index = m*|Q| + a."""

    def __init__(self, cocycle: Cocycle2):
        Q, L = cocycle.quandle, cocycle.labels
        m, k = Q.size, L.order
        lab = np.repeat(np.arange(k), m)
        base = np.tile(np.arange(m), k)
        star_q, bar_q = Q.star.astype(np.int64), Q.bar.astype(np.int64)
        new_lab = L.mul[lab[:, None], cocycle.table[base[:, None], base[None, :]]]
        star = new_lab * m + star_q[base[:, None], base[None, :]]
        bq = bar_q[base[:, None], base[None, :]]
        bar_lab = L.mul[lab[:, None], L.inv[cocycle.table[bq, base[None, :]]]]
        bar = bar_lab * m + bq
        q = Q.basepoint if Q.basepoint is not None else 0
        super().__init__(star, bar, q, None, f"ext({Q.name})")
        self.cocycle = cocycle
        self.base_size = m

    def split(self, p):
        return divmod(int(p), self.base_size)


def specialize_ss_to_cp(Q: FiniteQuandle, cocycle: Cocycle2, code: WirtingerCode, details: bool = False):
    """Recover the state sum from a colouring polynomial.

    G is the inner group of the extension Lambda x_lambda Q, pointed at the
    translation by (1, q); phi sends g to l when g moves (1, q) to (l, q)
    and to 0 otherwise.  Returns phi(P) * |Q|, checked against the state sum.
    """
    if not is_connected(Q):
        raise HypothesisError("specialization needs a connected quandle")
    L = cocycle.labels
    if not L.is_abelian():
        raise HypothesisError("the label group is not abelian")
    ext = Extension(cocycle)
    G = inner_group(ext)
    q = ext.basepoint  # (identity label, q)
    poly = colouring_polynomial(code, G)
    counts = np.zeros(L.order, dtype=np.int64)
    for g, c in poly.terms.items():
        lab, a = ext.split(G.perms[g][q])
        if a == q:
            counts[lab] += c
    value = L.ring_element(counts * Q.size)
    direct = state_sum(code, Q, cocycle)
    if value != direct:
        raise VerificationFailure(f"specialization {value} differs from the state sum {direct}")
    return (value, G, poly) if details else value
