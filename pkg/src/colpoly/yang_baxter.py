"""Yang-Baxter operators from quandles and traces of braid representations.

Operators are never stored as matrices.  A braid acts on tuples of basis
indices; each crossing swaps two neighbours as (a, b) -> (b, a*b) and
multiplies a label in the coefficient group.  Traces are sums over tuples
that come back to themselves up to a label.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .diagram import BraidWord, braid_symmetry
from .errors import HypothesisError, SearchLimitExceeded, VerificationFailure
from .group_ring import RingElement
from .groups import PointedGroup
from .quandle import (CoveringQuandle, FiniteQuandle, LabelGroup, cocycle_from_section,
                      conjugation_quandle, covering_quandle)

TUPLE_LIMIT = 10**8
CHUNK = 2**20


class YBOperator:
    """c(a, b) = (b, a*b) with label ``labels[a, b]`` (local label indices).

    Without a label table every label is the identity (the plain operator).
    """

    def __init__(self, quandle: FiniteQuandle, label_group: LabelGroup, labels=None, name="c"):
        self.quandle = quandle
        self.label_group = label_group
        m = quandle.size
        self.labels = np.zeros((m, m), dtype=np.int64) if labels is None else np.asarray(labels, dtype=np.int64)
        self.star = quandle.star.astype(np.int64)
        self.bar = quandle.bar.astype(np.int64)
        self.name = name

    @property
    def basis_size(self):
        return self.quandle.size

    def apply(self, u, v, sign):
        """Act on coordinate arrays (u, v) at one crossing; returns (u', v', label)."""
        L = self.label_group
        if sign == 1:
            return v, self.star[u, v], self.labels[u, v]
        w = self.bar[v, u]  # c^-1(u, v) = (v/u, u), label lambda(v/u, u)^-1
        return w, u, L.inv[self.labels[w, u]]

    # -- checks --------------------------------------------------------------
    def _word_on(self, tuples, letters):
        rep = MonomialBraidRep(BraidWord(tuples.shape[1], letters), self)
        return rep.evaluate(tuples)

    def all_tuples(self, n):
        m = self.basis_size
        if m ** n > TUPLE_LIMIT:
            raise SearchLimitExceeded(f"{m}^{n} basis tuples exceed the limit")
        return np.stack(np.meshgrid(*[np.arange(m)] * n, indexing="ij"), -1).reshape(-1, n)

    def check_yang_baxter(self):
        t = self.all_tuples(3)
        left = self._word_on(t, [(1, 1), (2, 1), (1, 1)])
        right = self._word_on(t, [(2, 1), (1, 1), (2, 1)])
        return bool(np.array_equal(left[0], right[0]) and np.array_equal(left[1], right[1]))

    def check_far_commutation(self):
        t = self.all_tuples(4)
        left = self._word_on(t, [(1, 1), (3, 1)])
        right = self._word_on(t, [(3, 1), (1, 1)])
        return bool(np.array_equal(left[0], right[0]) and np.array_equal(left[1], right[1]))

    def check_invertible(self):
        t = self.all_tuples(2)
        back = self._word_on(t, [(1, -1), (1, 1)])
        return bool(np.array_equal(back[0], t) and np.all(back[1] == 0))

    def partial_trace(self, sign):
        """tr_2 of c^sign as {(i, k): label counts}: sum over j of entries
        ((i, j) -> (k, j))."""
        m = self.basis_size
        t = self.all_tuples(2)
        u, v, lab = self.apply(t[:, 0], t[:, 1], sign)
        keep = v == t[:, 1]
        out = {}
        for i, k, l in zip(t[keep, 0].tolist(), u[keep].tolist(), lab[keep].tolist()):
            out.setdefault((i, k), {}).setdefault(l, 0)
            out[(i, k)][l] += 1
        return out

    def check_trace_condition(self):
        m = self.basis_size
        for sign in (1, -1):
            tr = self.partial_trace(sign)
            want = {(i, i): {0: 1} for i in range(m)}
            if tr != want:
                return False
        return True


def build_yb_operator(G: PointedGroup, deformed: bool = True) -> YBOperator:
    """Operator on the conjugation class of the basepoint.

    The deformed version carries the section cocycle as labels.
    """
    Q = conjugation_quandle(G)
    if deformed:
        lam = cocycle_from_section(covering_quandle(G))
        return YBOperator(Q, lam.labels, lam.table, name=f"deformed({G.name})")
    labels = LabelGroup.from_subgroup(G.longitude_subgroup())
    return YBOperator(Q, labels, None, name=f"plain({G.name})")


def covering_operator(G: PointedGroup) -> tuple[YBOperator, CoveringQuandle]:
    """Plain operator on the covering quandle (for long-knot partial traces)."""
    cov = covering_quandle(G)
    return YBOperator(cov, cov.deck_group, None, name=f"cover({G.name})"), cov


@dataclass
class MonomialBraidRep:
    braid: BraidWord
    op: YBOperator

    def evaluate(self, tuples):
        """Images of basis tuples and their labels; the rightmost letter acts first."""
        t = np.array(tuples, dtype=np.int64, copy=True)
        L = self.op.label_group
        lab = np.zeros(len(t), dtype=np.int64)
        for i, s in reversed(self.braid.letters):
            u, v, l = self.op.apply(t[:, i - 1].copy(), t[:, i].copy(), s)
            t[:, i - 1], t[:, i] = u, v
            lab = L.mul[lab, l]
        return t, lab

    def is_bijective(self):
        t = self.op.all_tuples(self.braid.strands)
        img, _ = self.evaluate(t)
        return len(np.unique(img, axis=0)) == len(t)


def _tuple_blocks(m, n, first=None):
    """All tuples of length n in blocks (optionally with a fixed first entry)."""
    if m ** n > TUPLE_LIMIT:
        raise SearchLimitExceeded(f"{m}^{n} basis tuples exceed the limit")
    firsts = range(m) if first is None else [first]
    rest = n - 1
    for f in firsts:
        if rest == 0:
            yield np.array([[f]], dtype=np.int64)
            continue
        tail = np.arange(m ** rest, dtype=np.int64)
        for lo in range(0, len(tail), CHUNK):
            idx = tail[lo:lo + CHUNK]
            cols = [np.full(len(idx), f, dtype=np.int64)]
            for p in range(rest - 1, -1, -1):
                cols.append((idx // m ** p) % m)
            yield np.stack(cols, 1)


def closed_trace(b: BraidWord, op: YBOperator) -> RingElement:
    """Sum of labels over basis tuples fixed by the braid's tuple map."""
    if not b.is_knot():
        raise HypothesisError(f"closure of {b} has {b.components()} components")
    L = op.label_group
    rep = MonomialBraidRep(b, op)
    counts = np.zeros(L.order, dtype=np.int64)
    for block in _tuple_blocks(op.basis_size, b.strands):
        img, lab = rep.evaluate(block)
        fixed = np.all(img == block, axis=1)
        counts += np.bincount(lab[fixed], minlength=L.order)
    return L.ring_element(counts)


def long_partial_trace(b: BraidWord, op: YBOperator, cov: CoveringQuandle) -> RingElement:
    """Contract strands 2..n of the plain covering-quandle operator.

    For each basis vector p of the first factor, the tuples (p, p2, ...)
    mapped to (p', p2, ...) contribute the deck label taking p to p'.  The
    result must be the same for every p; it is returned as a ring element.
    """
    if not b.is_knot():
        raise HypothesisError(f"closure of {b} has {b.components()} components")
    L = cov.deck_group
    rep = MonomialBraidRep(b, op)
    result = None
    for p in range(op.basis_size):
        counts = np.zeros(L.order, dtype=np.int64)
        for block in _tuple_blocks(op.basis_size, b.strands, first=p):
            img, _ = rep.evaluate(block)
            keep = np.all(img[:, 1:] == block[:, 1:], axis=1)
            for p2 in img[keep, 0].tolist():
                if cov.projection[p2] != cov.projection[p]:
                    raise VerificationFailure("partial trace leaves the fibre")
                counts[cov.deck_label(p, p2)] += 1
        if result is None:
            result = counts
        elif not np.array_equal(result, counts):
            raise VerificationFailure("partial trace is not the same on every basis vector")
    return L.ring_element(result)


@dataclass
class MarkovReport:
    base: RingElement
    trials: list = field(default_factory=list)  # (description, value, agrees)

    @property
    def ok(self):
        return all(t[2] for t in self.trials)

    def __bool__(self):
        return self.ok

    def __str__(self):
        lines = [f"base trace {self.base}"]
        lines += [f"{'ok  ' if a else 'FAIL'} {d}: {v}" for d, v, a in self.trials]
        return "\n".join(lines)


def stabilize(b: BraidWord, sign: int) -> BraidWord:
    return BraidWord(b.strands + 1, b.letters + ((b.strands, sign),))


def conjugate(b: BraidWord, alpha: BraidWord) -> BraidWord:
    inv = braid_symmetry(alpha, "inv")
    n = max(b.strands, alpha.strands)
    return BraidWord(n, inv.letters + b.letters + alpha.letters)


def markov_spot_check(b: BraidWord, op: YBOperator, trials: int = 10, seed: int = 0) -> MarkovReport:
    """Closed traces under both stabilizations and random conjugations."""
    rng = random.Random(seed)
    base = closed_trace(b, op)
    report = MarkovReport(base)
    for sign in (1, -1):
        v = closed_trace(stabilize(b, sign), op)
        report.trials.append((f"stabilization {'+' if sign == 1 else '-'}", v, v == base))
    if b.strands < 2:
        return report
    for _ in range(trials):
        length = rng.randint(1, 3)
        alpha = BraidWord(b.strands, tuple((rng.randint(1, b.strands - 1), rng.choice((1, -1)))
                                           for _ in range(length)))
        v = closed_trace(conjugate(b, alpha), op)
        report.trials.append((f"conjugation by {alpha}", v, v == base))
    return report
