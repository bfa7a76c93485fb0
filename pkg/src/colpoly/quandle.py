"""Finite quandles, covering quandles and quandle 2-cocycles."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import HypothesisError, ParseError, SearchLimitExceeded, VerificationFailure
from .groups import PointedGroup, Subgroup, closure

COVERING_SIZE_LIMIT = 4000


class FiniteQuandle:
    """Quandle on 0..m-1 given by its operation table ``star[a, b] = a*b``.

    ``bar`` (the inverse operation, ``(a*b)/b = a``) is derived when omitted.
    ``labels`` optionally records what each element stands for, e.g. group
    element indices for a conjugation quandle.
    """

    def __init__(self, star, bar=None, basepoint: int | None = None, labels=None, name: str = "Q"):
        star = np.asarray(star)
        if star.ndim != 2 or star.shape[0] != star.shape[1]:
            raise ParseError("quandle table must be square")
        m = star.shape[0]
        dtype = np.int16 if m < 2**15 else np.int32
        self.star = star.astype(dtype)
        if bar is None:
            bar = np.full((m, m), -1, dtype=dtype)
            cols = np.arange(m)
            for b in range(m):
                col = self.star[:, b]
                if len(np.unique(col)) != m:
                    # not right-invertible; leave a table that fails the axiom check
                    bar[:, b] = 0
                    continue
                bar[col, b] = cols
        self.bar = np.asarray(bar).astype(dtype)
        self.basepoint = basepoint
        self.labels = labels
        self.name = name

    @property
    def size(self):
        return self.star.shape[0]

    def __len__(self):
        return self.size

    def op(self, a, b):
        return self.star[a, b]

    def __repr__(self):
        return f"FiniteQuandle({self.name}, size={self.size})"


@dataclass
class AxiomReport:
    ok: bool
    checked: dict = field(default_factory=dict)
    violation: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "all quandle axioms hold" if self.ok else f"violation: {self.violation}"


def verify_quandle_axioms(Q: FiniteQuandle, chunk: int = 2**22) -> AxiomReport:
    """Exhaustive check of idempotency, right invertibility, self-distributivity."""
    m = Q.size
    star, bar = Q.star.astype(np.int64), Q.bar.astype(np.int64)
    idx = np.arange(m)
    report = AxiomReport(True)
    diag = star[idx, idx]
    bad = np.nonzero(diag != idx)[0]
    report.checked["Q1"] = m
    if len(bad):
        a = int(bad[0])
        return AxiomReport(False, report.checked, f"(Q1) {a}*{a} = {int(diag[a])}")
    if bar.min() < 0 or bar.max() >= m or star.min() < 0 or star.max() >= m:
        return AxiomReport(False, report.checked, "(Q2) table entries out of range")
    A, B = np.meshgrid(idx, idx, indexing="ij")
    left = bar[star, B]
    right = star[bar, B]
    bad = np.argwhere((left != A) | (right != A))
    report.checked["Q2"] = m * m
    if len(bad):
        a, b = map(int, bad[0])
        return AxiomReport(False, report.checked, f"(Q2) fails for a={a}, b={b}")
    rows = max(1, chunk // (m * m))
    for lo in range(0, m, rows):
        a = idx[lo:lo + rows, None, None]
        b = idx[None, :, None]
        c = idx[None, None, :]
        lhs = star[star[a, b], c]
        rhs = star[star[a, c], star[b, c]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, k = map(int, bad[0])
            return AxiomReport(False, report.checked, f"(Q3) fails for a={lo + i}, b={j}, c={k}")
    report.checked["Q3"] = m ** 3
    return report


def right_translations(Q: FiniteQuandle) -> np.ndarray:
    """Row b is the permutation a -> a*b."""
    return np.ascontiguousarray(Q.star.T)


def inner_group(Q: FiniteQuandle, limit: int = 10**6) -> PointedGroup:
    """Inn(Q) as a permutation group on Q; basepoint is the translation by
    Q's basepoint (or by element 0)."""
    gens = np.unique(right_translations(Q), axis=0)
    perms = closure(gens, Q.size, limit)
    G = PointedGroup(perms, 0, name=f"Inn({Q.name})")
    q = Q.basepoint if Q.basepoint is not None else 0
    return G.with_basepoint(G.index(right_translations(Q)[q]))


def is_connected(Q: FiniteQuandle) -> bool:
    seen = np.zeros(Q.size, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = np.unique(Q.star[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        # the inverse translations reach the same orbit for finite quandles
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


def conjugation_quandle(G: PointedGroup) -> FiniteQuandle:
    """The class of the basepoint under a*b = b^-1 a b."""
    from .colouring import class_tables

    if not G.is_colouring_group():
        raise HypothesisError(f"the class of the basepoint does not generate {G.name}")
    Q, pos, tables = class_tables(G)
    quandle = FiniteQuandle(tables.star, tables.bar, int(pos[G.basepoint]), Q, f"class({G.name})")
    quandle.group = G
    quandle.position = pos
    if not is_connected(quandle):
        raise VerificationFailure("conjugation quandle of a colouring group must be connected")
    return quandle


# -- label groups and cocycles ---------------------------------------------------

class LabelGroup:
    """A small subgroup used as coefficient group, with local indices.

    Local index 0 is the identity; ``elements[i]`` is the ambient index.
    """

    def __init__(self, group: PointedGroup, members):
        members = np.asarray(sorted(int(g) for g in members))
        if members[0] != group.identity:
            raise ValueError("label group must contain the identity")
        self.group = group
        self.elements = members
        k = len(members)
        local = {int(g): i for i, g in enumerate(members)}
        self.mul = np.array([[local[group.mul(int(a), int(b))] for b in members] for a in members],
                            dtype=np.int64).reshape(k, k)
        self.inv = np.array([local[group.inv(int(a))] for a in members], dtype=np.int64)
        self.local = local

    @classmethod
    def from_subgroup(cls, sub: Subgroup):
        return cls(sub.parent, sub.members)

    @property
    def order(self):
        return len(self.elements)

    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    def ring_element(self, counts):
        """Ring element over the ambient group from per-label counts."""
        from .group_ring import RingElement
        return RingElement(self.group, {int(self.elements[i]): int(c) for i, c in enumerate(counts) if c})


class Cocycle2:
    """A table Q x Q -> labels (local indices into ``labels``)."""

    def __init__(self, quandle: FiniteQuandle, table, labels: LabelGroup):
        self.quandle = quandle
        self.table = np.asarray(table, dtype=np.int64)
        self.labels = labels
        if self.table.shape != (quandle.size, quandle.size):
            raise ValueError("cocycle table has the wrong shape")

    @classmethod
    def trivial(cls, quandle, labels):
        return cls(quandle, np.zeros((quandle.size, quandle.size), dtype=np.int64), labels)

    def __call__(self, a, b):
        return self.table[a, b]

    def is_normalized(self):
        return bool(np.all(np.diag(self.table) == 0))

    def coboundary_defect(self, chunk: int = 2**22):
        """First triple where the cocycle condition fails, or None."""
        Q, L, lam = self.quandle, self.labels, self.table
        m = Q.size
        star = Q.star.astype(np.int64)
        idx = np.arange(m)
        rows = max(1, chunk // (m * m))
        for lo in range(0, m, rows):
            a = idx[lo:lo + rows, None, None]
            b = idx[None, :, None]
            c = idx[None, None, :]
            # lam(a,c) lam(a,b)^-1 lam(a*c, b*c) lam(a*b, c)^-1
            t = L.mul[lam[a, c], L.inv[lam[a, b]]]
            t = L.mul[t, lam[star[a, c], star[b, c]]]
            t = L.mul[t, L.inv[lam[star[a, b], c]]]
            bad = np.argwhere(t != 0)
            if len(bad):
                i, j, k = map(int, bad[0])
                return (lo + i, j, k)
        return None

    def is_cocycle(self):
        return self.is_normalized() and self.coboundary_defect() is None

    def times(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.quandle, self.labels.mul[self.table, other.table], self.labels)

    def inverse(self) -> "Cocycle2":
        return Cocycle2(self.quandle, self.labels.inv[self.table], self.labels)

    def __eq__(self, other):
        return isinstance(other, Cocycle2) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())


def coboundary(quandle: FiniteQuandle, mu, labels: LabelGroup) -> Cocycle2:
    """(delta mu)(a, b) = mu(a) mu(a*b)^-1."""
    mu = np.asarray(mu, dtype=np.int64)
    table = labels.mul[mu[:, None], labels.inv[mu[quandle.star.astype(np.int64)]]]
    return Cocycle2(quandle, table, labels)


def is_cohomologous(first: Cocycle2, second: Cocycle2):
    """Decide whether first/second is a coboundary.

    Solved exactly by propagation: on each orbit, mu is fixed at one element
    (an abelian constant shift does not change delta mu) and forced
    everywhere else by mu(a*b) = mu(a) rho(a,b)^-1.
    """
    L = first.labels
    if not L.is_abelian():
        raise HypothesisError("cohomology test needs an abelian label group")
    rho = first.times(second.inverse()).table
    Q = first.quandle
    star = Q.star.astype(np.int64)
    m = Q.size
    mu = np.full(m, -1, dtype=np.int64)
    for root in range(m):
        if mu[root] >= 0:
            continue
        mu[root] = 0
        stack = [root]
        while stack:
            a = stack.pop()
            for b in range(m):
                c = int(star[a, b])
                want = int(L.mul[mu[a], L.inv[rho[a, b]]])
                if mu[c] < 0:
                    mu[c] = want
                    stack.append(c)
    return bool(np.array_equal(coboundary(Q, mu, L).table, rho))


# -- covering quandle ------------------------------------------------------------

class CoveringQuandle(FiniteQuandle):
    """Pairs (a, g) with g in G' and a = x^g, indexed by g.

    (a,g)*(b,h) = (a*b, g a^-1 b) and the deck group Lambda acts by
    lambda.(a,g) = (a, lambda g).
    """

    def __init__(self, G: PointedGroup, limit: int = COVERING_SIZE_LIMIT):
        D = G.commutator_subgroup()
        if D.order > limit:
            raise SearchLimitExceeded(f"covering quandle would have {D.order} elements (limit {limit})")
        self.group = G
        self.base = conjugation_quandle(G)
        self.elements = D.members  # g for each element
        N = len(self.elements)
        gpos = np.full(G.order, -1, dtype=np.int64)
        gpos[self.elements] = np.arange(N)
        self.element_position = gpos
        x = G.basepoint
        a = G.conj(np.full(N, x), self.elements)  # ambient index of the first coordinate
        self.first = a
        self.projection = self.base.position[a]
        ga_inv = G.mul_many(self.elements, G.inverses[a])
        ga = G.mul_many(self.elements, a)
        star = gpos[G.mul_many(ga_inv[:, None], a[None, :])]
        bar = gpos[G.mul_many(ga[:, None], G.inverses[a][None, :])]
        super().__init__(star, bar, int(gpos[G.identity]), None, f"cover({G.name})")
        self.deck_group = LabelGroup.from_subgroup(G.longitude_subgroup())
        lam = self.deck_group.elements
        self.deck = gpos[G.mul_many(lam[:, None], self.elements[None, :])]  # deck[l, p]
        self.section = self._lexicographic_section()

    def _lexicographic_section(self):
        G = self.group
        m = self.base.size
        sec = np.full(m, -1, dtype=np.int64)
        order = G.lexicographic_order(self.elements)
        for g in order:
            p = int(self.element_position[g])
            fib = int(self.projection[p])
            if sec[fib] < 0:
                sec[fib] = p
        sec[self.base.basepoint] = int(self.element_position[G.identity])
        return sec

    def project(self, p):
        return self.projection[p]

    def deck_act(self, label, p):
        return self.deck[label, p]

    def deck_label(self, p, p2):
        """The deck label l with l.p = p2 (both in the same fibre)."""
        hits = np.nonzero(self.deck[:, p] == p2)[0]
        if len(hits) != 1:
            raise VerificationFailure("deck group does not act freely and transitively on the fibre")
        return int(hits[0])

    def format_element(self, p):
        G = self.group
        return f"({G.format_element(int(self.first[p]))}, {G.format_element(int(self.elements[p]))})"

    def verify_covering(self):
        """Projection is a homomorphism; (E1); (E2) free and transitive on fibres."""
        proj = self.projection
        qs = self.base.star.astype(np.int64)
        if not np.array_equal(proj[self.star], qs[proj[:, None], proj[None, :]]):
            raise VerificationFailure("projection is not a quandle homomorphism")
        for l in range(self.deck_group.order):
            moved = self.deck[l]
            # l.(x*y) = (l.x)*y and x*(l.y) = x*y
            if not np.array_equal(self.deck[l][self.star], self.star[moved, :]):
                raise VerificationFailure("(E1) fails on the left factor")
            if not np.array_equal(self.star[:, moved], self.star):
                raise VerificationFailure("(E1) fails on the right factor")
        N = self.size
        fibre_sizes = np.bincount(proj, minlength=self.base.size)
        if np.any(fibre_sizes != self.deck_group.order):
            raise VerificationFailure("(E2) fibres do not match the deck group order")
        orbits = np.sort(self.deck, axis=0)
        same_fibre = proj[self.deck] == proj[None, :]
        if not same_fibre.all() or np.any(np.diff(orbits, axis=0) == 0):
            raise VerificationFailure("(E2) deck action is not free on fibres")
        return True


def covering_quandle(G: PointedGroup, limit: int = COVERING_SIZE_LIMIT) -> CoveringQuandle:
    return CoveringQuandle(G, limit)


def cocycle_from_section(cov: CoveringQuandle, section=None) -> Cocycle2:
    """lambda(a,b) defined by s(a)*s(b) = lambda(a,b).s(a*b)."""
    L = cov.deck_group
    if not L.is_abelian():
        raise HypothesisError("the longitude group is not abelian; no cocycle is extracted")
    sec = cov.section if section is None else np.asarray(section)
    G = cov.group
    Q = cov.base
    m = Q.size
    star_q = Q.star.astype(np.int64)
    prod = cov.star[sec[:, None], sec[None, :]]  # s(a)*s(b)
    target = sec[star_q]  # s(a*b)
    # prod = l . target  <=>  g_prod = l g_target
    lam = G.mul_many(cov.elements[prod], G.inverses[cov.elements[target]])
    table = np.vectorize(lambda g: L.local.get(int(g), -1))(lam)
    if np.any(table < 0):
        raise VerificationFailure("section discrepancy outside the deck group")
    coc = Cocycle2(Q, table.reshape(m, m), L)
    if not coc.is_normalized():
        raise VerificationFailure("section cocycle is not normalized")
    bad = coc.coboundary_defect()
    if bad is not None:
        raise VerificationFailure(f"section cocycle fails the cocycle condition at {bad}")
    return coc


def section_cocycle(G: PointedGroup) -> Cocycle2:
    """The lexicographic-section cocycle computed without the covering table.

    Same values as ``cocycle_from_section(covering_quandle(G))``, but only
    |Q|^2 products are formed, so it also works when G' is large.
    """
    L = LabelGroup.from_subgroup(G.longitude_subgroup())
    if not L.is_abelian():
        raise HypothesisError("the longitude group is not abelian; no cocycle is extracted")
    Q = conjugation_quandle(G)
    D = G.commutator_subgroup().members
    fibre = Q.position[G.conj(np.full(len(D), G.basepoint), D)]
    reps = np.full(Q.size, -1, dtype=np.int64)
    for g in G.lexicographic_order(D):
        f = int(fibre[np.searchsorted(D, g)])
        if reps[f] < 0:
            reps[f] = g
    reps[Q.basepoint] = G.identity
    a = np.asarray(Q.labels)
    m = Q.size
    ga_inv = G.mul_many(reps, G.inverses[a])
    prod = G.mul_many(ga_inv[:, None], a[None, :])  # g_a a^-1 b
    target = reps[Q.star.astype(np.int64)]
    lam = G.mul_many(prod, G.inverses[target])
    table = np.vectorize(lambda g: L.local.get(int(g), -1))(lam).reshape(m, m)
    if np.any(table < 0):
        raise VerificationFailure("section discrepancy outside the longitude group")
    return Cocycle2(Q, table, L)


def section_difference(cov: CoveringQuandle, first, second):
    """mu with s2(a) = mu(a).s1(a) for two sections."""
    return np.array([cov.deck_label(int(p), int(q)) for p, q in zip(first, second)], dtype=np.int64)


# -- augmentations ----------------------------------------------------------------

@dataclass
class Augmentation:
    """A map phi: Q -> G with a right action of G on Q, a*b = a^phi(b)."""
    quandle: FiniteQuandle
    group: PointedGroup
    phi: np.ndarray
    act: Callable  # act(a_array, g_array) -> a^g

    def verify(self):
        Q, G = self.quandle, self.group
        m = Q.size
        A, B = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        if not np.array_equal(self.act(A, self.phi[B]), Q.star):
            raise VerificationFailure("augmentation: a*b differs from a^phi(b)")
        gens = np.asarray(G.generators or [G.identity])
        for g in gens:
            moved = self.act(np.arange(m), np.full(m, g))
            if not np.array_equal(self.phi[moved], G.conj(self.phi, np.full(m, g))):
                raise VerificationFailure("augmentation: phi is not equivariant")
        return True


def inner_augmentation(Q: FiniteQuandle) -> Augmentation:
    G = inner_group(Q)
    phi = G.index_many(right_translations(Q))
    perms = G.perms.astype(np.int64)
    return Augmentation(Q, G, np.asarray(phi, dtype=np.int64), lambda a, g: perms[g, a])


def conjugation_augmentation(Q: FiniteQuandle) -> Augmentation:
    G = Q.group
    pos = Q.position
    labels = np.asarray(Q.labels)
    return Augmentation(Q, G, labels.astype(np.int64),
                        lambda a, g: pos[G.conj(labels[np.asarray(a)], np.asarray(g))])


# -- text exchange -----------------------------------------------------------------

def quandle_to_csv(Q: FiniteQuandle) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(Q.star.tolist())
    return buf.getvalue()


def quandle_from_csv(text: str, basepoint: int | None = None) -> FiniteQuandle:
    try:
        rows = [[int(v) for v in row] for row in csv.reader(io.StringIO(text)) if row]
    except ValueError as exc:
        raise ParseError(f"bad quandle table: {exc}") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("quandle table must be square")
    return FiniteQuandle(np.array(rows), basepoint=basepoint)


def cocycle_to_csv(c: Cocycle2) -> str:
    G = c.labels.group
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in c.table:
        w.writerow([G.format_element(int(c.labels.elements[v])) for v in row])
    return buf.getvalue()


def cocycle_from_csv(text: str, quandle: FiniteQuandle, labels: LabelGroup) -> Cocycle2:
    G = labels.group
    rows = []
    for row in csv.reader(io.StringIO(text)):
        if not row:
            continue
        try:
            rows.append([labels.local[G.parse_element(v)] for v in row])
        except KeyError:
            raise ParseError(f"cocycle entry outside the label group in row {len(rows)}") from None
    return Cocycle2(quandle, np.array(rows), labels)
