"""Finite permutation groups with a distinguished basepoint.

Points are 0-based internally; cycle notation at the API surface is 1-based,
e.g. ``(1,2,3,4,5)``.  Products follow the right-action convention used by
GAP: ``p * q`` means "apply p, then q", so ``(p*q)[i] == q[p[i]]`` and
conjugation is ``a ** g == g^-1 a g``.

Groups are stored as an ``(order, degree)`` array of images.  Element 0 is
always the identity.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import HypothesisError, ParseError, SearchLimitExceeded

DENSE_TABLE_LIMIT = 2000
OBVERSION_SEARCH_LIMIT = 2000


class Perm:
    """An immutable permutation of {0, ..., degree-1}."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Perm":
        cycles = parse_cycles(text)
        largest = max((p for c in cycles for p in c), default=0)
        if degree is None:
            degree = largest
        elif largest > degree:
            raise ParseError(f"point {largest} exceeds degree {degree} in {text!r}")
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b - 1
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def padded(self, degree: int) -> "Perm":
        return self if degree <= self.degree else Perm(self.images + tuple(range(self.degree, degree)))

    def __mul__(self, other: "Perm") -> "Perm":
        n = max(self.degree, other.degree)
        a, b = self.padded(n), other.padded(n)
        return Perm(b.images[i] for i in a.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def order(self):
        k, p, e = 1, self, Perm.identity(self.degree)
        while p != e:
            p, k = p * self, k + 1
        return k

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def _trimmed(self):
        im = self.images
        n = len(im)
        while n and im[n - 1] == n - 1:
            n -= 1
        return im[:n]

    def __eq__(self, other):
        # trailing fixed points do not matter
        return isinstance(other, Perm) and self._trimmed() == other._trimmed()

    def __hash__(self):
        return hash(self._trimmed())

    def __repr__(self):
        return f"Perm({format_cycles(self.images)})"

    def __str__(self):
        return format_cycles(self.images)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse ``(1,2,3)(4,5)`` (commas or blanks) into 1-based cycles."""
    text = text.strip()
    pos, cycles = 0, []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"unexpected text in cycle notation {text!r}", pos)
        body = m.group(1).replace(",", " ").split()
        try:
            cyc = tuple(int(p) for p in body)
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}", m.start()) from None
        if any(p < 1 for p in cyc) or len(set(cyc)) != len(cyc):
            raise ParseError(f"bad cycle {m.group(0)!r}", m.start())
        cycles.append(cyc)
        pos = m.end()
    if text[pos:].strip() or (not cycles and text):
        raise ParseError(f"cannot parse cycle notation {text!r}", pos)
    for a in range(len(cycles)):
        for b in range(a):
            if set(cycles[a]) & set(cycles[b]):
                raise ParseError(f"cycles are not disjoint in {text!r}")
    return cycles


def format_cycles(images: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + 1))
            i = images[i]
        parts.append("(" + ",".join(cyc) + ")")
    return "".join(parts) or "()"


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise product p*q (apply p, then q) for stacked permutations."""
    return np.take_along_axis(q, p, axis=-1)


def invert(p: np.ndarray) -> np.ndarray:
    return np.argsort(p, axis=-1).astype(p.dtype)


def closure(generators: Sequence[Sequence[int]], degree: int, limit: int = 10**6) -> np.ndarray:
    """All products of the generators, identity first, in breadth-first order."""
    ident = tuple(range(degree))
    gens = [tuple(int(i) for i in g) for g in generators]
    seen = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(s[i] for i in g)
            if h not in seen:
                seen[h] = len(elems)
                elems.append(h)
                queue.append(h)
                if len(elems) > limit:
                    raise SearchLimitExceeded(f"group closure exceeded {limit} elements")
    return np.array(elems, dtype=np.int16).reshape(len(elems), degree)


class _Lookup:
    """Vectorized map from permutation rows to element indices."""

    def __init__(self, perms: np.ndarray):
        n, deg = perms.shape
        self.degree = deg
        self._packed = deg > 0 and deg ** deg < 2**62
        if self._packed:
            self._weights = (np.int64(deg) ** np.arange(deg, dtype=np.int64))
            keys = perms.astype(np.int64) @ self._weights
            self._order = np.argsort(keys)
            self._sorted = keys[self._order]
        else:
            self._dict = {row.tobytes(): i for i, row in enumerate(perms)}

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=np.int16)
        flat = rows.reshape(-1, self.degree)
        if self._packed:
            keys = flat.astype(np.int64) @ self._weights
            pos = np.searchsorted(self._sorted, keys)
            pos = np.minimum(pos, len(self._sorted) - 1)
            if not np.array_equal(self._sorted[pos], keys):
                raise KeyError("permutation not in group")
            out = self._order[pos]
        else:
            out = np.fromiter((self._dict[r.tobytes()] for r in flat), dtype=np.int64, count=len(flat))
        return out.reshape(rows.shape[:-1])


@dataclass
class Subgroup:
    parent: "PointedGroup"
    members: np.ndarray  # sorted element indices of the parent
    _abelian: bool | None = field(default=None, repr=False)

    def __post_init__(self):
        self.members = np.unique(np.asarray(self.members, dtype=np.int64))
        self._set = frozenset(self.members.tolist())

    @property
    def order(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return int(g) in self._set

    def __iter__(self):
        return iter(self.members.tolist())

    def is_abelian(self) -> bool:
        if self._abelian is None:
            G, m = self.parent, self.members
            ab = G.mul_many(m[:, None], m[None, :])
            self._abelian = bool(np.array_equal(ab, ab.T))
        return self._abelian

    def is_cyclic(self):
        return self.generator() is not None

    def generator(self) -> int | None:
        """A generator when cyclic, preferring the parent's basepoint."""
        G = self.parent
        candidates = [G.basepoint] if G.basepoint in self else []
        candidates += [g for g in self.members.tolist() if g != G.basepoint]
        for g in candidates:
            if G.element_order(g) == self.order:
                return g
        return None

    def check_closed(self):
        G, m = self.parent, self.members
        return (G.identity in self
                and set(G.mul_many(m[:, None], m[None, :]).ravel().tolist()) <= self._set
                and set(G.inverses[m].tolist()) <= self._set)

    def as_group(self, basepoint: int | None = None, name: str | None = None) -> "PointedGroup":
        G = self.parent
        order = [G.identity] + [g for g in self.members.tolist() if g != G.identity]
        bp = G.basepoint if basepoint is None else basepoint
        if bp not in self:
            raise HypothesisError("basepoint is not in the subgroup")
        perms = G.perms[order]
        return PointedGroup(perms, order.index(bp), name=name or f"sub({G.name})")


class PointedGroup:
    """A finite permutation group with basepoint ``x``.

    The conjugacy class, centralizer, commutator subgroup and longitude
    subgroup of ``x`` are computed on construction; instances are treated as
    immutable afterwards.
    """

    def __init__(self, perms: np.ndarray, basepoint: int = 0, name: str = "G",
                 generators: Sequence[int] | None = None, meta: dict | None = None):
        perms = np.ascontiguousarray(perms, dtype=np.int16)
        if perms.ndim != 2 or perms.shape[0] == 0:
            raise ValueError("need a non-empty (order, degree) array")
        if not np.array_equal(perms[0], np.arange(perms.shape[1])):
            raise ValueError("element 0 must be the identity")
        self.perms = perms
        self.order = perms.shape[0]
        self.degree = perms.shape[1]
        self.identity = 0
        self.name = name
        self.meta = dict(meta or {})
        self._lookup = _Lookup(perms)
        self.inverses = self._lookup(invert(perms))
        self._table = None
        if self.order <= DENSE_TABLE_LIMIT:
            table = np.empty((self.order, self.order), dtype=np.int32)
            step = max(1, 2**22 // (self.order * self.degree))
            for lo in range(0, self.order, step):
                left = perms[lo:lo + step, None, :].repeat(self.order, 1)
                right = np.broadcast_to(perms[None, :, :], left.shape)
                table[lo:lo + step] = self._lookup(compose(left, right))
            self._table = table
        self.generators = list(generators) if generators is not None else self._pick_generators()
        self.set_basepoint(basepoint)

    # -- construction helpers --------------------------------------------
    def _pick_generators(self):
        gens, covered = [], {0}
        for g in range(1, self.order):
            if g not in covered:
                gens.append(g)
                covered = set(self.generated_subgroup(gens).members.tolist())
                if len(covered) == self.order:
                    break
        return gens

    def set_basepoint(self, basepoint: int):
        self.basepoint = int(basepoint)
        if not 0 <= self.basepoint < self.order:
            raise HypothesisError("basepoint not found")
        self._class = None
        self._centralizer = None
        self._derived = None
        self._longitude = None
        # caches are populated eagerly so shared instances stay read-only
        self.conjugacy_class()
        self.centralizer()
        self.commutator_subgroup()
        self.longitude_subgroup()

    def with_basepoint(self, basepoint: int) -> "PointedGroup":
        G = PointedGroup.__new__(PointedGroup)
        G.__dict__.update(self.__dict__)
        G.meta = dict(self.meta)
        G.set_basepoint(basepoint)
        return G

    # -- elementwise arithmetic ------------------------------------------
    def index(self, perm) -> int:
        if isinstance(perm, Perm):
            perm = perm.images
        arr = np.asarray(perm, dtype=np.int16)
        if arr.shape != (self.degree,):
            raise KeyError(f"wrong degree for {perm}")
        return int(self._lookup(arr))

    def index_many(self, rows: np.ndarray) -> np.ndarray:
        return self._lookup(rows)

    def parse_element(self, text: str) -> int:
        try:
            return self.index(Perm.from_cycles(text, self.degree))
        except KeyError:
            raise HypothesisError(f"{text} is not an element of {self.name}") from None

    def perm(self, g: int) -> Perm:
        return Perm(self.perms[g].tolist())

    def format_element(self, g: int) -> str:
        return format_cycles(self.perms[g].tolist())

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return int(self._lookup(compose(self.perms[a], self.perms[b])))

    def mul_many(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        if self._table is not None:
            return self._table[a, b]
        return self._lookup(compose(self.perms[a], self.perms[b]))

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, a, g):
        """a ** g = g^-1 a g (vectorized)."""
        return self.mul_many(self.mul_many(self.inverses[np.asarray(g)], a), g)

    def power(self, a: int, k: int) -> int:
        base = a if k >= 0 else self.inv(a)
        out = self.identity
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def word(self, letters: Iterable[tuple[int, int]]) -> int:
        """Evaluate a product of (element, exponent) pairs."""
        out = self.identity
        for g, e in letters:
            out = self.mul(out, self.power(g, e))
        return out

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != self.identity:
            h, k = self.mul(h, g), k + 1
        return k

    def elements_of_order(self, k: int) -> np.ndarray:
        p = self.perms.copy()
        cur = p.copy()
        ident = np.arange(self.degree)
        orders = np.zeros(self.order, dtype=np.int64)
        for j in range(1, k + 1):
            done = (orders == 0) & np.all(cur == ident, axis=1)
            orders[done] = j
            cur = compose(cur, p)
        return np.nonzero(orders == k)[0]

    def lexicographic_order(self, elems) -> np.ndarray:
        elems = np.asarray(elems)
        rows = self.perms[elems]
        keys = np.lexsort(rows.T[::-1])
        return elems[keys]

    # -- subgroups -------------------------------------------------------
    def generated_subgroup(self, gens: Iterable[int]) -> Subgroup:
        gens = [int(g) for g in gens]
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = self.mul_many(np.array(frontier)[:, None], np.array(gens or [0])[None, :]).ravel()
            frontier = [g for g in set(nxt.tolist()) if g not in members]
            members.update(frontier)
        return Subgroup(self, np.array(sorted(members)))

    def conjugacy_class(self, x: int | None = None) -> np.ndarray:
        """{g^-1 x g : g in G}, as sorted element indices."""
        if x is None:
            if self._class is None:
                self._class = self._class_of(self.basepoint)
            return self._class
        if not 0 <= x < self.order:
            raise HypothesisError("element is not a member")
        return self._class_of(x)

    def _class_of(self, x):
        allg = np.arange(self.order)
        return np.unique(self.conj(np.full(self.order, x), allg))

    def centralizer(self, x: int | None = None) -> Subgroup:
        if x is None and self._centralizer is not None:
            return self._centralizer
        xx = self.basepoint if x is None else x
        allg = np.arange(self.order)
        comm = self.mul_many(allg, xx) == self.mul_many(xx, allg)
        sub = Subgroup(self, np.nonzero(comm)[0])
        if x is None:
            self._centralizer = sub
        return sub

    def center(self) -> Subgroup:
        gens = np.array(self.generators or [0])
        allg = np.arange(self.order)[:, None]
        comm = np.all(self.mul_many(allg, gens[None, :]) == self.mul_many(gens[None, :], allg), axis=1)
        return Subgroup(self, np.nonzero(comm)[0])

    def normal_closure(self, gens: Iterable[int]) -> Subgroup:
        gens = list(dict.fromkeys(int(g) for g in gens))
        H = self.generated_subgroup(gens)
        while True:
            new = []
            for s in self.generators:
                conj = self.conj(np.array(gens or [0]), s)
                new += [int(c) for c in conj if int(c) not in H]
            if not new:
                return H
            gens += list(dict.fromkeys(new))
            H = self.generated_subgroup(gens)

    def commutator_subgroup(self) -> Subgroup:
        if self._derived is None:
            comms = []
            for s in self.generators:
                for t in self.generators:
                    # [s,t] = s^-1 t^-1 s t
                    comms.append(self.mul(self.mul(self.inv(s), self.inv(t)), self.mul(s, t)))
            self._derived = self.normal_closure(comms)
        return self._derived

    def longitude_subgroup(self) -> Subgroup:
        """Lambda = C(x) intersected with the commutator subgroup."""
        if self._longitude is None:
            C, D = self.centralizer(), self.commutator_subgroup()
            self._longitude = Subgroup(self, np.intersect1d(C.members, D.members))
        return self._longitude

    def is_colouring_group(self) -> bool:
        return self.generated_subgroup(self.conjugacy_class()).order == self.order

    def inner_order(self, g: int | None = None) -> int:
        """Order of conjugation by g, i.e. the order of g modulo the center."""
        g = self.basepoint if g is None else g
        Z = self.center()
        k, h = 1, g
        while h not in Z:
            h, k = self.mul(h, g), k + 1
        return k

    def __repr__(self):
        return (f"PointedGroup({self.name}, order={self.order}, degree={self.degree}, "
                f"x={self.format_element(self.basepoint)})")


@dataclass
class GroupMap:
    source: PointedGroup
    target: PointedGroup
    images: np.ndarray
    kind: str = "homomorphism"  # or "anti-homomorphism"

    def __call__(self, g):
        return self.images[g]

    def is_valid(self) -> bool:
        G, H, f = self.source, self.target, self.images
        a = np.arange(G.order)
        for s in G.generators:
            lhs = f[G.mul_many(a, s)]
            rhs = H.mul_many(f[a], f[s]) if self.kind == "homomorphism" else H.mul_many(f[s], f[a])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_bijective(self):
        return len(np.unique(self.images)) == self.target.order == self.source.order


# -- obversions ----------------------------------------------------------

def _reversion_from(obv: GroupMap) -> GroupMap:
    G = obv.source
    return GroupMap(G, G, G.inverses[obv.images], kind="anti-homomorphism")


def _conjugation_map(G: PointedGroup, sigma: np.ndarray) -> GroupMap:
    sig = np.asarray(sigma, dtype=np.int16)
    rows = compose(compose(invert(sig)[None, :].repeat(G.order, 0), G.perms), sig[None, :].repeat(G.order, 0))
    return GroupMap(G, G, G.index_many(rows))


def _inverting_conjugator(x: Perm) -> np.ndarray:
    sigma = list(range(x.degree))
    for cyc in x.cycles():
        k = len(cyc)
        for j, c in enumerate(cyc):
            sigma[c] = cyc[(-j) % k]
    return np.array(sigma)


def find_obversion(G: PointedGroup, limit: int = OBVERSION_SEARCH_LIMIT):
    """Search for an automorphism of G sending x to x^-1.

    Returns ``(obversion, reversion)`` or ``None`` when none exists.
    Symmetric and alternating groups use conjugation in S_n; PSL_2 with the
    unipotent basepoint uses the diagonal conjugation; everything else is a
    brute-force search over generator images, limited to |G| <= ``limit``.
    """
    x, xinv = G.basepoint, G.inv(G.basepoint)
    if x == xinv:
        ident = GroupMap(G, G, np.arange(G.order))
        return ident, _reversion_from(ident)
    family = G.meta.get("family")
    if family in ("symmetric", "alternating"):
        try:
            obv = _conjugation_map(G, _inverting_conjugator(G.perm(x)))
        except KeyError:
            obv = None
        if obv is not None and obv(x) == xinv:
            return obv, _reversion_from(obv)
    if family == "psl2":
        obv = _psl2_matrix_map(G, lambda a, b, c, d, p: (a, -b, -c, d))
        if obv(x) == xinv:
            return obv, _reversion_from(obv)
    if G.order > limit:
        raise SearchLimitExceeded(
            f"automorphism search on a group of order {G.order} exceeds the bound {limit}")
    return _brute_force_obversion(G)


def _brute_force_obversion(G: PointedGroup):
    x, xinv = G.basepoint, G.inv(G.basepoint)
    gens = [x]
    while G.generated_subgroup(gens).order < G.order:
        covered = G.generated_subgroup(gens)
        gens.append(next(g for g in G.generators if g not in covered))
    # breadth-first spanning tree over the generators
    parent = {G.identity: None}
    order = [G.identity]
    for g in order:
        for k, s in enumerate(gens):
            h = G.mul(g, s)
            if h not in parent:
                parent[h] = (g, k)
                order.append(h)
    orders = [G.element_order(g) for g in gens]
    options = [[xinv]] + [G.elements_of_order(o).tolist() for o in orders[1:]]
    allg = np.arange(G.order)
    for choice in product(*options):
        f = np.full(G.order, -1, dtype=np.int64)
        f[G.identity] = G.identity
        for h in order[1:]:
            g, k = parent[h]
            f[h] = G.mul(f[g], choice[k])
        if len(np.unique(f)) != G.order:
            continue
        if all(np.array_equal(f[G.mul_many(allg, s)], G.mul_many(f, choice[k]))
               for k, s in enumerate(gens)):
            obv = GroupMap(G, G, f)
            return obv, _reversion_from(obv)
    return None


# -- named groups ----------------------------------------------------------

def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _cycle(points, degree):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return images


def symmetric(n: int) -> PointedGroup:
    if n < 1:
        raise ParseError("symmetric group needs n >= 1")
    gens = [] if n == 1 else [_cycle(list(range(n)), n), _cycle([0, 1], n)]
    perms = closure(gens, n)
    return _finish(perms, gens, f"S{n}", {"family": "symmetric", "n": n})


def alternating(n: int) -> PointedGroup:
    if n < 1:
        raise ParseError("alternating group needs n >= 1")
    gens = [_cycle([i, i + 1, i + 2], n) for i in range(n - 2)]
    perms = closure(gens, n)
    return _finish(perms, gens, f"A{n}", {"family": "alternating", "n": n})


def cyclic(n: int) -> PointedGroup:
    gens = [_cycle(list(range(n)), n)] if n > 1 else []
    return _finish(closure(gens, max(n, 1)), gens, f"C{n}", {"family": "cyclic", "n": n})


def dihedral(order: int) -> PointedGroup:
    """Dihedral group of the given order 2p acting on p points."""
    if order < 2 or order % 2:
        raise ParseError("dihedral group order must be even")
    p = order // 2
    if p == 1:
        return _finish(closure([[1, 0]], 2), [[1, 0]], "D2", {"family": "dihedral", "p": 1})
    gens = [_cycle(list(range(p)), p), [(-i) % p for i in range(p)]]
    return _finish(closure(gens, p), gens, f"D{order}", {"family": "dihedral", "p": p})


def _psl2_normalize(m, p):
    m = tuple(v % p for v in m)
    for v in m:
        if v:
            if v > p // 2:
                m = tuple((-w) % p for w in m)
            break
    return m


def _psl2_perm(m, p):
    a, b, c, d = m
    images = []
    for pt in range(p + 1):
        u, v = (pt, 1) if pt < p else (1, 0)
        x, y = (u * a + v * c) % p, (u * b + v * d) % p
        images.append(x * pow(y, -1, p) % p if y else p)
    return images


def psl2(p: int) -> PointedGroup:
    """PSL(2, p) acting on the projective line {0, ..., p-1, oo=p}.

    A matrix acts on row vectors from the right, so products of matrices
    match products of permutations.
    """
    if not _is_prime(p):
        raise ParseError(f"PSL2 needs a prime, got {p}")
    T, S = _psl2_normalize((1, 1, 0, 1), p), _psl2_normalize((0, 1, p - 1, 0), p)
    ident = _psl2_normalize((1, 0, 0, 1), p)

    def mat_mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return _psl2_normalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), p)

    mats, seen = [ident], {ident}
    for m in mats:
        for s in (T, S):
            k = mat_mul(m, s)
            if k not in seen:
                seen.add(k)
                mats.append(k)
    perms = np.array([_psl2_perm(m, p) for m in mats], dtype=np.int16)
    gens = [mats.index(T), mats.index(S)]
    G = PointedGroup(perms, 0, name=f"PSL2_{p}", generators=gens,
                     meta={"family": "psl2", "p": p, "matrices": mats})
    return G


def _psl2_matrix_map(G: PointedGroup, fn) -> GroupMap:
    p, mats = G.meta["p"], G.meta["matrices"]
    rows = np.array([_psl2_perm(_psl2_normalize(fn(*m, p), p), p) for m in mats], dtype=np.int16)
    return GroupMap(G, G, G.index_many(rows))


def psl2_element(G: PointedGroup, a, b, c, d) -> int:
    return G.meta["matrices"].index(_psl2_normalize((a, b, c, d), G.meta["p"]))


MATHIEU11_GENERATORS = ("(1,2,3,4,5,6,7,8,9,10,11)", "(1,2,3,5,10,9,11,4,7,8,6)")


def mathieu11() -> PointedGroup:
    gens = [Perm.from_cycles(g, 11).images for g in MATHIEU11_GENERATORS]
    perms = closure(gens, 11)
    return _finish(perms, gens, "M11", {"family": "mathieu11"})


def affine(p: int) -> PointedGroup:
    """F_p x| F_p^* with (a,b)(c,d) = (a+bc, bd), acting by t -> (t-a)/b."""
    if not _is_prime(p):
        raise ParseError(f"affine group needs a prime, got {p}")
    elems = [(a, b) for b in range(1, p) for a in range(p)]
    elems.remove((0, 1))
    elems.insert(0, (0, 1))
    rows = [[(t - a) * pow(b, -1, p) % p for t in range(p)] for a, b in elems]
    G = PointedGroup(np.array(rows, dtype=np.int16), 0, name=f"Aff{p}",
                     meta={"family": "affine", "p": p, "pairs": elems})
    return G


def from_generators(gen_texts: Sequence[str], name: str | None = None) -> PointedGroup:
    perms = [Perm.from_cycles(t) for t in gen_texts]
    degree = max((q.degree for q in perms), default=1) or 1
    gens = [Perm.from_cycles(t, degree).images for t in gen_texts]
    return _finish(closure(gens, degree), gens, name or "<" + ",".join(gen_texts) + ">", {"family": "generated"})


def _finish(perms, gens, name, meta):
    lookup = _Lookup(np.ascontiguousarray(perms, dtype=np.int16))
    gen_idx = [int(lookup(np.array(g, dtype=np.int16))) for g in gens]
    return PointedGroup(perms, 0, name=name, generators=gen_idx or [0], meta=meta)


# -- descriptors -------------------------------------------------------------

_DESCRIPTOR_RE = [
    (re.compile(r"^S(\d+)$", re.I), lambda m: symmetric(int(m.group(1)))),
    (re.compile(r"^A(\d+)$", re.I), lambda m: alternating(int(m.group(1)))),
    (re.compile(r"^C(\d+)$", re.I), lambda m: cyclic(int(m.group(1)))),
    (re.compile(r"^D(\d+)$", re.I), lambda m: dihedral(int(m.group(1)))),
    (re.compile(r"^PSL2_(\d+)$", re.I), lambda m: psl2(int(m.group(1)))),
    (re.compile(r"^M11$", re.I), lambda m: mathieu11()),
    (re.compile(r"^Aff(\d+)$", re.I), lambda m: affine(int(m.group(1)))),
]


def default_basepoint(G: PointedGroup) -> int:
    fam = G.meta.get("family")
    if fam in ("symmetric", "alternating", "cyclic") and G.degree > 1:
        n = G.degree
        length = n if fam != "alternating" or n % 2 else n - 1
        return G.index(_cycle(list(range(length)), n))
    if fam == "mathieu11":
        return G.parse_element(MATHIEU11_GENERATORS[0])
    if fam == "psl2":
        return psl2_element(G, 1, 1, 0, 1)
    if fam == "dihedral":
        return int(G.lexicographic_order(G.elements_of_order(2))[0]) if G.order > 1 else 0
    if fam == "affine":
        p = G.meta["p"]
        return int(G.lexicographic_order(G.elements_of_order(p - 1))[0]) if p > 2 else 0
    return G.generators[0] if G.generators else 0


def parse_basepoint(G: PointedGroup, text: str | None) -> int:
    if text is None or text.strip().lower() in ("", "default"):
        return default_basepoint(G)
    text = text.strip()
    if text.lower().startswith("order:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad order descriptor {text!r}") from None
        default = default_basepoint(G)
        if G.element_order(default) == k:
            # several classes may share the order; the family default wins
            return default
        elems = G.elements_of_order(k)
        if len(elems) == 0:
            raise HypothesisError(f"{G.name} has no element of order {k}")
        return int(G.lexicographic_order(elems)[0])
    if text.lower().startswith("mat:"):
        if G.meta.get("family") != "psl2":
            raise ParseError("matrix basepoints are only available for PSL2 groups")
        try:
            a, b, c, d = (int(v) for v in text[4:].split(","))
        except ValueError:
            raise ParseError(f"bad matrix descriptor {text!r}") from None
        try:
            return psl2_element(G, a, b, c, d)
        except ValueError:
            raise HypothesisError(f"{text} is not in {G.name}") from None
    if text in ("()", "id", "1"):
        return G.identity
    return G.parse_element(text)


def build_named_group(descriptor: str, basepoint: str | None = None) -> PointedGroup:
    """Build a group from a descriptor such as ``A5``, ``PSL2_7``, ``M11``,
    ``Aff5``, ``D6`` or ``<(1,2,3),(1,2)>``; basepoint as cycle notation,
    ``order:k``, ``mat:a,b,c,d`` (PSL2 only), or the family default."""
    desc = descriptor.strip()
    G = None
    if desc.startswith("<") and desc.endswith(">"):
        body = desc[1:-1].strip()
        texts = [t if t.endswith(")") else t + ")" for t in re.split(r"\)\s*,\s*(?=\()", body)] if body else []
        G = from_generators(texts, name=desc)
    else:
        for rx, build in _DESCRIPTOR_RE:
            m = rx.match(desc)
            if m:
                G = build(m)
                break
    if G is None:
        raise ParseError(f"unknown group descriptor {descriptor!r}")
    G.meta["descriptor"] = desc
    bp = parse_basepoint(G, basepoint)
    if bp != G.basepoint:
        G.set_basepoint(bp)
    G.meta["basepoint_descriptor"] = basepoint
    return G


def colouring_core(G: PointedGroup) -> PointedGroup:
    """Stabilize G_{i+1} = <x^{G_i}> and return the final colouring group."""
    H = G
    while True:
        sub = H.generated_subgroup(H.conjugacy_class())
        if sub.order == H.order:
            return H
        H = sub.as_group(name=f"core({G.name})")
        H.meta.update({k: v for k, v in G.meta.items() if k in ("descriptor",)})
