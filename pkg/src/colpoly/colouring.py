"""Colourings of long-knot diagrams and the colouring polynomial.

Colours live in a finite set with two operations given as tables:
``star[a, b] = a*b`` and ``bar[a, b]`` its inverse in the first slot.  For a
group these come from conjugation within the class of the basepoint.  The
search picks a small set of seed arcs whose colours determine all others,
then runs a vectorized breadth-first expansion over seed values with
propagation and consistency filters in between.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .diagram import WirtingerCode
from .errors import HypothesisError, SearchLimitExceeded, VerificationFailure
from .group_ring import RingElement
from .groups import PointedGroup, colouring_core

DEFAULT_NODE_CAP = 10**10
CHUNK_ROWS = 2**20


# -- colour tables -------------------------------------------------------------

@dataclass
class ColourTables:
    """Operation tables on colours 0..m-1 (``star`` = a*b, ``bar`` = a/b)."""
    star: np.ndarray
    bar: np.ndarray

    @property
    def size(self):
        return self.star.shape[0]


def class_tables(G: PointedGroup):
    """Tables for the conjugacy class of the basepoint.

    Returns (class elements, position lookup, tables); a*b = b^-1 a b.
    """
    Q = G.conjugacy_class()
    m = len(Q)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[Q] = np.arange(m)
    dtype = np.int16 if m < 2**15 else np.int32
    star = np.empty((m, m), dtype=dtype)
    bar = np.empty((m, m), dtype=dtype)
    step = max(1, CHUNK_ROWS // m)
    for lo in range(0, m, step):
        a = np.repeat(Q[lo:lo + step], m)
        b = np.tile(Q, len(Q[lo:lo + step]))
        star[lo:lo + step] = pos[G.conj(a, b)].reshape(-1, m)
        bar[lo:lo + step] = pos[G.conj(a, G.inverses[b])].reshape(-1, m)
    return Q, pos, ColourTables(star, bar)


# -- search plan ---------------------------------------------------------------

def _closure(code: WirtingerCode, known: set, closed: bool):
    """Arcs determined by propagation from ``known``."""
    known = set(known)
    n = code.n
    changed = True
    while changed:
        changed = False
        if closed and (0 in known) != (n in known):
            known |= {0, n}
            changed = True
        for i in range(1, n + 1):
            k = code.kappa[i - 1]
            if k in (i - 1, i):
                if (i - 1 in known) != (i in known):
                    known |= {i - 1, i}
                    changed = True
            elif k in known and (i - 1 in known) != (i in known):
                known |= {i - 1, i}
                changed = True
    return known


def _build_plan(code: WirtingerCode, fixed: dict, seeds: list, closed: bool):
    """Static op list: ('fix', arc, value), ('seed', arc), ('fwd'|'bwd', i),
    ('eq', dst, src), ('check', i), ('check_eq', a, b)."""
    n = code.n
    ops = [("fix", a, v) for a, v in sorted(fixed.items())]
    known = set(fixed)
    used = set()  # crossings already consumed as derivations or checks
    closed_done = not closed

    def propagate():
        nonlocal closed_done
        progress = True
        while progress:
            progress = False
            if not closed_done:
                if 0 in known and n in known:
                    if n != 0:
                        ops.append(("check_eq", 0, n))
                    closed_done = True
                elif 0 in known or n in known:
                    src, dst = (0, n) if 0 in known else (n, 0)
                    ops.append(("eq", dst, src))
                    known.add(dst)
                    closed_done = progress = True
            for i in range(1, n + 1):
                if i in used:
                    continue
                k = code.kappa[i - 1]
                kink = k in (i - 1, i)
                a, b = i - 1 in known, i in known
                if kink:
                    if a and b:
                        ops.append(("check_eq", i - 1, i))
                        used.add(i)
                    elif a or b:
                        ops.append(("eq", i, i - 1) if a else ("eq", i - 1, i))
                        known.update((i - 1, i))
                        used.add(i)
                        progress = True
                    continue
                if k not in known:
                    continue
                if a and b:
                    ops.append(("check", i))
                    used.add(i)
                elif a:
                    ops.append(("fwd", i))
                    known.add(i)
                    used.add(i)
                    progress = True
                elif b:
                    ops.append(("bwd", i))
                    known.add(i - 1)
                    used.add(i)
                    progress = True

    propagate()
    for s in seeds:
        if s in known:
            continue
        ops.append(("seed", s))
        known.add(s)
        propagate()
    if len(known) != n + 1:
        raise VerificationFailure("seed set does not determine every arc")
    return ops


def _plan_score(ops):
    """Prefer plans that filter early: checks counted per seed level."""
    level, score = 0, []
    for op in ops:
        if op[0] == "seed":
            level += 1
        elif op[0] in ("check", "check_eq"):
            score.append(level)
    # fewer seeds first, then as many checks as possible at low levels
    seeds = level
    return (seeds, [sum(1 for s in score if s <= j) * -1 for j in range(1, seeds + 1)])


def choose_seeds(code: WirtingerCode, fixed_arcs, closed: bool = True, budget: int = 20000):
    """Smallest seed set (exhaustive up to ``budget`` candidates per size, then greedy)."""
    n = code.n
    base = _closure(code, set(fixed_arcs), closed)
    free = [a for a in range(n + 1) if a not in base]
    if not free:
        return []
    for size in range(1, len(free) + 1):
        if math.comb(len(free), size) > budget:
            break
        best = None
        for combo in itertools.combinations(free, size):
            if len(_closure(code, base | set(combo), closed)) != n + 1:
                continue
            for order in (itertools.permutations(combo) if size <= 3 else [combo]):
                plan = _build_plan(code, {a: 0 for a in fixed_arcs}, list(order), closed)
                sc = _plan_score(plan)
                if best is None or sc < best[0]:
                    best = (sc, list(order))
        if best is not None:
            return best[1]
    # greedy: repeatedly add the arc that determines the most others
    seeds, known = [], base
    while len(known) != n + 1:
        arc = max((a for a in free if a not in known),
                  key=lambda a: (len(_closure(code, known | {a}, closed)), -a))
        seeds.append(arc)
        known = _closure(code, known | {arc}, closed)
    return seeds


# -- execution -----------------------------------------------------------------

class _Counter:
    def __init__(self, cap):
        self.cap, self.nodes = cap, 0

    def add(self, k):
        self.nodes += k
        if self.nodes > self.cap:
            raise SearchLimitExceeded(f"search exceeded the node cap of {self.cap}")


def _apply(ops, states, code, tables, m, counter, out):
    """Run ``ops`` on a block of partial states, appending survivors to ``out``."""
    for idx, op in enumerate(ops):
        if len(states) == 0:
            return
        kind = op[0]
        if kind == "fix":
            states[:, op[1]] = op[2]
        elif kind == "seed":
            arc = op[1]
            counter.add(len(states) * m)
            per = max(1, CHUNK_ROWS // m)
            for lo in range(0, len(states), per):
                block = np.repeat(states[lo:lo + per], m, axis=0)
                block[:, arc] = np.tile(np.arange(m, dtype=states.dtype), len(block) // m)
                _apply(ops[idx + 1:], block, code, tables, m, counter, out)
            return
        elif kind in ("fwd", "bwd", "check"):
            i = op[1]
            k, e = code.kappa[i - 1], code.eps[i - 1]
            over = states[:, k]
            if kind == "bwd":
                tab = tables.bar if e == 1 else tables.star
                states[:, i - 1] = tab[states[:, i], over]
            else:
                tab = tables.star if e == 1 else tables.bar
                val = tab[states[:, i - 1], over]
                if kind == "fwd":
                    states[:, i] = val
                else:
                    states = states[val == states[:, i]]
        elif kind == "eq":
            states[:, op[1]] = states[:, op[2]]
        elif kind == "check_eq":
            states = states[states[:, op[1]] == states[:, op[2]]]
    if len(states):
        out.append(states)


def _run_plan(ops, code, tables, first_values=None, node_cap=DEFAULT_NODE_CAP):
    """Execute a plan; ``first_values`` restricts the first seed (for workers)."""
    m = tables.size
    dtype = tables.star.dtype
    counter = _Counter(node_cap)
    out = []
    states = np.full((1, code.n + 1), -1, dtype=dtype)
    if first_values is not None:
        # replace the first seed op by an explicit block of values
        j = next(j for j, op in enumerate(ops) if op[0] == "seed")
        pre, arc, post = ops[:j], ops[j][1], ops[j + 1:]
        head = []
        _apply(pre, states, code, tables, m, counter, head)
        for block in head:
            vals = np.asarray(first_values, dtype=dtype)
            counter.add(len(block) * len(vals))
            big = np.repeat(block, len(vals), axis=0)
            big[:, arc] = np.tile(vals, len(block))
            _apply(post, big, code, tables, m, counter, out)
    else:
        _apply(ops, states, code, tables, m, counter, out)
    if not out:
        return np.empty((0, code.n + 1), dtype=dtype)
    return np.concatenate(out)


def _worker(args):
    return _run_plan(*args)


def _sort_rows(rows):
    if len(rows) == 0:
        return rows
    return rows[np.lexsort(rows.T[::-1])]


def solve(code: WirtingerCode, tables: ColourTables, fixed: dict, closed: bool = True,
          workers: int = 1, node_cap: int = DEFAULT_NODE_CAP) -> np.ndarray:
    """All colour assignments (rows over arcs 0..n) in lexicographic order."""
    seeds = choose_seeds(code, list(fixed), closed)
    ops = _build_plan(code, fixed, seeds, closed)
    if workers <= 1 or not seeds:
        rows = _run_plan(ops, code, tables, None, node_cap)
    else:
        m = tables.size
        parts = [list(r) for r in np.array_split(np.arange(m), min(workers, m)) if len(r)]
        jobs = [(ops, code, tables, part, node_cap // len(parts)) for part in parts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_worker, jobs))
        rows = np.concatenate(chunks)
    _verify_rows(rows, code, tables, closed)
    return _sort_rows(rows)


def _verify_rows(rows, code, tables, closed):
    for i in range(1, code.n + 1):
        k, e = code.kappa[i - 1], code.eps[i - 1]
        tab = tables.star if e == 1 else tables.bar
        if np.any(tab[rows[:, i - 1], rows[:, k]] != rows[:, i]):
            raise VerificationFailure(f"colouring violates crossing {i}")
    if closed and np.any(rows[:, 0] != rows[:, code.n]):
        raise VerificationFailure("colouring does not close up")


# -- group colourings ----------------------------------------------------------

@dataclass(frozen=True)
class ColouringAssignment:
    arcs: tuple  # group element indices for arcs 0..n
    longitude: int

    def partial_longitudes(self, code: WirtingerCode, G: PointedGroup):
        """Prefix products l_0 = 1, l_i = l_{i-1} x_{i-1}^-e x_k^e."""
        out, acc = [G.identity], G.identity
        for i in range(1, code.n + 1):
            k, e = code.kappa[i - 1], code.eps[i - 1]
            acc = G.mul(acc, G.mul(G.power(self.arcs[i - 1], -e), G.power(self.arcs[k], e)))
            out.append(acc)
        return out

    def to_json(self, G: PointedGroup):
        return {"arcs": [G.format_element(g) for g in self.arcs],
                "longitude": G.format_element(self.longitude)}


def _prepare(G: PointedGroup, core: bool):
    if core:
        G = colouring_core(G)
    return G


def _group_solution(code, G, workers, node_cap):
    Q, pos, tables = class_tables(G)
    x = int(pos[G.basepoint])
    rows = solve(code, tables, {0: x, code.n: x}, True, workers, node_cap)
    return Q[rows] if len(rows) else np.empty((0, code.n + 1), dtype=np.int64)


def longitudes(code: WirtingerCode, G: PointedGroup, arcs: np.ndarray) -> np.ndarray:
    """Vectorized product over crossings of x_{i-1}^-e x_k^e for each row."""
    acc = np.zeros(len(arcs), dtype=np.int64)
    for i in range(1, code.n + 1):
        k, e = code.kappa[i - 1], code.eps[i - 1]
        under, over = arcs[:, i - 1], arcs[:, k]
        if e == 1:
            step = G.mul_many(G.inverses[under], over)
        else:
            step = G.mul_many(under, G.inverses[over])
        acc = G.mul_many(acc, step)
    return np.asarray(acc, dtype=np.int64)


def enumerate_colourings(code: WirtingerCode, G: PointedGroup, workers: int = 1,
                         node_cap: int = DEFAULT_NODE_CAP, core: bool = False):
    """Every colouring with arcs 0 and n coloured by the basepoint, with its longitude."""
    G = _prepare(G, core)
    arcs = _group_solution(code, G, workers, node_cap)
    longs = longitudes(code, G, arcs)
    _check_longitudes(G, longs)
    return [ColouringAssignment(tuple(int(v) for v in row), int(l)) for row, l in zip(arcs, longs)]


def _check_longitudes(G, longs):
    x = G.basepoint
    lam = G.longitude_subgroup()
    for l in set(longs.tolist()):
        if G.mul(l, x) != G.mul(x, l):
            raise VerificationFailure("longitude does not commute with the meridian")
        if l not in lam:
            raise VerificationFailure("longitude outside the longitude subgroup")


def colouring_polynomial(code: WirtingerCode, G: PointedGroup, workers: int = 1,
                         node_cap: int = DEFAULT_NODE_CAP, core: bool = False) -> RingElement:
    """Sum of the longitude images over all colourings, as an element of ZG."""
    G = _prepare(G, core)
    arcs = _group_solution(code, G, workers, node_cap)
    longs = longitudes(code, G, arcs)
    _check_longitudes(G, longs)
    return RingElement.from_elements(G, longs)


def colouring_number(code: WirtingerCode, G: PointedGroup, **kw) -> int:
    G = _prepare(G, kw.pop("core", False))
    return len(_group_solution(code, G, kw.get("workers", 1), kw.get("node_cap", DEFAULT_NODE_CAP)))


def conjugacy_classes(G: PointedGroup):
    """Class representatives (smallest index) and sizes."""
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if not seen[g]:
            cls = G.conjugacy_class(g)
            seen[cls] = True
            reps.append((g, len(cls)))
    return reps


def total_colouring_number(code: WirtingerCode, G: PointedGroup, **kw) -> int:
    """|Hom(knot group, G)|: per-class counts scaled by class size."""
    total = 0
    for rep, size in conjugacy_classes(G):
        total += size * colouring_number(code, G.with_basepoint(rep), **kw)
    return total


# -- quandle colourings ----------------------------------------------------------

def quandle_colourings(code: WirtingerCode, quandle, basepoint: int | None = None,
                       closed: bool = True, listing: bool = False,
                       workers: int = 1, node_cap: int = DEFAULT_NODE_CAP):
    """Count (or list) colourings by a quandle with tables ``star``/``bar``.

    With a basepoint, arc 0 is fixed to it; ``closed`` also demands that the
    last arc carries the colour of the first.
    """
    tables = ColourTables(np.asarray(quandle.star), np.asarray(quandle.bar))
    fixed = {} if basepoint is None else {0: int(basepoint)}
    if not closed or basepoint is None:
        rows = solve(code, tables, fixed, closed, workers, node_cap) if fixed or code.n else None
        if rows is None:
            rows = np.arange(tables.size, dtype=tables.star.dtype)[:, None]
    else:
        rows = solve(code, tables, fixed, closed, workers, node_cap)
    if basepoint is None and code.n == 0:
        rows = np.arange(tables.size, dtype=tables.star.dtype)[:, None]
    return rows if listing else len(rows)


# -- congruences -------------------------------------------------------------------

def _prime_power(k):
    if k < 2:
        return None
    p = next(d for d in range(2, k + 1) if k % d == 0)
    while k % p == 0:
        k //= p
    return p if k == 1 else None


def check_prime_congruence(poly: RingElement, G: PointedGroup | None = None, p: int | None = None):
    """True iff poly = 1 mod p (identity coefficient 1, others 0, modulo p).

    ``p`` defaults to the prime whose power is the order of conjugation by
    the basepoint.  Returns ``None`` when that order is not a prime power.
    """
    G = poly.group if G is None else G
    if p is None:
        p = _prime_power(G.inner_order())
        if p is None:
            return None
    for g, c in poly.terms.items():
        want = 1 if g == G.identity else 0
        if (c - want) % p:
            return False
    return (poly.coefficient(G.identity) - 1) % p == 0
