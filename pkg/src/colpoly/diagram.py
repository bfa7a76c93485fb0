"""Knot diagrams: braid words, PD codes and long-knot Wirtinger codes.

A long-knot Wirtinger code ``(kappa, eps)`` numbers the arcs 0..n along the
orientation.  At the end of arc i-1 the knot passes under arc ``kappa[i]``
with sign ``eps[i]`` and continues on arc i; a colouring then satisfies
``x_i = x_k^-e x_{i-1} x_k^e``.

Sign conventions (fixed once, see ``fixtures/README``):

* braid letter ``s_i`` acts on colours by ``(a, b) -> (b, a*b)``, read from
  right to left; the strand moving from position i to i+1 passes under, and
  the crossing gets ``eps = +1``;
* a PD crossing ``X[a,b,c,d]`` lists edges counterclockwise starting from the
  incoming under-edge ``a``; it has ``eps = +1`` iff the over-strand runs
  from ``d`` to ``b``.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import HypothesisError, ParseError


@dataclass(frozen=True)
class WirtingerCode:
    kappa: tuple[int, ...]  # kappa[i-1] = over-arc at crossing i
    eps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        object.__setattr__(self, "eps", tuple(int(e) for e in self.eps))
        n = len(self.kappa)
        if len(self.eps) != n:
            raise ParseError("kappa and eps must have the same length")
        if any(not 0 <= k <= n for k in self.kappa):
            raise ParseError(f"kappa values must lie in 0..{n}")
        if any(e not in (1, -1) for e in self.eps):
            raise ParseError("eps values must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def arcs(self) -> int:
        return self.n + 1

    def writhe(self):
        return sum(self.eps)

    def to_json(self):
        return {"kappa": list(self.kappa), "eps": list(self.eps)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad Wirtinger JSON: {exc}") from None
        return cls(data["kappa"], data["eps"])


UNKNOT = WirtingerCode((), ())


# -- braid words ---------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        for i, s in self.letters:
            if not 1 <= i < self.strands:
                raise ParseError(f"generator index {i} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise ParseError("letter signs must be +1 or -1")

    def __len__(self):
        return len(self.letters)

    def closure_permutation(self) -> list[int]:
        """Where each right-end position ends up on the left (0-based)."""
        pos = list(range(self.strands))  # pos[p] = original right-end position now at p
        for i, _ in reversed(self.letters):
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        perm = [0] * self.strands
        for p, orig in enumerate(pos):
            perm[orig] = p
        return perm

    def components(self) -> int:
        perm, seen, count = self.closure_permutation(), set(), 0
        for s in range(self.strands):
            if s not in seen:
                count += 1
                while s not in seen:
                    seen.add(s)
                    s = perm[s]
        return count

    def is_knot(self):
        return self.components() == 1

    def to_text(self):
        return " ".join(f"s{i}" if s == 1 else f"s{i}^-1" for i, s in self.letters) or "s1^0"

    def __str__(self):
        return self.to_text()


_ARTIN_TOKEN = re.compile(r"\s*(?:[sσ](\d+)(?:\s*\^\s*\(?\s*([+-]?\d+)\s*\)?)?)\s*[*.]?")


def parse_braid_word(text: str, strands: int | None = None, style: str = "auto") -> BraidWord:
    """Parse ``s1 s2^-1 s1^3``, compact ``aAbB`` (A = a^-1) or a list
    ``[1, -2, 1]`` into a braid word.

    Strand count defaults to the largest index plus one.
    """
    src = text.strip()
    if style == "auto":
        if src.startswith("["):
            style = "list"
        elif src == "" or re.fullmatch(r"[a-zA-Z]+", src.replace(" ", "")) and not re.search(r"\d", src):
            style = "compact"
        else:
            style = "artin"
    letters: list[tuple[int, int]] = []
    if style == "list":
        body = src.strip("[]").strip()
        for m in re.finditer(r"[^,\s]+", body):
            try:
                v = int(m.group(0))
            except ValueError:
                raise ParseError(f"bad braid letter {m.group(0)!r}", m.start() + 1) from None
            if v == 0:
                raise ParseError("braid generator index must be positive", m.start() + 1)
            letters.append((abs(v), 1 if v > 0 else -1))
    elif style == "compact":
        for pos, ch in enumerate(src):
            if ch.isspace():
                continue
            if not ch.isalpha():
                raise ParseError(f"unexpected character {ch!r}", pos)
            letters.append((ord(ch.lower()) - ord("a") + 1, 1 if ch.islower() else -1))
    elif style == "artin":
        pos = 0
        while pos < len(src):
            if src[pos].isspace():
                pos += 1
                continue
            m = _ARTIN_TOKEN.match(src, pos)
            if not m or m.end() == pos:
                raise ParseError(f"syntax error in braid word {text!r}", pos)
            idx = int(m.group(1))
            if idx <= 0:
                raise ParseError("braid generator index must be positive", pos)
            exp = int(m.group(2)) if m.group(2) is not None else 1
            letters.extend([(idx, 1 if exp > 0 else -1)] * abs(exp))
            pos = m.end()
    else:
        raise ValueError(f"unknown braid style {style!r}")
    needed = max((i for i, _ in letters), default=0) + 1
    if strands is None:
        strands = needed
    elif strands < needed:
        raise ParseError(f"word needs {needed} strands, got {strands}")
    return BraidWord(strands, tuple(letters))


def braid_symmetry(b: BraidWord, op: str) -> BraidWord:
    """inv: reversed order, inverted signs; rev: reversed order; obv: inverted signs."""
    if op in ("id", "none"):
        return b
    if op == "inv":
        return BraidWord(b.strands, tuple((i, -s) for i, s in reversed(b.letters)))
    if op == "rev":
        return BraidWord(b.strands, tuple(reversed(b.letters)))
    if op == "obv":
        return BraidWord(b.strands, tuple((i, -s) for i, s in b.letters))
    raise ValueError(f"unknown symmetry {op!r}")


def braid_to_long_wirtinger(b: BraidWord) -> WirtingerCode:
    """Close strands 2..n and cut strand 1 at its closing arc.

    Braids are read right to left: the traversal starts at the right end of
    position 1 (arc 0) and stops on reaching the left end of position 1.
    """
    if not b.is_knot():
        raise HypothesisError(f"closure of {b} has {b.components()} components")
    m = len(b.letters)
    arc_of = {}
    crossings = []  # (over slot, sign) in order of undercrossing
    pos, t, arc = 1, 0, 0
    while True:
        if t == m:
            if pos == 1:
                break
            t = 0
        if (pos, t) in arc_of:
            raise HypothesisError("braid traversal revisited a segment")
        arc_of[(pos, t)] = arc
        i, s = b.letters[m - 1 - t]
        if pos in (i, i + 1):
            other = i + 1 if pos == i else i
            under = (pos == i) if s == 1 else (pos == i + 1)
            if under:
                crossings.append(((other, t), s))
                arc += 1
            pos = other
        t += 1
    kappa = [arc_of[slot] for slot, _ in crossings]
    return WirtingerCode(kappa, [s for _, s in crossings])


# -- PD codes ------------------------------------------------------------------

@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in c) for c in self.crossings))
        counts: dict[int, int] = {}
        for c in self.crossings:
            if len(c) != 4:
                raise ParseError(f"PD crossing {c} does not have four entries")
            for v in c:
                counts[v] = counts.get(v, 0) + 1
        bad = [v for v, k in counts.items() if k != 2]
        if bad:
            raise ParseError(f"PD labels must appear exactly twice; offending: {sorted(bad)}")

    def labels(self):
        return sorted({v for c in self.crossings for v in c})

    def to_text(self):
        return "PD[" + ", ".join("X[" + ",".join(map(str, c)) + "]" for c in self.crossings) + "]"

    def __str__(self):
        return self.to_text()


def parse_pd(text: str) -> PDCode:
    """Accepts ``PD[X[1,5,2,4], ...]``, ``X[1,5,2,4] X[...]`` or ``[[1,5,2,4], ...]``."""
    src = text.strip()
    if src.startswith("PD[") and src.endswith("]"):
        src = src[3:-1]
    quads = []
    body = re.sub(r"X\s*\[", "[", src)
    body = body.strip()
    if body.startswith("[[") and body.endswith("]]"):
        body = body[1:-1]
    pos = 0
    for m in re.finditer(r"\[([^\[\]]*)\]", body):
        gap = body[pos:m.start()].strip().strip(",").strip()
        if gap:
            raise ParseError(f"unexpected text {gap!r} in PD code", pos)
        try:
            vals = [int(v) for v in m.group(1).replace(",", " ").split()]
        except ValueError:
            raise ParseError(f"non-integer PD label in {m.group(0)!r}", m.start()) from None
        quads.append(tuple(vals))
        pos = m.end()
    if body[pos:].strip().strip(","):
        raise ParseError("trailing text in PD code", pos)
    return PDCode(tuple(quads))


def _pd_endpoints(pd: PDCode):
    ends: dict[int, list[tuple[int, int]]] = {}
    for k, c in enumerate(pd.crossings):
        for p, v in enumerate(c):
            ends.setdefault(v, []).append((k, p))
    return ends


def _pd_walk(pd: PDCode, start_label: int):
    """Traverse from the middle of ``start_label`` in its direction of travel.

    Yields (crossing, entry slot, exit label) for each passage.
    """
    ends = _pd_endpoints(pd)
    occ = ends[start_label]
    # the edge is entered at slot 0 (incoming under) or left from slot 2
    heads = [e for e in occ if e[1] == 0]
    tails = [e for e in occ if e[1] == 2]
    if heads:
        k, p = heads[0]
    elif tails:
        k0, p0 = tails[0]
        k, p = next(e for e in occ if e != (k0, p0))
    else:
        k, p = _over_edge_head(pd, start_label)
    label = start_label
    steps = []
    for _ in range(2 * len(pd.crossings) + 1):
        out_slot = (p + 2) % 4
        out_label = pd.crossings[k][out_slot]
        steps.append((k, p, out_label))
        if out_label == start_label:
            return steps
        nxt = [e for e in ends[out_label] if e != (k, out_slot)]
        k, p = nxt[0]
        label = out_label
    raise ParseError("inconsistent PD code: traversal did not close")


def _over_edge_head(pd: PDCode, label: int):
    """Direction of an edge seen only at over-slots: walk from any under-edge."""
    k0 = next(k for k, c in enumerate(pd.crossings))
    steps = _pd_walk(pd, pd.crossings[k0][0])
    for idx, (k, p, out_label) in enumerate(steps):
        if out_label == label:
            nxt = steps[(idx + 1) % len(steps)]
            return nxt[0], nxt[1]
    raise ParseError(f"label {label} not reachable: PD code has several components")


def pd_signs(pd: PDCode) -> list[int]:
    if not pd.crossings:
        return []
    steps = _pd_walk(pd, pd.crossings[0][0])
    signs = [0] * len(pd.crossings)
    for k, p, _ in steps:
        if p == 3:
            signs[k] = 1
        elif p == 1:
            signs[k] = -1
    return signs


def pd_to_long_wirtinger(pd: PDCode, cut_arc: int | None = None) -> WirtingerCode:
    """Walk the single component from the middle of edge ``cut_arc``."""
    if not pd.crossings:
        return UNKNOT
    labels = pd.labels()
    if cut_arc is None:
        cut_arc = labels[0]
    if cut_arc not in labels:
        raise ParseError(f"cut edge {cut_arc} is not a PD label")
    steps = _pd_walk(pd, cut_arc)
    if len(steps) != 2 * len(pd.crossings):
        raise HypothesisError("PD code has several components")
    visits = {}
    for k, p, _ in steps:
        visits.setdefault(k, []).append(p)
    if any(sorted(v) not in ([0, 1], [0, 3]) for v in visits.values()):
        raise ParseError("inconsistent PD code: each crossing must be passed once under and once over")
    signs = pd_signs(pd)
    arc, over_arc, under_order = 0, {}, []
    for k, p, _ in steps:
        if p == 0:
            under_order.append(k)
            arc += 1
        else:
            over_arc[k] = arc
    return WirtingerCode([over_arc[k] for k in under_order], [signs[k] for k in under_order])


def pd_from_planar(crossings: Sequence[tuple[Sequence[int], int]], start_edge: int | None = None,
                   reverse: bool = False) -> PDCode:
    """Orient an unoriented planar diagram and emit a standard PD code.

    Each crossing is ``(edges, under)``: four edge ids in counterclockwise
    order, and ``under`` = 0 if slots (0,2) form the under-strand, 1 if slots
    (1,3) do.  Every edge id must occur exactly twice.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for k, (edges, _) in enumerate(crossings):
        for p, e in enumerate(edges):
            ends.setdefault(e, []).append((k, p))
    if any(len(v) != 2 for v in ends.values()):
        raise ParseError("every edge must join exactly two crossing slots")
    e0 = min(ends) if start_edge is None else start_edge
    k, p = ends[e0][1] if reverse else ends[e0][0]  # arrival point
    order, entry = [], {}
    label = e0
    for _ in range(2 * len(crossings)):
        order.append(label)
        entry.setdefault(k, []).append(p)
        out = (p + 2) % 4
        label = crossings[k][0][out]
        if label == e0:
            break
        k, p = next(x for x in ends[label] if x != (k, out))
    if len(order) != 2 * len(crossings):
        raise HypothesisError("planar diagram has several components")
    relabel = {e: i + 1 for i, e in enumerate(order)}
    quads = []
    for k, (edges, under) in enumerate(crossings):
        inc = next(s for s in entry[k] if s % 2 == under)
        rot = [edges[(inc + j) % 4] for j in range(4)]
        quads.append(tuple(relabel[e] for e in rot))
    return PDCode(tuple(quads))


# -- transforms ----------------------------------------------------------------

def wirtinger_symmetry(code: WirtingerCode, op: str) -> WirtingerCode:
    """Mirror flips every sign; reversal walks the arcs backwards."""
    n = code.n
    if op in ("id", "none"):
        return code
    if op == "obv":
        return WirtingerCode(code.kappa, tuple(-e for e in code.eps))
    if op == "rev":
        kappa = [n - code.kappa[n - j] for j in range(1, n + 1)]
        eps = [code.eps[n - j] for j in range(1, n + 1)]
        return WirtingerCode(kappa, eps)
    if op == "inv":
        return wirtinger_symmetry(wirtinger_symmetry(code, "obv"), "rev")
    raise ValueError(f"unknown symmetry {op!r}")


def connected_sum(a: WirtingerCode, b: WirtingerCode) -> WirtingerCode:
    """Concatenate long knots: arc a.n is fused with arc 0 of b."""
    shift = a.n
    return WirtingerCode(a.kappa + tuple(k + shift for k in b.kappa), a.eps + b.eps)


# handedness/orientation found by calibration against B(1,1,1) = trefoil_left
# and the M11 values of B(3,5,7); see fixtures/README
BRETZEL_POSITIVE_OVER = 0
BRETZEL_REVERSE = True


def bretzel_pd(p1: int, p2: int, p3: int) -> PDCode:
    """Pretzel diagram with three vertical twist boxes of p1, p2, p3 half-twists."""
    ps = (p1, p2, p3)
    if any(p % 2 == 0 for p in ps):
        raise HypothesisError("bretzel parameters must be odd for a knot")
    next_id = iter(range(1, 10**6))
    crossings = []
    box_ends = []
    for p in ps:
        top_l, top_r = next(next_id), next(next_id)
        left, right = top_l, top_r
        over = BRETZEL_POSITIVE_OVER if p > 0 else 1 - BRETZEL_POSITIVE_OVER
        for _ in range(abs(p)):
            sw, se = next(next_id), next(next_id)
            # counterclockwise corners: NE, NW, SW, SE; strands NE-SW (0,2), NW-SE (1,3)
            crossings.append([[right, left, sw, se], 1 - over])
            left, right = sw, se
        box_ends.append((top_l, top_r, left, right))
    # glue neighbouring boxes; the last box wraps around to the first
    alias = {}
    for j in range(3):
        tl, tr, bl, br = box_ends[j]
        ntl, ntr, nbl, nbr = box_ends[(j + 1) % 3]
        alias[ntl] = tr
        alias[nbl] = br
    planar = [([alias.get(e, e) for e in edges], under) for edges, under in crossings]
    return pd_from_planar(planar, reverse=BRETZEL_REVERSE)


def bretzel_diagram(p1: int, p2: int, p3: int) -> WirtingerCode:
    return pd_to_long_wirtinger(bretzel_pd(p1, p2, p3))


# -- fixtures ------------------------------------------------------------------

FIXTURE_NAMES = ("unknot", "trefoil_left", "trefoil_right", "fig8",
                 "kinoshita_terasaka", "conway", "bretzel_3_5_7", "8_17")
FIXTURE_ENV = "COLPOLY_FIXTURES"
_FIELDS = ("name", "encoding", "data", "provenance", "calibration")


def fixture_dir() -> Path:
    return Path(os.environ.get(FIXTURE_ENV) or Path(__file__).parent / "fixtures")


@dataclass
class KnotFixture:
    name: str
    encoding: str
    data: str
    provenance: str = ""
    calibration: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def transform(self) -> str:
        """Symmetry applied to the raw data, the first word of ``calibration``."""
        word = (self.calibration.split() or ["none"])[0].rstrip(";:,")
        return word if word in ("none", "inv", "rev", "obv") else "none"

    def braid(self) -> BraidWord | None:
        if self.encoding != "braid":
            return None
        return braid_symmetry(parse_braid_word(self.data), self.transform)

    def pd(self) -> PDCode | None:
        return parse_pd(self.data) if self.encoding == "pd" else None

    def code(self) -> WirtingerCode:
        if self.encoding == "braid":
            return braid_to_long_wirtinger(self.braid())
        if self.encoding == "pd":
            raw = pd_to_long_wirtinger(self.pd())
        elif self.encoding == "wirtinger":
            raw = WirtingerCode.from_json(self.data)
        else:
            raise ParseError(f"unknown encoding {self.encoding!r}")
        return wirtinger_symmetry(raw, self.transform)


def parse_fixture(text: str, source: str = "<string>") -> KnotFixture:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        values[key.strip()] = value.strip()
    missing = [f for f in ("name", "encoding", "data") if f not in values]
    if missing and not (values.get("encoding") and "data" in values):
        raise ParseError(f"{source}: missing fields {missing}")
    if "name" not in values or "encoding" not in values:
        raise ParseError(f"{source}: missing fields {missing}")
    values.setdefault("data", "")
    extra = {k: v for k, v in values.items() if k not in _FIELDS}
    return KnotFixture(values["name"], values["encoding"], values["data"],
                       values.get("provenance", ""), values.get("calibration", ""), extra)


def load_fixture(name: str) -> KnotFixture:
    path = fixture_dir() / f"{name}.knot"
    if not path.exists():
        raise ParseError(f"unknown knot fixture {name!r} (looked in {fixture_dir()})")
    fx = parse_fixture(path.read_text(), str(path))
    fx.code()  # validate eagerly
    return fx


def list_fixtures() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.knot"))
