"""Integer group ring ZG, the value domain of every invariant in the package."""
from __future__ import annotations

import json
from collections import defaultdict
from typing import Callable, Mapping

import numpy as np

from .groups import GroupMap, PointedGroup, build_named_group


class RingElement:
    """A finite formal sum of group elements with integer coefficients.

    Terms are stored sparsely as ``{element index: coefficient}``; zero
    coefficients are dropped on construction.
    """

    __slots__ = ("group", "terms")

    def __init__(self, group: PointedGroup, terms: Mapping[int, int] | None = None):
        self.group = group
        clean = {}
        for g, c in (terms or {}).items():
            g, c = int(g), int(c)
            if not 0 <= g < group.order:
                raise ValueError(f"element {g} is not in {group.name}")
            if c:
                clean[g] = clean.get(g, 0) + c
        self.terms = {g: c for g, c in clean.items() if c}

    @classmethod
    def one(cls, group):
        return cls(group, {group.identity: 1})

    @classmethod
    def from_elements(cls, group, elements):
        """Sum of the listed elements, with multiplicity."""
        counts = defaultdict(int)
        for g in np.asarray(elements).ravel().tolist():
            counts[g] += 1
        return cls(group, counts)

    def _check(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if not same_carrier(self.group, other.group):
            raise ValueError(f"carrier mismatch: {self.group.name} vs {other.group.name}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElement(self.group, {self.group.identity: other})
        self._check(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, 0) + c
        return RingElement(self.group, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.group, {g: c * other for g, c in self.terms.items()})
        return ring_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElement(self.group, {self.group.identity: other})
        if not isinstance(other, RingElement):
            return NotImplemented
        return same_carrier(self.group, other.group) and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.group), frozenset(self.terms.items())))

    def coefficient(self, g: int) -> int:
        return self.terms.get(int(g), 0)

    def support(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"RingElement({self.group.name}: {render(self)})"

    def __str__(self):
        return render(self)


def same_carrier(G: PointedGroup, H: PointedGroup) -> bool:
    return G is H or (G.order == H.order and G.degree == H.degree and np.array_equal(G.perms, H.perms))


def ring_multiply(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    G = a.group
    out = defaultdict(int)
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            out[G.mul(u, v)] += cu * cv
    return RingElement(G, out)


def augmentation(a: RingElement) -> int:
    return sum(a.terms.values())


def apply_map(a: RingElement, m, kind: str = "obv") -> RingElement:
    """Extend an element map linearly.

    ``kind`` is ``inv`` (m ignored, g -> g^-1), ``obv``/``rev``/``hom``
    (m is a GroupMap or array of images, defined on the support), or
    ``projection``: m is a callable returning an element index or ``None``
    (meaning zero), possibly into a different carrier given as
    ``m.target``.
    """
    G = a.group
    if kind == "inv":
        return RingElement(G, {int(G.inverses[g]): c for g, c in a.terms.items()})
    if kind == "projection":
        target = getattr(m, "target", G)
        out = defaultdict(int)
        for g, c in a.terms.items():
            img = m(g)
            if img is not None:
                out[int(img)] += c
        return RingElement(target, out)
    images = m.images if isinstance(m, GroupMap) else m
    target = m.target if isinstance(m, GroupMap) else G
    out = defaultdict(int)
    for g, c in a.terms.items():
        img = images[g]
        if img is None or (isinstance(img, (int, np.integer)) and img < 0):
            raise ValueError(f"map undefined on support element {G.format_element(g)}")
        out[int(img)] += c
    return RingElement(target, out)


def render(a: RingElement, var: str = "t", generator: int | None = None) -> str:
    """Canonical text form.

    When the support lies in the cyclic group generated by ``generator``
    (default: the longitude subgroup's chosen generator), the output is a
    polynomial ``1 + 11*t^3 + 11*t^7`` with exponents in [0, order).
    Otherwise an explicit sum over elements in cycle notation.
    """
    G = a.group
    if not a.terms:
        return "0"
    if generator is None:
        generator = G.longitude_subgroup().generator()
    if generator is not None:
        powers, h, k = {}, G.identity, 0
        while k == 0 or h != G.identity:
            powers[h] = k
            h, k = G.mul(h, generator), k + 1
        if all(g in powers for g in a.terms):
            parts = []
            for g in sorted(a.terms, key=powers.get):
                c, e = a.terms[g], powers[g]
                mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
                if not mono:
                    parts.append(str(c))
                elif c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{c}*{mono}")
            return _join(parts)
    parts = []
    for g in sorted(a.terms, key=lambda g: (g != G.identity, G.perms[g].tolist())):
        c = a.terms[g]
        elem = "1" if g == G.identity else G.format_element(g)
        parts.append(elem if c == 1 and g != G.identity else f"{c}*{elem}" if g != G.identity else str(c))
    return _join(parts)


def _join(parts):
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


def polynomial(G: PointedGroup, coeffs: Mapping[int, int], generator: int | None = None) -> RingElement:
    """Build sum c_k * t^k for the generator t (default: the basepoint)."""
    t = G.basepoint if generator is None else generator
    out = defaultdict(int)
    for k, c in coeffs.items():
        out[G.power(t, k)] += c
    return RingElement(G, out)


def to_json(a: RingElement) -> dict:
    G = a.group
    return {
        "group": G.meta.get("descriptor", G.name),
        "basepoint": G.format_element(G.basepoint),
        "terms": [{"elem": G.format_element(g), "coeff": c}
                  for g, c in sorted(a.terms.items(), key=lambda gc: G.perms[gc[0]].tolist())],
    }


def from_json(data, group: PointedGroup | None = None) -> RingElement:
    if isinstance(data, str):
        data = json.loads(data)
    if group is None:
        group = build_named_group(data["group"], data.get("basepoint"))
    return RingElement(group, {group.parse_element(t["elem"]): t["coeff"] for t in data["terms"]})
