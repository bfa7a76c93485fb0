"""
Colouring the trefoil
=====================

A walk through the basic objects: a braid, its long-knot Wirtinger code,
the colourings of that code by the alternating group A5, and the
polynomial that collects their longitudes.
"""
import numpy as np

from colpoly import (braid_to_long_wirtinger, build_named_group, colouring_polynomial, enumerate_colourings,
                     parse_braid_word, render)

# %% The knot
# Three negative half-twists on two strands close up to the left trefoil.
braid = parse_braid_word("s1^-3")
code = braid_to_long_wirtinger(braid)
print("braid:", braid)
print("over-arc per crossing:", code.kappa)
print("crossing signs:      ", code.eps)

# %% The group
# A5 pointed at a 5-cycle.  The colours live in the conjugacy class of x,
# which has 12 elements.
G = build_named_group("A5", "(1,2,3,4,5)")
print(G, "class size", len(G.conjugacy_class()))

# %% Colourings
# Arc 0 always carries x; each crossing decides the next arc.
cols = enumerate_colourings(code, G)
for c in cols:
    print(" ".join(G.format_element(g) for g in c.arcs), "| longitude", G.format_element(c.longitude))

# %% The polynomial
# One trivial colouring has longitude 1, the other five all have longitude x.
P = colouring_polynomial(code, G)
print("P =", render(P, "x", G.basepoint))

# %% Mirror image
mirror = braid_to_long_wirtinger(parse_braid_word("s1^3"))
print("mirror P =", render(colouring_polynomial(mirror, G), "x", G.basepoint))

# %% Longitude histogram as an array
longs = np.array([c.longitude for c in cols])
values, counts = np.unique(longs, return_counts=True)
print(dict(zip((G.format_element(v) for v in values), counts.tolist())))
