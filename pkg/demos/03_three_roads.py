"""
Three roads to one number
=========================

The colouring polynomial times |Q| also comes out of a cocycle state sum on
the conjugation quandle and out of the trace of a braid representation
built from a Yang-Baxter operator.  The long-knot partial trace of the
covering-quandle operator gives the polynomial itself.
"""
from colpoly import (braid_to_long_wirtinger, build_named_group, colouring_polynomial, load_fixture,
                     render, state_sum)
from colpoly.quandle import section_cocycle
from colpoly.yang_baxter import build_yb_operator, closed_trace, covering_operator, long_partial_trace

G = build_named_group("PSL2_7", "mat:1,1,0,1")
lam = section_cocycle(G)
Q = lam.quandle
op = build_yb_operator(G)
cop, cov = covering_operator(G)
print(f"|Q| = {Q.size}, |Lambda| = {lam.labels.order}, covering quandle of size {cov.size}")


def fmt(P):
    return render(P, "x", G.basepoint)


for name in ("trefoil_left", "fig8"):
    braid = load_fixture(name).braid()
    code = braid_to_long_wirtinger(braid)
    P = colouring_polynomial(code, G)
    print(f"\n{name}")
    print("  colouring polynomial   ", fmt(P))
    print("  state sum / |Q|        ", fmt(state_sum(code, Q, lam)), "/", Q.size)
    print("  closed trace / |Q|     ", fmt(closed_trace(braid, op)), "/", Q.size)
    print("  long partial trace     ", fmt(long_partial_trace(braid, cop, cov)))
