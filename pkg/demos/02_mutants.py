"""
Telling the Kinoshita-Terasaka and Conway knots apart
=====================================================

The two knots share many classical invariants.  Over PSL(2,7) with the
order-7 basepoint their colouring polynomials still agree; switching the
basepoint to an element of order 3, or moving to M11, separates them.
"""
from colpoly import build_named_group, colouring_polynomial, load_fixture, render, wirtinger_symmetry

KNOTS = ["kinoshita_terasaka", "conway"]


def show(G, variants=("none",)):
    for name in KNOTS:
        code = load_fixture(name).code()
        for v in variants:
            P = colouring_polynomial(wirtinger_symmetry(code, v), G)
            label = name if v == "none" else f"{name}^{v}"
            print(f"  {label:26s} {render(P, 'x', G.basepoint)}")


# %% PSL(2,7), unipotent basepoint: no difference
print("PSL(2,7), x of order 7")
show(build_named_group("PSL2_7", "mat:1,1,0,1"), ("none", "inv"))

# %% PSL(2,7), basepoint of order 3: the coefficients differ
print("PSL(2,7), x of order 3")
show(build_named_group("PSL2_7", "mat:0,1,6,1"), ("none", "inv"))

# %% M11: the mirror images and reverses are distinguished as well
print("M11, x of order 11")
show(build_named_group("M11"), ("none", "obv", "inv", "rev"))
