"""
Torsion of lens spaces.

Builds the equivariant cellular complex of L(7; 1, 1) and L(7; 1, 2) over
Z[Z_7], evaluates it at each nontrivial 7th root of unity and compares the
result with the closed form prod_i (eta^{r_i} - 1)^{-1}.  The two spaces have
the same homotopy type but different R-torsion tables, so they are not
simple homotopy equivalent.
"""
from rtorsion import (LensSpace, class_equal, homotopy_equivalent, lens_chain_complex,
                      lens_torsion, simple_homotopy_equivalent, specialize, torsion_milnor,
                      whitehead_image)
from rtorsion.spaces import eta, lens_ambiguity


def table(L):
    C = lens_chain_complex(L)
    print(f"{L}: ranks {C.ranks}, r = {L.r}")
    for k in range(1, L.p):
        rep = eta(L.p, k)
        closed = lens_torsion(L, rep)
        chain = torsion_milnor(specialize(C, rep)).with_ambiguity(lens_ambiguity(L, rep))
        print(f"  k={k}  |tau|^2 = {closed.modulus_squared:.6f}  "
              f"chain complex agrees mod +-eta^j: {class_equal(chain, closed)}")


def main():
    L1, L2 = LensSpace(7, (1, 1)), LensSpace(7, (1, 2))
    table(L1)
    table(L2)

    h, m = homotopy_equivalent(L1, L2)
    s, _ = simple_homotopy_equivalent(L1, L2)
    print(f"homotopy equivalent: {h} (m = {m}); simple homotopy equivalent: {s}")

    # torsion of the homotopy equivalence, pushed into C through eta
    for k in (1, 2, 3):
        w = whitehead_image(L1, L2, m, eta(7, k))
        print(f"  |h_* tau(f)|^2 at k={k}: {w.modulus_squared:.4f}")


if __name__ == "__main__":
    main()
