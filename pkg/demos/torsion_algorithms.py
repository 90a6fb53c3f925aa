"""
Four ways to compute the torsion of an acyclic complex.

A random acyclic complex over C is fed to the Milnor (transition matrix),
chain contraction, alternating determinant and Laplacian algorithms.  The
first two see the full complex number, the last two only its modulus.
"""
import numpy as np

from rtorsion import (build_contraction, laplacian_torsion, torsion_alternating,
                      torsion_contraction, torsion_milnor)
from rtorsion.chain_complex import random_acyclic_complex
from rtorsion.torsion import random_contraction


def main(seed=7):
    rng = np.random.default_rng(seed)
    C = random_acyclic_complex(rng, max_degree=4, max_rank=6)
    print(f"ranks {C.ranks}")

    milnor = torsion_milnor(C).value
    kappa = build_contraction(C)
    homotopy, square = kappa.residuals(C)
    print(f"|d kappa + kappa d - 1| = {homotopy:.1e}, |kappa^2| = {square:.1e}")
    contraction = torsion_contraction(C, kappa).value
    other = torsion_contraction(C, random_contraction(C, rng)).value
    alternating = torsion_alternating(C)
    laplacian, _ = laplacian_torsion(C)

    print(f"Milnor               {milnor:.10f}")
    print(f"contraction (pinv)   {contraction:.10f}")
    print(f"contraction (random) {other:.10f}")
    print(f"alternating          {alternating:.10f}")
    print(f"Laplacian            {laplacian:.10f}")
    spread = max(abs(x - abs(milnor)) for x in (abs(contraction), alternating, laplacian))
    print(f"max spread of moduli {spread / abs(milnor):.1e}")


if __name__ == "__main__":
    main()
