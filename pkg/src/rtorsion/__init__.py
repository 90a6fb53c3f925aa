"""
rtorsion: Reidemeister, R- and analytic torsion.

Exact group-ring arithmetic, based chain complexes over Z[Z_p], Z and C,
four independent torsion algorithms, lens-space constructors and
classification predicates, and the zeta-regularized torsion of the circle.
"""
from .analytic import (CircleBundle, cheeger_muller_check, cheeger_muller_report,
                       circle_det_laplacian, circle_rs_torsion, circle_zeta, hurwitz_zeta,
                       hurwitz_zeta_ds)
from .chain_complex import (COMPLEX, INTEGER, BasedChainComplex, HomologyBasis, Ring,
                            augmentation, direct_sum, dual_complex, group_ring, homology_ranks,
                            integral_homology, specialize, tensor_product, validate)
from .errors import (InvalidComplexError, NonAcyclicError, NotExactError, RingMismatchError,
                     TorsionError)
from .group_ring import (Ambiguity, GroupRingElement, Representation, TorsionClass, add,
                         class_equal, evaluate, involution, mul)
from .spaces import (LensSpace, circle_complex, franz_search, homeomorphic_3d,
                     homotopy_equivalent, lens_chain_complex, lens_torsion, pants_torsion,
                     profiles_match, simple_homotopy_equivalent, three_dim_R_torsion,
                     torsion_profile, whitehead_image)
from .torsion import (ChainContraction, HodgeData, build_contraction, harmonic_basis, hodge,
                      laplacian_torsion, les_torsion, torsion_alternating, torsion_contraction,
                      torsion_milnor)

__version__ = "0.1.0"
