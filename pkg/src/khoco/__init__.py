"""khoco: CSS code parameters from Khovanov-type chain complexes."""

from .diagram import (Crossing, CubeEdge, FreeLoop, LinkDiagram, Resolution,
                      connect_sum, disjoint_union, from_braid, mirror,
                      parse_diagram, to_json)
from .gflinear import GFMatrix, GFVector, in_image, kernel_basis, rank
from .khovanov import (BasisElement, ChainComplex, ChainMap, build_complex,
                       comultiply_label, dual_complex, multiply_labels,
                       reduction_iso)
from .distance import (CodeReport, brute_oracle, css_distance,
                       dist2_necessary, homology_dims, min_weight_nontrivial)
from .products import (FamilyParams, closed_form_params, connect_sum_check,
                       family_cross_check, hopf_recursion_check, tensor,
                       tensor_upper_bound)
from .annular import (AnnularBasisElement, annular_unlink_family,
                      build_annular_complex, tangle_closure_iso_check)
from .sl3 import (BoxVector, ClosedThetaFoam, ThetaBasisVector, box_dual,
                  box_mul, build_sl3_complex, evaluate_closed_foam, expand_F,
                  min_combo_weight, sl3_unknot_params, theta_pairing_matrix)
from .sequences import (ExactSequence, hopf_c_seq, ratio_convergence,
                        series_coeffs)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
