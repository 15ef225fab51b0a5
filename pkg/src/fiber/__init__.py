"""
Fiber Algebra - pointwise linear algebra of (V, g)
Compatible complex structures, so(V) geometry, Λ² calculus, metric transfer and SO(4) factorization
"""

from .spaces import (
    InnerProductSpace,
    Endomorphism,
    OrthogonalComplexStructure,
    TwoVector,
    VerticalVector,
    lambda2_gram,
    orientation_sign,
    pair_indices,
    standard_complex_structure,
)
from .so_algebra import (
    fiber_complex_structure,
    hom_metric,
    hom_norm,
    so_metric,
    vertical_basis,
    vertical_dimension,
    vertical_project,
)
from .wedge import (
    commutator_wedge,
    decomposable_endo,
    endo_of_wedge,
    hodge_matrix,
    hodge_split,
    hodge_star,
    s_basis,
    wedge_of_endo,
)
from .transfer import (
    MetricTransfer,
    log_integral,
    make_compatible_structure,
    principal_sqrt,
    psi_map,
    psi_point,
    sqrt_via_log_integral,
    transfer_endomorphism,
)
from .sampling import (
    conjugation_action,
    random_almost_complex,
    random_compatible,
    random_endomorphism,
    random_orthogonal,
    random_skew,
    random_space,
    random_spd,
    random_unit_vector,
)
from .isoclinic import (
    conjugate,
    isoclinic_factor,
    left_isoclinic,
    quaternion_rotation,
    random_special_orthogonal,
    right_isoclinic,
)

__all__ = [
    # Types
    'InnerProductSpace',
    'Endomorphism',
    'OrthogonalComplexStructure',
    'TwoVector',
    'VerticalVector',
    'lambda2_gram',
    'orientation_sign',
    'pair_indices',
    'standard_complex_structure',

    # so(V)
    'so_metric',
    'hom_metric',
    'hom_norm',
    'vertical_project',
    'vertical_basis',
    'vertical_dimension',
    'fiber_complex_structure',

    # Λ²
    'wedge_of_endo',
    'endo_of_wedge',
    'decomposable_endo',
    'commutator_wedge',
    'hodge_star',
    'hodge_matrix',
    'hodge_split',
    's_basis',

    # Transfer
    'MetricTransfer',
    'transfer_endomorphism',
    'principal_sqrt',
    'log_integral',
    'sqrt_via_log_integral',
    'psi_map',
    'psi_point',
    'make_compatible_structure',

    # Sampling
    'random_compatible',
    'random_orthogonal',
    'random_spd',
    'random_space',
    'random_skew',
    'random_endomorphism',
    'random_almost_complex',
    'random_unit_vector',
    'conjugation_action',

    # SO(4)
    'isoclinic_factor',
    'left_isoclinic',
    'right_isoclinic',
    'quaternion_rotation',
    'conjugate',
    'random_special_orthogonal',
]

__version__ = "1.1.0"
__description__ = "Fiber algebra of compatible complex structures"
