"""
Riemann Engine - chart-based Riemannian geometry for metric pairs
Connections, curvature operators, the Weyl decomposition and conformal-change utilities
"""

from .factors import (
    ConformalFactor,
    ConstantFactor,
    LinearFactor,
    QuadraticFactor,
    StereographicFactor,
    parse_factor,
)
from .metrics import (
    BUILTIN_METRICS,
    ConformalTag,
    MetricField,
    MetricPair,
    build_metric,
    conformal_metric,
    constant_metric,
    diag_metric,
    flat_metric,
    normalize_metric_spec,
    product_metric,
    round_sphere_metric,
    verify_derivatives,
)
from .connection import (
    apply_difference,
    christoffel,
    christoffel_derivative,
    conformal_difference_tensor,
    connection_matrix,
    cov_deriv_endofield,
    cov_deriv_vectorfield,
    difference_tensor,
    gradient,
    koszul_difference,
    metric_compatibility_residual,
    second_cov_deriv_endofield,
    sigma_form,
    transfer_derivatives,
)
from .curvature import (
    CurvatureData,
    CurvatureParts,
    bianchi_residual,
    contracted_bianchi_ratio,
    curvature,
    curvature_on_bivector,
    decompose,
    hodge_conformal_residual,
    hom_curvature,
    is_anti_self_dual,
    is_self_dual,
    operator_norm,
    operator_pairing,
    ricci_contraction,
    weyl_conformal_residual,
)

__all__ = [
    # Factors
    'ConformalFactor',
    'ConstantFactor',
    'LinearFactor',
    'QuadraticFactor',
    'StereographicFactor',
    'parse_factor',

    # Metrics
    'MetricField',
    'MetricPair',
    'ConformalTag',
    'BUILTIN_METRICS',
    'build_metric',
    'normalize_metric_spec',
    'flat_metric',
    'constant_metric',
    'diag_metric',
    'conformal_metric',
    'round_sphere_metric',
    'product_metric',
    'verify_derivatives',

    # Connection
    'christoffel',
    'christoffel_derivative',
    'connection_matrix',
    'apply_difference',
    'gradient',
    'conformal_difference_tensor',
    'difference_tensor',
    'metric_compatibility_residual',
    'cov_deriv_vectorfield',
    'cov_deriv_endofield',
    'second_cov_deriv_endofield',
    'transfer_derivatives',
    'sigma_form',
    'koszul_difference',

    # Curvature
    'CurvatureData',
    'CurvatureParts',
    'curvature',
    'decompose',
    'operator_pairing',
    'operator_norm',
    'ricci_contraction',
    'curvature_on_bivector',
    'hom_curvature',
    'bianchi_residual',
    'weyl_conformal_residual',
    'hodge_conformal_residual',
    'is_self_dual',
    'is_anti_self_dual',
    'contracted_bianchi_ratio',
]

__version__ = "1.1.0"
__description__ = "Levi-Civita connections and curvature on a single chart"
