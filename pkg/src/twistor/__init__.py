"""
Twistor Engine - twistor spaces of a metric pair and the metric-transfer map Ψ
J₁/J₂ structures, g_s metrics, pushforward, holomorphy and harmonicity criteria
"""

from .tangent import (
    StructureKind,
    StructurePair,
    TwistorMetricParams,
    TwistorPoint,
    TwistorTangent,
    fiber_point_check,
    random_twistor_point,
)
from .structures import (
    ConnectionTerms,
    gs_inner,
    gt_inner,
    jk_apply,
    structure_matrix,
    twisted_inner,
    twisted_norm,
    twistor_connection,
    vertical_tangent_basis,
)
from .pushforward import (
    HolomorphyStats,
    PushforwardContext,
    holomorphy_conditions,
    holomorphy_residual,
    iso_criterion,
    nabla_tilde_section,
    psi_field,
    psi_pushforward,
    q_covariant_derivative,
    v_endomorphism,
)
from .harmonic import (
    HarmonicityScan,
    SecondFundamentalForm,
    calibrate_harmonicity_sign,
    harmonicity_residual,
    harmonicity_scan,
    second_fund_form_conformal,
    second_fund_form_horizontal,
    sigma_form,
    tension_covector,
    twisted_wedge,
    vertical_gap,
)

__all__ = [
    # Types
    'StructureKind',
    'StructurePair',
    'TwistorMetricParams',
    'TwistorPoint',
    'TwistorTangent',
    'fiber_point_check',
    'random_twistor_point',

    # Structures and metrics
    'jk_apply',
    'gs_inner',
    'gt_inner',
    'twisted_inner',
    'twisted_norm',
    'vertical_tangent_basis',
    'structure_matrix',
    'ConnectionTerms',
    'twistor_connection',

    # Pushforward
    'PushforwardContext',
    'psi_field',
    'q_covariant_derivative',
    'nabla_tilde_section',
    'psi_pushforward',
    'v_endomorphism',
    'iso_criterion',
    'holomorphy_conditions',
    'holomorphy_residual',
    'HolomorphyStats',

    # Harmonicity
    'sigma_form',
    'twisted_wedge',
    'second_fund_form_horizontal',
    'vertical_gap',
    'second_fund_form_conformal',
    'SecondFundamentalForm',
    'harmonicity_residual',
    'tension_covector',
    'calibrate_harmonicity_sign',
    'harmonicity_scan',
    'HarmonicityScan',
]

__version__ = "1.1.0"
__description__ = "Twistor structures and the metric-transfer map"
