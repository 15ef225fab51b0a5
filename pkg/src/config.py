# twistorlab - Configuration

import os

# Fiber algebra tolerances and quadrature
FIBER_CONFIG = {
    "algebraic_tolerance": 1e-12,   # pure matrix identities
    "eigen_tolerance": 1e-10,       # constructions through eigendecomposition
    "structure_tolerance": 1e-9,    # J^2 = -Id and g-orthogonality checks
    "symmetry_rtol": 1e-12,         # gram symmetry (relative)
    "spectrum_floor": 1e-12,        # smallest admissible eigenvalue of C
    "quadrature_nodes": 64,         # Gauss-Legendre nodes for the log integral
}

# Chart geometry and finite differences
RIEMANN_CONFIG = {
    "fd_relative_step": 1e-3,       # scaled by the largest box extent
    "fd_order": 4,
    "derivative_check_tolerance": 1e-5,
    "sample_margin": 0.05,          # fraction of each box side kept clear when sampling
    "default_domain": (-1.0, 1.0),
    "sphere_radius": 1.0,
}

# Twistor engine
TWISTOR_CONFIG = {
    "default_s": 1.0,
    "default_t": 1.0,
    "fiber_tolerance": 1e-6,        # FD-assembled vertical vectors
    "calibration_point": (0.0, 0.0, 0.0, 0.0),
}

# Scenario runner
RUNNER_CONFIG = {
    "schema_version": 1,
    "default_samples": 256,
    "default_seed": 0,
    "default_jobs": 1,
    "report_formats": ("json", "csv", "text"),
    "tolerance_scale_env": "TWISTORLAB_TOLERANCE_SCALE",
    "fd_zero_floor": 1e-4,          # "zero" thresholds in FD derivative mode
}

# Per-check defaults ("zero" polarity tolerances, "nonzero" lower bounds)
CHECK_TOLERANCES = {
    "psi-well-defined": 1e-9,
    "prop-j1": 1e-6,
    "prop-j2": 1e-9,
    "iso-criterion": 1e-12,
    "iso-criterion-k2": 1e-12,
    "lemma-r-ab": 1e-6,
    "curvature-decomposition": 1e-8,
    "weyl-conformal": 1e-6,
    "hodge-conformal": 1e-10,
    "bianchi": 1e-8,
    "koszul-identity": 1e-6,
    "sqrt-log-integral": 1e-8,
    "isoclinic": 1e-10,
    "fiber-identities": 1e-10,
    "gs-isometry": 1e-12,
    "pushforward-fibers": 1e-9,
    "vertical-trace": 1e-9,
    "harmonicity": 1e-9,
    "harmonicity-agreement": 1e-6,
    "vertical-vertical-ii": 1e-15,
}

CHECK_BOUNDS = {
    "default": 0.1,
    "prop-j1-anti": 1.0,
    "prop-j2-anti": 1.0,
    "prop-mixed": 1.0,
}

LOGGING_CONFIG = {
    "level": "INFO",
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "color_format": "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s",
}

# All configurations combined
CONFIG = {
    "fiber": FIBER_CONFIG,
    "riemann": RIEMANN_CONFIG,
    "twistor": TWISTOR_CONFIG,
    "runner": RUNNER_CONFIG,
    "check_tolerances": CHECK_TOLERANCES,
    "check_bounds": CHECK_BOUNDS,
    "logging": LOGGING_CONFIG,
}


def tolerance_scale() -> float:
    """Multiplier applied to every "zero" tolerance, read from the environment."""
    raw = os.environ.get(RUNNER_CONFIG["tolerance_scale_env"])
    if raw is None or raw.strip() == "":
        return 1.0
    try:
        scale = float(raw)
    except ValueError:
        raise ValueError(f"{RUNNER_CONFIG['tolerance_scale_env']} must be a positive number, got {raw!r}")
    if not scale > 0.0:
        raise ValueError(f"{RUNNER_CONFIG['tolerance_scale_env']} must be positive, got {scale}")
    return scale
