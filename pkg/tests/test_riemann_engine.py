"""
Test suite for metric fields and the Levi-Civita connection
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import ConfigError, DomainBoundaryError, PreconditionError
from src.riemann import (
    BUILTIN_METRICS,
    MetricPair,
    apply_difference,
    build_metric,
    christoffel,
    conformal_difference_tensor,
    conformal_metric,
    cov_deriv_endofield,
    cov_deriv_vectorfield,
    diag_metric,
    difference_tensor,
    flat_metric,
    gradient,
    koszul_difference,
    metric_compatibility_residual,
    normalize_metric_spec,
    parse_factor,
    product_metric,
    round_sphere_metric,
    second_cov_deriv_endofield,
    sigma_form,
    verify_derivatives,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestConformalFactors:
    """Whitelisted f-expressions"""

    @pytest.mark.parametrize("spec,value,grad", [
        ("x1", 0.3, [1.0, 0.0, 0.0, 0.0]),
        ("x2^2/4", 0.04, [0.0, 0.2, 0.0, 0.0]),
        ("const:0.5", 0.5, [0.0, 0.0, 0.0, 0.0]),
        (2.0, 2.0, [0.0, 0.0, 0.0, 0.0]),
        ({"kind": "linear", "coeffs": [0, 0, 1, 0], "offset": 1.0}, 1.5, [0.0, 0.0, 1.0, 0.0]),
    ])
    def test_parse(self, spec, value, grad):
        factor = parse_factor(spec, 4)
        p = np.array([0.3, 0.4, 0.5, 0.6])
        assert factor.value(p) == pytest.approx(value)
        assert np.allclose(factor.grad(p), grad)

    @pytest.mark.parametrize("spec", ["sin(x1)", "x5", "x1*x2", True])
    def test_rejects_unsupported(self, spec):
        with pytest.raises(ConfigError):
            parse_factor(spec, 4)

    def test_constant_detection(self):
        assert parse_factor("const:1", 4).is_constant
        assert not parse_factor("x1", 4).is_constant


class TestMetricFields:
    """Builtin metrics and their derivatives"""

    @pytest.mark.parametrize("builder", [
        lambda: conformal_metric(flat_metric(4), parse_factor("x1", 4)),
        lambda: conformal_metric(flat_metric(4), parse_factor("x1^2/4", 4)),
        lambda: round_sphere_metric(4),
        lambda: conformal_metric(round_sphere_metric(4), parse_factor("x2", 4)),
        lambda: product_metric([round_sphere_metric(2), flat_metric(2)]),
    ])
    def test_analytic_derivatives_match_finite_differences(self, builder):
        M = builder()
        p = np.array([0.2, -0.3, 0.1, 0.4])
        assert verify_derivatives(M, p) < 1e-5

    def test_round_sphere_gram(self):
        M = round_sphere_metric(4, radius=2.0)
        p = np.zeros(4)
        assert np.allclose(M.gram(p), 4.0 * np.eye(4))

    def test_stencil_near_boundary(self):
        M = flat_metric(4).with_finite_differences()
        with pytest.raises(DomainBoundaryError):
            M.d_gram(np.array([1.0, 0.0, 0.0, 0.0]))

    def test_empty_box_rejected(self):
        with pytest.raises(PreconditionError):
            flat_metric(4, domain=(1.0, -1.0))

    def test_sample_point_respects_margin(self, rng):
        M = flat_metric(4, domain=(0.0, 2.0))
        for _ in range(20):
            p = M.sample_point(rng)
            assert np.all(p >= 0.1) and np.all(p <= 1.9)


class TestMetricSpecs:
    """Config specs for builtin metrics"""

    @pytest.mark.parametrize("text,expected", [
        ("flat", {"name": "flat"}),
        ("diag(1,1,1,4)", {"name": "diag", "entries": [1.0, 1.0, 1.0, 4.0]}),
        ("round-sphere(2)", {"name": "round-sphere", "radius": 2.0}),
        ("conformal(x1)", {"name": "conformal", "f": "x1"}),
    ])
    def test_shorthand(self, text, expected):
        assert normalize_metric_spec(text) == expected

    def test_all_builtins_listed(self):
        assert set(BUILTIN_METRICS) == {"flat", "diag", "round-sphere", "conformal-flat", "conformal", "product"}

    def test_conformal_needs_base(self):
        with pytest.raises(ConfigError) as info:
            build_metric({"name": "conformal", "f": "x1"}, 4, field="metric_g")
        assert info.value.field == "metric_g"

    def test_unknown_metric(self):
        with pytest.raises(ConfigError) as info:
            build_metric({"name": "torus"}, 4, field="metric_g")
        assert info.value.field == "metric_g.name"

    def test_diag_length(self):
        with pytest.raises(ConfigError):
            build_metric("diag(1,2)", 4)

    def test_domain_override(self):
        M = build_metric({"name": "flat", "domain": [-0.5, 0.5]}, 4)
        assert np.allclose(M.lower, -0.5) and np.allclose(M.upper, 0.5)


class TestMetricPair:
    """Conformal detection and transfer"""

    def test_conformal_pair(self, conformal_pair):
        assert conformal_pair.is_conformal
        assert not conformal_pair.is_homothetic

    def test_homothetic_pair(self, homothetic_pair):
        assert homothetic_pair.is_homothetic

    def test_non_conformal_pair(self, witness_pair):
        assert not witness_pair.is_conformal
        assert witness_pair.factor is None
        with pytest.raises(PreconditionError):
            witness_pair.require_conformal()

    def test_conformal_relative_to_other_base_is_not_conformal(self):
        other = diag_metric([1.0, 2.0, 1.0, 1.0])
        pair = MetricPair(flat_metric(4), conformal_metric(other, parse_factor("x1", 4)))
        assert not pair.is_conformal

    def test_conformal_survives_finite_differences(self, conformal_pair):
        pair = MetricPair(conformal_pair.g.with_finite_differences(), conformal_pair.gtilde.with_finite_differences())
        assert pair.is_conformal


class TestLeviCivita:
    """Christoffel symbols and covariant derivatives"""

    def test_flat_christoffel_vanishes(self):
        assert np.allclose(christoffel(flat_metric(4), np.zeros(4)), 0.0)

    @given(seed=seeds)
    @settings(max_examples=20, deadline=None)
    def test_metric_compatibility(self, seed):
        M = conformal_metric(round_sphere_metric(4), parse_factor("x1", 4))
        p = M.sample_point(np.random.default_rng(seed))
        assert metric_compatibility_residual(M, p) < 1e-10

    def test_conformal_difference_oracle(self, conformal_pair):
        e1 = np.eye(4)[0]
        p = np.array([0.1, 0.2, -0.3, 0.4])
        assert np.allclose(conformal_difference_tensor(conformal_pair.g, conformal_pair.factor, e1, e1, p), e1)

    @given(seed=seeds)
    @settings(max_examples=20, deadline=None)
    def test_closed_form_difference(self, seed):
        rng = np.random.default_rng(seed)
        g = round_sphere_metric(4)
        pair = MetricPair(g, conformal_metric(g, parse_factor("x1^2/4", 4)))
        p = pair.sample_point(rng)
        expected = christoffel(pair.gtilde, p) - christoffel(pair.g, p)
        assert np.allclose(difference_tensor(pair, p), expected, atol=1e-10)

    @given(seed=seeds)
    @settings(max_examples=20, deadline=None)
    def test_koszul_identity_general_pair(self, seed):
        rng = np.random.default_rng(seed)
        pair = MetricPair(round_sphere_metric(4), product_metric([round_sphere_metric(2), round_sphere_metric(2)]))
        p = pair.sample_point(rng)
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        expected = apply_difference(christoffel(pair.gtilde, p) - christoffel(pair.g, p), X, Y)
        assert np.allclose(koszul_difference(pair, X, Y, p), expected, atol=1e-9)

    def test_sigma_form_conformal(self, conformal_pair, rng):
        p = conformal_pair.sample_point(rng)
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        grad = gradient(conformal_pair.g, conformal_pair.factor, p)
        assert np.allclose(sigma_form(conformal_pair, X, Y, p), 2.0 * (X @ Y) * grad, atol=1e-10)

    def test_covariant_derivative_of_identity_vanishes(self):
        M = round_sphere_metric(4)
        p = np.array([0.1, 0.2, 0.0, -0.1])
        nabla = cov_deriv_endofield(M, lambda q: np.eye(4), np.eye(4)[1], p)
        assert np.allclose(nabla, 0.0, atol=1e-12)

    def test_second_covariant_derivative_of_identity_vanishes(self):
        M = round_sphere_metric(4)
        p = np.array([0.1, 0.2, 0.0, -0.1])
        nabla = second_cov_deriv_endofield(M, lambda q: np.eye(4), np.eye(4)[0], np.eye(4)[1], p)
        assert np.allclose(nabla, 0.0, atol=1e-8)

    def test_vector_field_derivative_on_flat_space(self):
        M = flat_metric(4)
        field = lambda q: np.array([q[0] ** 2, q[1], 0.0, 0.0])
        p = np.array([0.3, 0.0, 0.0, 0.0])
        assert np.allclose(cov_deriv_vectorfield(M, field, np.eye(4)[0], p), [0.6, 0.0, 0.0, 0.0], atol=1e-8)
