"""
Test suite for the second fundamental form and harmonicity of Ψ
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import PreconditionError
from src.fiber import hom_norm, random_skew, vertical_project
from src.riemann import MetricPair, conformal_metric, constant_metric, flat_metric, parse_factor
from src.twistor import (
    TwistorMetricParams,
    TwistorTangent,
    calibrate_harmonicity_sign,
    harmonicity_residual,
    harmonicity_scan,
    random_twistor_point,
    second_fund_form_conformal,
    second_fund_form_horizontal,
    tension_covector,
    twisted_wedge,
    vertical_gap,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
E = np.eye(4)


class TestSecondFundamentalForm:
    """II(T1, T2) for g̃ = e^{2f}g"""

    def test_known_value_at_origin(self, conformal_pair, origin_point):
        form = second_fund_form_horizontal(conformal_pair, origin_point, E[0], E[0], TwistorMetricParams())
        assert np.allclose(form, E[0], atol=1e-12)

    def test_symmetric(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        params = TwistorMetricParams(t=0.4)
        xy = second_fund_form_conformal(conformal_pair, point, X, Y, params)
        yx = second_fund_form_conformal(conformal_pair, point, Y, X, params)
        assert np.allclose(xy.horizontal, yx.horizontal, atol=1e-10)
        assert np.allclose(xy.vertical.mat, yx.vertical.mat, atol=1e-10)

    def test_vertical_pairs_vanish(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        U = TwistorTangent.vertical(point, vertical_project(point.I, random_skew(point.space, rng)))
        W = TwistorTangent.vertical(point, vertical_project(point.I, random_skew(point.space, rng)))
        form = second_fund_form_conformal(conformal_pair, point, U, W, TwistorMetricParams())
        assert np.all(form.horizontal == 0.0)
        assert np.all(form.vertical.mat == 0.0)

    def test_mixed_blocks_not_evaluated(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        U = TwistorTangent.vertical(point, vertical_project(point.I, random_skew(point.space, rng)))
        with pytest.raises(PreconditionError):
            second_fund_form_conformal(conformal_pair, point, E[0], U, TwistorMetricParams())

    def test_needs_conformal_pair(self, witness_pair, origin_point):
        with pytest.raises(PreconditionError):
            second_fund_form_conformal(witness_pair, origin_point, E[0], E[1], TwistorMetricParams())

    def test_vertical_gap_is_vertical(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        gap = vertical_gap(conformal_pair, point.I, rng.standard_normal(4), rng.standard_normal(4), point.p)
        assert gap.value.is_g_skew() and gap.value.anticommutes_with(point.I)

    @given(seed=seeds)
    @settings(max_examples=15, deadline=None)
    def test_horizontal_block_matches_general_pair(self, seed):
        rng = np.random.default_rng(seed)
        gtilde = conformal_metric(flat_metric(4), parse_factor("x1", 4))
        tagged = MetricPair(flat_metric(4), gtilde)
        untagged = MetricPair(constant_metric(np.eye(4)), gtilde)
        point = random_twistor_point(tagged.g, rng)
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        params = TwistorMetricParams(t=1.5)
        closed = second_fund_form_horizontal(tagged, point, X, Y, params)
        general = second_fund_form_horizontal(untagged, point, X, Y, params)
        assert np.allclose(closed, general, atol=1e-5)

    def test_twisted_wedge_closed_form(self, conformal_pair, rng):
        untagged = MetricPair(constant_metric(np.eye(4)), conformal_pair.gtilde)
        point = random_twistor_point(conformal_pair.g, rng)
        X = rng.standard_normal(4)
        closed = twisted_wedge(conformal_pair, point, X)
        general = twisted_wedge(untagged, point, X)
        assert np.allclose(closed.coeffs, general.coeffs, atol=1e-6)


class TestHarmonicity:
    """Tension of Ψ against the closed-form criterion"""

    def test_sign_calibration(self):
        assert calibrate_harmonicity_sign() == 1

    @given(seed=seeds, t=st.floats(min_value=0.1, max_value=5.0))
    @settings(max_examples=20, deadline=None)
    def test_closed_form_on_flat_space(self, seed, t):
        rng = np.random.default_rng(seed)
        base = flat_metric(4)
        pair = MetricPair(base, conformal_metric(base, parse_factor("x1", 4)))
        point = random_twistor_point(base, rng)
        covector = harmonicity_residual(pair, point, TwistorMetricParams(t=t))
        expected = np.array([-2.0 * np.exp(2.0 * point.p[0]), 0.0, 0.0, 0.0])
        assert np.allclose(covector, expected, atol=1e-9)

    def test_homothety_is_harmonic(self, homothetic_pair, rng):
        point = random_twistor_point(homothetic_pair.g, rng)
        params = TwistorMetricParams()
        trace, gap = tension_covector(homothetic_pair, point, params)
        assert np.allclose(trace, 0.0)
        assert hom_norm(gap) == 0.0
        assert np.allclose(harmonicity_residual(homothetic_pair, point, params), 0.0)

    def test_scan_agreement(self, conformal_pair, rng):
        points = [random_twistor_point(conformal_pair.g, rng) for _ in range(8)]
        scan = harmonicity_scan(conformal_pair, points, TwistorMetricParams(t=0.8))
        assert scan.sign == 1
        assert len(scan.agreement) == 8
        assert scan.max_agreement < 1e-6
        assert scan.max_closed_form > 0.1

    def test_scan_needs_conformal_pair(self, witness_pair, origin_point):
        with pytest.raises(PreconditionError):
            harmonicity_scan(witness_pair, [origin_point], TwistorMetricParams())
