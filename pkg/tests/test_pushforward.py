"""
Test suite for the pushforward of Ψ and its holomorphy residuals
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import PreconditionError
from src.fiber import hom_norm, random_compatible, random_skew, vertical_project
from src.riemann import (
    MetricPair,
    conformal_metric,
    constant_metric,
    cov_deriv_endofield,
    flat_metric,
    parse_factor,
)
from src.twistor import (
    HolomorphyStats,
    PushforwardContext,
    StructureKind,
    StructurePair,
    TwistorMetricParams,
    TwistorPoint,
    TwistorTangent,
    holomorphy_conditions,
    holomorphy_residual,
    iso_criterion,
    nabla_tilde_section,
    psi_field,
    psi_pushforward,
    q_covariant_derivative,
    random_twistor_point,
    v_endomorphism,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
AHS, ES = StructureKind.AHS, StructureKind.ES
E = np.eye(4)


@pytest.fixture
def untagged_pair():
    """e^{2x₁}·flat against a flat metric it is not marked conformal to; forces the general code paths"""
    return MetricPair(constant_metric(np.eye(4)), conformal_metric(flat_metric(4), parse_factor("x1", 4)))


class TestVerticalDerivative:
    """∇̃_X S and V_{I,X}"""

    def test_known_value(self, conformal_pair, origin_point):
        nabla = nabla_tilde_section(conformal_pair, origin_point.I, E[2], origin_point.p)
        expected = np.column_stack([-E[3], -E[2], E[1], E[0]])
        assert np.allclose(nabla.mat, expected, atol=1e-12)

    @given(seed=seeds)
    @settings(max_examples=20, deadline=None)
    def test_closed_form_matches_general_formula(self, seed):
        rng = np.random.default_rng(seed)
        g = constant_metric(np.eye(4))
        tagged = MetricPair(flat_metric(4), conformal_metric(flat_metric(4), parse_factor("x1^2/4", 4)))
        untagged = MetricPair(g, tagged.gtilde)
        point = random_twistor_point(tagged.g, rng)
        X = rng.standard_normal(4)
        closed = nabla_tilde_section(tagged, point.I, X, point.p)
        general = nabla_tilde_section(untagged, point.I, X, point.p)
        assert np.allclose(closed.mat, general.mat, atol=1e-10)

    def test_v_needs_conformal_pair(self, witness_pair, origin_point):
        with pytest.raises(PreconditionError):
            v_endomorphism(witness_pair, origin_point.I, E[0], origin_point.p)


class TestQDerivative:
    """∇̃_X Q for the principal square root field"""

    def test_conformal_closed_form(self, conformal_pair, untagged_pair, rng):
        p = np.array([0.2, -0.1, 0.3, 0.0])
        X = rng.standard_normal(4)
        closed = q_covariant_derivative(conformal_pair, X, p)
        assert np.allclose(closed, X[0] * np.exp(p[0]) * np.eye(4))
        general = q_covariant_derivative(untagged_pair, X, p)
        assert np.allclose(general, closed, atol=1e-6)

    def test_psi_field_squares_to_transfer(self, witness_pair):
        Q = psi_field(witness_pair)(np.zeros(4))
        assert np.allclose(Q, np.diag([1.0, 1.0, 1.0, 2.0]))

    def test_constant_pair_has_parallel_root(self, witness_pair):
        field = psi_field(witness_pair)
        assert np.allclose(cov_deriv_endofield(witness_pair.gtilde, field, E[1], np.zeros(4)), 0.0, atol=1e-10)


class TestPushforward:
    """Ψ_*(X^h + U) = X^h̃ + N(X) + Q⁻¹UQ"""

    def test_vertical_tangents_map_to_fibers(self, witness_pair, rng):
        point = random_twistor_point(witness_pair.g, rng)
        U = vertical_project(point.I, random_skew(point.space, rng))
        pushed = psi_pushforward(witness_pair, TwistorTangent.vertical(point, U), strict=True)
        context = PushforwardContext.at(witness_pair, point)
        assert pushed.is_vertical
        assert np.allclose(pushed.ver.mat, context.conjugate(U.mat))

    def test_horizontal_part_is_kept(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        X = rng.standard_normal(4)
        pushed = psi_pushforward(conformal_pair, TwistorTangent.horizontal(point, X))
        assert np.allclose(pushed.hor, X)
        assert pushed.point.space.matches(conformal_pair.gtilde.space(point.p))

    def test_conformal_n_is_v(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        X = rng.standard_normal(4)
        context = PushforwardContext.at(conformal_pair, point)
        expected = v_endomorphism(conformal_pair, point.I, X, point.p).mat
        assert np.allclose(context.horizontal_vertical(X), expected, atol=1e-10)

    def test_linearity(self, conformal_pair, rng):
        point = random_twistor_point(conformal_pair.g, rng)
        U = vertical_project(point.I, random_skew(point.space, rng))
        X = rng.standard_normal(4)
        T = TwistorTangent(point, X, U)
        whole = psi_pushforward(conformal_pair, T)
        parts = (psi_pushforward(conformal_pair, TwistorTangent.horizontal(point, X))
                 + psi_pushforward(conformal_pair, TwistorTangent.vertical(point, U)))
        assert np.allclose(whole.ver.mat, parts.ver.mat, atol=1e-10)


class TestIsoCriterion:
    """(-1)^{k+1} I∘V_{I,X} = V_{I,IX}"""

    @given(seed=seeds)
    @settings(max_examples=25, deadline=None)
    def test_first_kind_always_holds(self, seed):
        rng = np.random.default_rng(seed)
        pair = MetricPair(flat_metric(4), conformal_metric(flat_metric(4), parse_factor("x1^2/4", 4)))
        point = random_twistor_point(pair.g, rng)
        assert iso_criterion(1, pair, point.I, rng.standard_normal(4), point.p) < 1e-12

    def test_second_kind_fails_off_gradient(self, conformal_pair, origin_point):
        assert iso_criterion(2, conformal_pair, origin_point.I, E[2], origin_point.p) == pytest.approx(2 * np.sqrt(2))

    def test_second_kind_holds_for_homothety(self, homothetic_pair, origin_point):
        assert iso_criterion(2, homothetic_pair, origin_point.I, E[2], origin_point.p) == 0.0

    def test_rejects_unknown_kind(self, conformal_pair, origin_point):
        with pytest.raises(PreconditionError):
            iso_criterion(3, conformal_pair, origin_point.I, E[0], origin_point.p)


class TestHolomorphy:
    """J̃_l∘Ψ_* against ±Ψ_*∘J_k"""

    @given(seed=seeds)
    @settings(max_examples=15, deadline=None)
    def test_j1_holomorphic_for_conformal_pair(self, seed):
        rng = np.random.default_rng(seed)
        pair = MetricPair(flat_metric(4), conformal_metric(flat_metric(4), parse_factor("x2", 4)))
        point = random_twistor_point(pair.g, rng)
        conditions = holomorphy_conditions(pair, point, StructurePair(AHS, AHS), TwistorMetricParams())
        assert conditions["total"] < 1e-9

    def test_j2_holomorphic_for_homothety(self, homothetic_pair, rng):
        point = random_twistor_point(homothetic_pair.g, rng)
        conditions = holomorphy_conditions(homothetic_pair, point, StructurePair(ES, ES), TwistorMetricParams())
        assert conditions["total"] < 1e-9

    def test_j2_not_holomorphic_for_conformal_pair(self, conformal_pair, origin_point):
        conditions = holomorphy_conditions(conformal_pair, origin_point, StructurePair(ES, ES), TwistorMetricParams())
        assert conditions["horizontal"] < 1e-12
        assert conditions["connection"] > 1.0

    def test_anti_holomorphy_fails_horizontally(self, conformal_pair, origin_point):
        conditions = holomorphy_conditions(conformal_pair, origin_point, StructurePair(AHS, AHS),
                                           TwistorMetricParams(), anti=True)
        assert conditions["horizontal"] == pytest.approx(2.0)

    def test_non_conformal_witness(self, witness_pair, origin_point):
        conditions = holomorphy_conditions(witness_pair, origin_point, StructurePair(AHS, AHS), TwistorMetricParams())
        assert conditions["horizontal"] >= 0.5

    def test_residual_sweep(self, conformal_pair, rng):
        points = [random_twistor_point(conformal_pair.g, rng) for _ in range(5)]
        stats = holomorphy_residual(conformal_pair, StructurePair(AHS, ES), points, TwistorMetricParams())
        assert len(stats.values) == 5 and len(stats.points) == 5
        assert stats.min <= stats.mean <= stats.max
        assert stats.structures == "AHS->ES"

    def test_empty_stats(self):
        stats = HolomorphyStats("AHS->AHS", anti=False)
        assert stats.max == stats.mean == stats.min == 0.0
