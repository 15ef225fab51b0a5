"""
Test suite for twistor points, tangents, the structures J₁/J₂ and the metrics g_s
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import DimensionMismatchError, PreconditionError
from src.fiber import InnerProductSpace, random_compatible, random_skew, random_space, vertical_project
from src.riemann import diag_metric, flat_metric, round_sphere_metric
from src.twistor import (
    StructureKind,
    StructurePair,
    TwistorMetricParams,
    TwistorPoint,
    TwistorTangent,
    fiber_point_check,
    gs_inner,
    jk_apply,
    random_twistor_point,
    structure_matrix,
    twisted_norm,
    twistor_connection,
    vertical_tangent_basis,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
AHS, ES = StructureKind.AHS, StructureKind.ES


def random_tangent(point, rng):
    V = vertical_project(point.I, random_skew(point.space, rng))
    return TwistorTangent(point, rng.standard_normal(point.n), V)


class TestTwistorTypes:
    """Points, tangents and parameters"""

    def test_structure_kinds(self):
        assert AHS.vertical_sign == 1 and ES.vertical_sign == -1
        assert (AHS.index, ES.index) == (1, 2)

    def test_structure_pair(self):
        assert StructurePair(AHS, ES).is_mixed
        assert not StructurePair(ES, ES).is_mixed
        assert StructurePair(AHS, ES).label == "AHS->ES"

    @pytest.mark.parametrize("s,t", [(0.0, 1.0), (1.0, -2.0)])
    def test_scales_must_be_positive(self, s, t):
        with pytest.raises(PreconditionError):
            TwistorMetricParams(s=s, t=t)

    def test_point_shape_mismatch(self, origin_point):
        with pytest.raises(DimensionMismatchError):
            TwistorPoint(np.zeros(3), origin_point.I)

    def test_fiber_point_check_detects_wrong_metric(self, origin_point):
        assert fiber_point_check(origin_point, flat_metric(4)) is origin_point
        with pytest.raises(PreconditionError):
            fiber_point_check(origin_point, diag_metric([1.0, 1.0, 1.0, 4.0]))

    @pytest.mark.parametrize("orientation", [1, -1])
    def test_random_point_orientation(self, orientation):
        point = random_twistor_point(round_sphere_metric(4), 11, orientation=orientation)
        assert point.I.orientation() == orientation
        fiber_point_check(point, round_sphere_metric(4))

    def test_tangents_at_different_points(self, origin_point, rng):
        other = random_twistor_point(flat_metric(4), rng)
        with pytest.raises(PreconditionError):
            TwistorTangent.zero(origin_point) + TwistorTangent.zero(other)

    def test_horizontal_and_vertical_flags(self, origin_point, rng):
        T = random_tangent(origin_point, rng)
        assert TwistorTangent.horizontal(origin_point, T.hor).is_horizontal
        assert TwistorTangent.vertical(origin_point, T.ver).is_vertical
        total = TwistorTangent.horizontal(origin_point, T.hor) + TwistorTangent.vertical(origin_point, T.ver)
        assert np.allclose(total.hor, T.hor) and np.allclose(total.ver.mat, T.ver.mat)


class TestAlmostComplexStructures:
    """J₁ and J₂ on T𝒵"""

    @given(seed=seeds, kind=st.sampled_from([AHS, ES]))
    @settings(max_examples=30, deadline=None)
    def test_square_is_minus_identity(self, seed, kind):
        rng = np.random.default_rng(seed)
        point = TwistorPoint(np.zeros(4), random_compatible(random_space(4, rng), rng))
        T = random_tangent(point, rng)
        twice = jk_apply(kind, jk_apply(kind, T))
        assert np.allclose(twice.hor, -T.hor, atol=1e-10)
        assert np.allclose(twice.ver.mat, -T.ver.mat, atol=1e-10)

    def test_structures_differ_on_fibers(self, origin_point, rng):
        T = random_tangent(origin_point, rng)
        j1, j2 = jk_apply(AHS, T), jk_apply(ES, T)
        assert np.allclose(j1.hor, j2.hor)
        assert np.allclose(j1.ver.mat, -j2.ver.mat)

    @pytest.mark.parametrize("kind", [AHS, ES])
    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_structure_matrix(self, kind, n):
        point = TwistorPoint(np.zeros(n), random_compatible(random_space(n, 5), 5))
        J = structure_matrix(kind, point, s=0.5)
        size = n + n * (n - 2) // 4
        assert J.shape == (size, size)
        assert np.allclose(J @ J, -np.eye(size), atol=1e-9)
        assert np.allclose(J.T @ J, np.eye(size), atol=1e-9)


class TestTwistorMetrics:
    """g_s(X^h + V, Y^h + W) = g(X, Y) + s·G(V, W)"""

    def test_horizontal_and_vertical_are_orthogonal(self, origin_point, rng):
        T = random_tangent(origin_point, rng)
        params = TwistorMetricParams(s=2.5)
        hor = TwistorTangent.horizontal(origin_point, T.hor)
        ver = TwistorTangent.vertical(origin_point, T.ver)
        assert gs_inner(params, hor, ver) == pytest.approx(0.0, abs=1e-12)
        assert gs_inner(params, T, T) == pytest.approx(gs_inner(params, hor, hor) + gs_inner(params, ver, ver))

    def test_vertical_scaling(self, origin_point, rng):
        ver = TwistorTangent.vertical(origin_point, random_tangent(origin_point, rng).ver)
        one = gs_inner(TwistorMetricParams(s=1.0), ver, ver)
        assert gs_inner(TwistorMetricParams(s=3.0), ver, ver) == pytest.approx(3.0 * one)

    @pytest.mark.parametrize("kind", [AHS, ES])
    def test_structures_are_isometries(self, kind, rng):
        space = random_space(4, rng)
        point = TwistorPoint(np.zeros(4), random_compatible(space, rng))
        T = random_tangent(point, rng)
        assert twisted_norm(0.7, jk_apply(kind, T)) == pytest.approx(twisted_norm(0.7, T), rel=1e-10)

    def test_tangent_basis_orthonormal(self, rng):
        point = TwistorPoint(np.zeros(4), random_compatible(random_space(4, rng), rng))
        params = TwistorMetricParams(s=0.3)
        basis = vertical_tangent_basis(point, params.s)
        gram = np.array([[gs_inner(params, a, b) for b in basis] for a in basis])
        assert np.allclose(gram, np.eye(len(basis)), atol=1e-10)


class TestTwistorConnection:
    """Levi-Civita terms of g_s"""

    def test_flat_base(self, origin_point, rng):
        V = random_tangent(origin_point, rng).ver
        terms = twistor_connection(flat_metric(4), TwistorMetricParams(), np.eye(4)[0], np.eye(4)[1], V,
                                   origin_point, y_field=lambda q: np.eye(4)[1])
        assert np.allclose(terms.hh.hor, 0.0)
        assert np.allclose(terms.hh.ver.mat, 0.0)
        assert np.allclose(terms.vh, 0.0)

    def test_vertical_part_is_tangent_to_fiber(self, rng):
        M = round_sphere_metric(4)
        point = random_twistor_point(M, rng)
        V = vertical_project(point.I, random_skew(point.space, rng))
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        terms = twistor_connection(M, TwistorMetricParams(s=2.0), X, Y, V, point)
        assert terms.hh.ver.value.anticommutes_with(point.I)
        assert terms.hh.ver.value.is_g_skew()

    def test_rejects_inconsistent_field(self, origin_point, rng):
        V = random_tangent(origin_point, rng).ver
        with pytest.raises(PreconditionError):
            twistor_connection(flat_metric(4), TwistorMetricParams(), np.eye(4)[0], np.eye(4)[1], V,
                               origin_point, y_field=lambda q: np.eye(4)[2])

    def test_vh_scales_with_s(self, rng):
        M = round_sphere_metric(4)
        point = random_twistor_point(M, rng)
        V = vertical_project(point.I, random_skew(point.space, rng))
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        one = twistor_connection(M, TwistorMetricParams(s=1.0), X, Y, V, point).vh
        two = twistor_connection(M, TwistorMetricParams(s=2.0), X, Y, V, point).vh
        assert np.allclose(two, 2.0 * one)
        assert np.linalg.norm(one) > 1e-6
