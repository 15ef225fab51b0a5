"""
Test suite for the metric transfer
C, its principal square root Q and the map Ψ(I) = Q⁻¹IQ
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import DimensionMismatchError, PreconditionError
from src.fiber import (
    Endomorphism,
    InnerProductSpace,
    MetricTransfer,
    hom_metric,
    log_integral,
    make_compatible_structure,
    principal_sqrt,
    psi_point,
    random_almost_complex,
    random_compatible,
    random_endomorphism,
    random_space,
    random_spd,
    sqrt_via_log_integral,
    transfer_endomorphism,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestTransferEndomorphism:
    """C = g⁻¹g̃"""

    def test_defining_property(self, skewed4, rng):
        gtilde = random_spd(4, rng)
        C = transfer_endomorphism(skewed4, gtilde)
        X, Y = rng.standard_normal(4), rng.standard_normal(4)
        assert skewed4.inner(C.apply(X), Y) == pytest.approx(X @ gtilde @ Y, rel=1e-10)

    def test_rejects_indefinite_target(self, euclidean4):
        with pytest.raises(PreconditionError):
            transfer_endomorphism(euclidean4, np.diag([1.0, 1.0, 1.0, -1.0]))

    def test_rejects_shape_mismatch(self, euclidean4):
        with pytest.raises(DimensionMismatchError):
            transfer_endomorphism(euclidean4, np.eye(6))


class TestPrincipalSqrt:
    """Q² = C, Q g-symmetric and positive"""

    @given(seed=seeds, n=st.sampled_from([2, 4, 6]))
    @settings(max_examples=30, deadline=None)
    def test_square_root(self, seed, n):
        rng = np.random.default_rng(seed)
        space = random_space(n, rng)
        C = transfer_endomorphism(space, random_spd(n, rng))
        Q = principal_sqrt(C)
        assert np.allclose(Q.mat @ Q.mat, C.mat, rtol=1e-9, atol=1e-9)
        assert Q.is_g_symmetric(1e-9)
        assert Q.is_g_positive(1e-9)

    @given(seed=seeds, condition=st.floats(min_value=1.0, max_value=100.0))
    @settings(max_examples=30, deadline=None)
    def test_log_integral_agrees(self, seed, condition):
        A = random_spd(4, seed, condition=condition)
        identity = InnerProductSpace(np.eye(4))
        root = principal_sqrt(Endomorphism(identity, A)).mat
        assert np.max(np.abs(root - sqrt_via_log_integral(A))) <= 1e-8 * max(1.0, np.max(np.abs(root)))

    def test_log_integral_of_scalar(self):
        assert np.allclose(log_integral(np.e ** 2 * np.eye(4)), 2.0 * np.eye(4), atol=1e-12)

    def test_log_integral_rejects_negative_determinant(self):
        with pytest.raises(PreconditionError):
            log_integral(np.diag([1.0, 1.0, 1.0, -1.0]))

    def test_conformal_root_is_scalar(self, euclidean4):
        C = transfer_endomorphism(euclidean4, np.e ** 2 * np.eye(4))
        assert np.allclose(principal_sqrt(C).mat, np.e * np.eye(4))


class TestPsi:
    """Ψ carries g-compatible structures to g̃-compatible ones"""

    @given(seed=seeds, n=st.sampled_from([2, 4, 6]))
    @settings(max_examples=40, deadline=None)
    def test_psi_is_compatible(self, seed, n):
        rng = np.random.default_rng(seed)
        space = random_space(n, rng)
        gtilde = random_spd(n, rng)
        I = random_compatible(space, rng)
        image = psi_point(I, gtilde)
        assert np.allclose(image.mat @ image.mat, -np.eye(n), atol=1e-9)
        assert np.max(np.abs(image.mat.T @ gtilde @ image.mat - gtilde)) <= 1e-9 * np.max(np.abs(gtilde))
        assert image.orientation() == I.orientation()

    @given(seed=seeds)
    @settings(max_examples=25, deadline=None)
    def test_psi_is_isometry_of_hom_metrics(self, seed):
        rng = np.random.default_rng(seed)
        space = random_space(4, rng)
        transfer = MetricTransfer.between(space, random_spd(4, rng))
        A, B = random_endomorphism(space, rng), random_endomorphism(space, rng)
        pushed_a = Endomorphism(transfer.target, transfer.psi(A.mat))
        pushed_b = Endomorphism(transfer.target, transfer.psi(B.mat))
        assert hom_metric(A, B) == pytest.approx(hom_metric(pushed_a, pushed_b), rel=1e-8, abs=1e-10)

    def test_psi_inverse(self, skewed4, rng):
        transfer = MetricTransfer.between(skewed4, random_spd(4, rng))
        A = rng.standard_normal((4, 4))
        assert np.allclose(transfer.psi_inverse(transfer.psi(A)), A, atol=1e-10)

    def test_identity_transfer(self, skewed4, rng):
        I = random_compatible(skewed4, rng)
        assert np.allclose(psi_point(I, skewed4.gram).mat, I.mat, atol=1e-10)

    def test_explicit_source_metric(self, skewed4, rng):
        I = random_compatible(skewed4, rng)
        gtilde = random_spd(4, rng)
        implicit = psi_point(I, gtilde)
        assert np.allclose(psi_point(I, gtilde, g=skewed4).mat, implicit.mat, atol=1e-12)
        # Q is unchanged up to scale when g is rescaled
        scaled = InnerProductSpace(3.0 * skewed4.gram)
        image = psi_point(I, gtilde, g=scaled)
        assert np.allclose(image.mat, implicit.mat, atol=1e-9)
        assert image.space.matches(implicit.space)

    def test_explicit_source_metric_must_fit_structure(self, skewed4, rng):
        I = random_compatible(skewed4, rng)
        with pytest.raises(PreconditionError):
            psi_point(I, random_spd(4, rng), g=InnerProductSpace(np.diag([1.0, 1.0, 1.0, 9.0])))
        with pytest.raises(DimensionMismatchError):
            psi_point(I, random_spd(4, rng), g=InnerProductSpace(np.eye(6)))

    def test_make_compatible_structure(self, rng):
        gtilde = random_spd(4, rng)
        I = random_almost_complex(4, rng)
        J = make_compatible_structure(gtilde, I)
        assert np.allclose(J.mat.T @ gtilde @ J.mat, gtilde, atol=1e-8)

    def test_make_compatible_structure_rejects_non_complex(self):
        with pytest.raises(PreconditionError):
            make_compatible_structure(np.eye(4), np.eye(4))
