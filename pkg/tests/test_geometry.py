import numpy as np
import pytest

from fildyn.errors import ValidationError
from fildyn.geometry import (
    FilamentGeometry,
    FrenetFrame,
    HelixSpec,
    frame_laplacian_exact,
    frenet_derivative,
    helix_frame,
    solenoidal_residual,
)

CANONICAL = FrenetFrame(
    t=np.array([1.0, 0.0, 0.0]),
    n=np.array([0.0, 1.0, 0.0]),
    b=np.array([0.0, 0.0, 1.0]),
)


def random_frame(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return FrenetFrame(t=q[:, 0], n=q[:, 1], b=q[:, 2])


def fd_frame_derivatives(spec, s, h=1e-5):
    plus = helix_frame(spec, s + h).frame
    minus = helix_frame(spec, s - h).frame
    return (
        (plus.t - minus.t) / (2 * h),
        (plus.n - minus.n) / (2 * h),
        (plus.b - minus.b) / (2 * h),
    )


class TestFrenetDerivative:
    def test_straight_line_vanishes(self):
        geom = FilamentGeometry(kappa0=0.0, tau0=0.0)
        for vec in frenet_derivative(CANONICAL, geom):
            assert np.all(vec == 0.0)

    def test_planar_circle(self):
        geom = FilamentGeometry(kappa0=1.0, tau0=0.0)
        dt, dn, db = frenet_derivative(CANONICAL, geom)
        assert np.allclose(dt, [0.0, 1.0, 0.0])
        assert np.allclose(dn, [-1.0, 0.0, 0.0])
        assert np.all(db == 0.0)

    def test_helix_against_finite_differences(self):
        spec = HelixSpec(a=1.0, b_pitch=1.0)
        sample = helix_frame(spec, 0.0)
        analytic = frenet_derivative(sample.frame, sample.geom)
        numeric = fd_frame_derivatives(spec, 0.0)
        for a, f in zip(analytic, numeric):
            assert np.max(np.abs(a - f)) < 1e-8

    def test_orthonormality_preserved_to_first_order(self):
        # d/ds (e_i . e_j) must vanish for every pair on a valid frame
        rng = np.random.default_rng(11)
        for _ in range(50):
            frame = random_frame(rng)
            geom = FilamentGeometry(kappa0=rng.uniform(0, 5), tau0=rng.uniform(-5, 5))
            vecs = (frame.t, frame.n, frame.b)
            derivs = frenet_derivative(frame, geom)
            for i in range(3):
                for j in range(3):
                    rate = float(derivs[i] @ vecs[j] + vecs[i] @ derivs[j])
                    assert abs(rate) < 1e-12


class TestHelixFrame:
    def test_circle_limit(self):
        sample = helix_frame(HelixSpec(a=1.0, b_pitch=0.0), 0.0)
        assert np.allclose(sample.point, [1.0, 0.0, 0.0])
        assert sample.geom.kappa0 == 1.0
        assert sample.geom.tau0 == 0.0

    def test_unit_helix_equipartition(self):
        sample = helix_frame(HelixSpec(a=1.0, b_pitch=1.0), 0.7)
        assert sample.geom.kappa0 == pytest.approx(0.5, abs=1e-15)
        assert sample.geom.tau0 == pytest.approx(0.5, abs=1e-15)
        assert sample.geom.helical_equipartition

    def test_scaled_helix(self):
        sample = helix_frame(HelixSpec(a=2.0, b_pitch=2.0), -3.0)
        assert sample.geom.kappa0 == pytest.approx(0.25, abs=1e-15)
        assert sample.geom.tau0 == pytest.approx(0.25, abs=1e-15)

    def test_finite_difference_sweep(self):
        # the geometry acceptance oracle: 100 helices x 10 arclengths
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(100):
            spec = HelixSpec(a=rng.uniform(0.1, 10.0), b_pitch=rng.uniform(0.1, 10.0))
            for _ in range(10):
                s = rng.uniform(-10.0, 10.0)
                sample = helix_frame(spec, s)
                analytic = frenet_derivative(sample.frame, sample.geom)
                numeric = fd_frame_derivatives(spec, s)
                for a, f in zip(analytic, numeric):
                    worst = max(worst, float(np.max(np.abs(a - f))))
        assert worst < 1e-6

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            HelixSpec(a=0.0, b_pitch=1.0)
        with pytest.raises(ValidationError):
            HelixSpec(a=-1.0, b_pitch=1.0)
        with pytest.raises(ValidationError):
            helix_frame(HelixSpec(a=1.0, b_pitch=0.0), float("nan"))


class TestFrameValidation:
    def test_rejects_non_unit(self):
        with pytest.raises(ValidationError):
            FrenetFrame(t=np.array([2.0, 0, 0]), n=np.array([0, 1.0, 0]), b=np.array([0, 0, 1.0]))

    def test_rejects_non_orthogonal(self):
        v = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
        with pytest.raises(ValidationError):
            FrenetFrame(t=np.array([1.0, 0, 0]), n=v, b=np.array([0, 0, 1.0]))

    def test_rejects_left_handed(self):
        with pytest.raises(ValidationError):
            FrenetFrame(t=np.array([1.0, 0, 0]), n=np.array([0, 1.0, 0]), b=np.array([0, 0, -1.0]))

    def test_rejects_negative_curvature(self):
        with pytest.raises(ValidationError):
            FilamentGeometry(kappa0=-1.0, tau0=0.0)

    def test_equipartition_flag_must_match(self):
        with pytest.raises(ValidationError):
            FilamentGeometry(kappa0=1.0, tau0=0.5, helical_equipartition=True)
        geom = FilamentGeometry(kappa0=1.0, tau0=1.0)
        assert geom.helical_equipartition
        assert not FilamentGeometry(kappa0=1.0, tau0=0.5).helical_equipartition


class TestFrameLaplacian:
    def test_straight_line_all_zero(self):
        lap = frame_laplacian_exact(FilamentGeometry(kappa0=0.0, tau0=0.0))
        assert np.all(lap.exact == 0.0)
        assert np.all(lap.residual == 0.0)

    def test_equipartition_normal_coefficient(self):
        # exact n'' = -2 n, the simplified form claims -1, gap exactly 1
        lap = frame_laplacian_exact(FilamentGeometry(kappa0=1.0, tau0=1.0))
        assert lap.exact[1, 1] == -2.0
        assert lap.simplified[1, 1] == -1.0
        assert abs(lap.residual[1, 1]) == 1.0

    def test_torsion_free_tangent_row_exact(self):
        lap = frame_laplacian_exact(FilamentGeometry(kappa0=1.0, tau0=0.0))
        assert np.allclose(lap.exact[0], [-1.0, 0.0, 0.0])
        assert np.all(lap.residual[0] == 0.0)

    def test_normal_gap_is_kappa_squared(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            k = rng.uniform(0.01, 10.0)
            lap = frame_laplacian_exact(FilamentGeometry(kappa0=k, tau0=k))
            assert abs(lap.residual[1, 1]) == k * k

    def test_exact_matches_derivative_of_frame_equations(self):
        # differentiate the first derivatives once more by finite differences
        spec = HelixSpec(a=1.3, b_pitch=0.4)
        geom = helix_frame(spec, 0.0).geom
        lap = frame_laplacian_exact(geom)
        h = 1e-4
        for row, attr in enumerate(("t", "n", "b")):
            plus = getattr(helix_frame(spec, h).frame, attr)
            mid = getattr(helix_frame(spec, 0.0).frame, attr)
            minus = getattr(helix_frame(spec, -h).frame, attr)
            second = (plus - 2 * mid + minus) / h**2
            basis = helix_frame(spec, 0.0).frame
            expected = (
                lap.exact[row, 0] * basis.t
                + lap.exact[row, 1] * basis.n
                + lap.exact[row, 2] * basis.b
            )
            assert np.max(np.abs(second - expected)) < 1e-6


class TestSolenoidalResidual:
    def test_zero_field(self):
        geom = FilamentGeometry(kappa0=1.0, tau0=1.0)
        assert solenoidal_residual(0.0, 0.0, geom, 0.0) == 0.0

    def test_satisfied_constraint(self):
        geom = FilamentGeometry(kappa0=1.0, tau0=1.0)
        assert solenoidal_residual(1.0, 5.0, geom, 1.0) == 0.0

    def test_constant_binormal_flags_residual(self):
        # constant amplitudes cannot satisfy the constraint with kappa0 > 0
        geom = FilamentGeometry(kappa0=1.0, tau0=1.0)
        assert solenoidal_residual(1.0, 1.0, geom, 0.0) == -1.0
