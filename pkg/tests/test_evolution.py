import math

import numpy as np
import pytest

from fildyn.errors import ValidationError
from fildyn.evolution import (
    CoefficientScheme,
    PencilVariant,
    PlasmaParams,
    build_matrix,
    pencil_determinant,
    pencil_matrix,
)
from fildyn.flow import FlowProfile
from fildyn.geometry import FilamentGeometry
from fildyn.spectrum import GOLDEN_RATIO, characteristic_roots

ALL_SCHEMES = list(CoefficientScheme)


def make_inputs(kappa0, alpha, beta, v_s, lam=1.0):
    geom = FilamentGeometry(kappa0=kappa0, tau0=kappa0)
    params = PlasmaParams(alpha=alpha, beta=beta, lambda_exp=lam, flow=FlowProfile(v_s=v_s))
    return geom, params


class TestBuildMatrix:
    def test_laminar_equipartition_point(self):
        geom, params = make_inputs(1.0, -1.0, 0.0, -1.0)
        m = build_matrix(geom, params, CoefficientScheme.KAPPA_QUADRATIC)
        assert m.as_array().tolist() == [[-1.0, 1.0], [-2.0, 0.0]]

    def test_curvature_coupling_only(self):
        for scheme in ALL_SCHEMES:
            geom, params = make_inputs(1.0, 0.0, 0.0, -1.0)
            m = build_matrix(geom, params, scheme)
            assert m.as_array().tolist() == [[0.0, 1.0], [-1.0, 0.0]]

    def test_quartic_zero_helicity_point(self):
        geom, params = make_inputs(1.0, 0.0, 0.1, -1.0)
        m = build_matrix(geom, params, CoefficientScheme.ZERO_HELICITY_QUARTIC)
        assert np.allclose(m.as_array(), [[-0.2, 1.0], [-1.0, -0.1]], atol=1e-15)

    def test_binormal_exponent_per_scheme(self):
        geom, params = make_inputs(2.0, 0.0, 0.5, -1.0)
        expected = {
            CoefficientScheme.KAPPA_LINEAR: -0.5 * 2.0,
            CoefficientScheme.KAPPA_QUADRATIC: -0.5 * 4.0,
            CoefficientScheme.ZERO_HELICITY_QUARTIC: -0.5 * 16.0,
            CoefficientScheme.EXACT: -0.5 * 4.0,
        }
        for scheme, m22 in expected.items():
            assert build_matrix(geom, params, scheme).m22 == m22

    def test_zero_helicity_scheme_rejects_nonzero_product(self):
        geom, params = make_inputs(1.0, 0.5, 0.1, -1.0)
        with pytest.raises(ValidationError):
            build_matrix(geom, params, CoefficientScheme.ZERO_HELICITY_QUARTIC)
        # a vanishing product is fine even with alpha != 0
        geom, params = make_inputs(1.0, 0.5, 0.1, -1.0, lam=0.0)
        build_matrix(geom, params, CoefficientScheme.ZERO_HELICITY_QUARTIC)

    def test_exact_scheme_equals_quadratic(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            geom, params = make_inputs(
                rng.uniform(0.0, 5.0),
                rng.uniform(-5.0, 5.0),
                rng.uniform(0.0, 1.0),
                rng.uniform(-2.0, 2.0),
            )
            exact = build_matrix(geom, params, CoefficientScheme.EXACT)
            quad = build_matrix(geom, params, CoefficientScheme.KAPPA_QUADRATIC)
            assert exact.as_array().tolist() == quad.as_array().tolist()

    def test_trace_det_formulas_and_charpoly(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            k = rng.uniform(0.1, 5.0)
            al = rng.uniform(-5.0, 5.0)
            beta = rng.uniform(0.0, 1.0)
            v_s = rng.uniform(-2.0, 2.0)
            scheme = ALL_SCHEMES[rng.integers(0, 2)]  # helicity-compatible schemes
            geom, params = make_inputs(k, al, beta, v_s)
            m = build_matrix(geom, params, scheme)
            p = scheme.binormal_exponent
            assert m.trace == pytest.approx(al - 2 * beta * k**2 - beta * k**p, rel=1e-14, abs=1e-14)
            assert m.det == pytest.approx(
                -beta * k**p * (al - 2 * beta * k**2) - k * (al + k * v_s),
                rel=1e-14, abs=1e-14,
            )
            spec = characteristic_roots(m)
            total = spec.gamma_plus + spec.gamma_minus
            product = spec.gamma_plus * spec.gamma_minus
            scale = max(1.0, abs(m.trace), abs(m.det))
            assert abs(total - m.trace) <= 1e-14 * scale
            assert abs(product - m.det) <= 1e-14 * scale


class TestPencil:
    def test_ideal_limit_as_written_and_corrected(self):
        geom, params = make_inputs(1.0, 0.0, 0.0, -1.0)
        printed = pencil_matrix(geom, params, PencilVariant.IDEAL_LIMIT, 1j)
        assert printed.tolist() == [[1j, -1.0], [1.0, -1j]]
        # the written sign convention does not annihilate +/- i kappa0 ...
        assert pencil_determinant(geom, params, PencilVariant.IDEAL_LIMIT, 1j) == 2.0
        # ... but the corrected pencil (gamma I - M) does
        assert pencil_determinant(
            geom, params, PencilVariant.IDEAL_LIMIT, 1j, corrected=True
        ) == 0.0

    def test_general_all_zero(self):
        geom = FilamentGeometry(kappa0=0.0, tau0=0.0)
        params = PlasmaParams(alpha=0.0, beta=0.0, lambda_exp=0.0, flow=FlowProfile(v_s=0.0))
        d = pencil_matrix(geom, params, PencilVariant.GENERAL, 0.0)
        assert np.all(d == 0.0)

    def test_laminar_as_written_at_unit_gamma(self):
        # direct substitution into the written laminar pencil
        geom, params = make_inputs(1.0, -1.0, 0.0, -1.0)
        printed = pencil_matrix(geom, params, PencilVariant.LAMINAR, 1.0)
        assert printed.tolist() == [[2.0, -1.0], [2.0, -1.0]]
        assert pencil_determinant(geom, params, PencilVariant.LAMINAR, 1.0) == 0.0
        # gamma = 1 is not an eigenvalue of the evolution matrix, though
        assert pencil_determinant(
            geom, params, PencilVariant.LAMINAR, 1.0, corrected=True
        ) == 4.0

    def test_laminar_residual_at_golden_root(self):
        # neither pencil convention is annihilated by the closed-form root;
        # the written determinant there is exactly -sqrt(5)
        geom, params = make_inputs(1.0, -1.0, 0.0, -1.0)
        written = pencil_determinant(geom, params, PencilVariant.LAMINAR, GOLDEN_RATIO)
        assert abs(written + math.sqrt(5.0)) < 1e-12
        corrected = pencil_determinant(
            geom, params, PencilVariant.LAMINAR, GOLDEN_RATIO, corrected=True
        )
        assert abs(corrected) > 1.0

    def test_general_collapses_to_matrix_pencil_when_corrected(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            geom, params = make_inputs(
                rng.uniform(0.1, 5.0),
                rng.uniform(-5.0, 5.0),
                rng.uniform(0.0, 1.0),
                rng.uniform(-2.0, 2.0),
            )
            m = build_matrix(geom, params, CoefficientScheme.KAPPA_QUADRATIC)
            gamma = complex(rng.normal(), rng.normal())
            corrected = pencil_matrix(geom, params, PencilVariant.GENERAL, gamma, corrected=True)
            reference = gamma * np.eye(2) - m.as_array()
            assert np.max(np.abs(corrected - reference)) < 1e-12

    def test_variant_parameter_guards(self):
        geom, params = make_inputs(1.0, -1.0, 0.5, -1.0)
        with pytest.raises(ValidationError):
            pencil_matrix(geom, params, PencilVariant.LAMINAR, 0.0)
        with pytest.raises(ValidationError):
            pencil_matrix(geom, params, PencilVariant.ZERO_HELICITY, 0.0)
