import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fildyn.errors import ConvergenceError, ValidationError
from fildyn.evolution import CoefficientScheme, PlasmaParams, build_matrix
from fildyn.flow import FlowProfile
from fildyn.geometry import FilamentGeometry
from fildyn.spectrum import (
    GOLDEN_RATIO,
    GrowthTag,
    anosov_reference,
    characteristic_roots,
    classify,
    degenerate_branch,
    laminar_closed_form,
    spectrum_from_real_roots,
    spectrum_from_trace_det,
)

moderate = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


class TestCharacteristicRoots:
    def test_pure_rotation(self):
        spec = characteristic_roots(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert spec.gamma_plus == 1j
        assert spec.gamma_minus == -1j
        assert spec.classification.growth is GrowthTag.MARGINAL
        assert spec.classification.oscillatory

    def test_zero_matrix_is_marginal_degenerate(self):
        spec = characteristic_roots(np.zeros((2, 2)))
        assert spec.gamma_plus == 0.0 and spec.gamma_minus == 0.0
        assert spec.discriminant == 0.0
        assert spec.classification.label == "MARGINAL+DEGENERATE"

    def test_laminar_equipartition_matrix_roots(self):
        # trace -1, det 2 -> (-1 +/- i sqrt(7)) / 2, a decaying spiral
        spec = characteristic_roots(np.array([[-1.0, 1.0], [-2.0, 0.0]]))
        assert spec.gamma_plus == pytest.approx(complex(-0.5, math.sqrt(7) / 2), abs=1e-15)
        assert spec.gamma_minus == pytest.approx(complex(-0.5, -math.sqrt(7) / 2), abs=1e-15)
        assert spec.classification.growth is GrowthTag.DECAYING
        assert spec.classification.oscillatory

    @given(trace=moderate, det=moderate)
    def test_root_coefficient_duality(self, trace, det):
        spec = spectrum_from_trace_det(trace, det)
        scale = max(1.0, abs(trace), abs(det))
        assert abs((spec.gamma_plus + spec.gamma_minus) - trace) <= 1e-14 * scale
        assert abs((spec.gamma_plus * spec.gamma_minus) - det) <= 1e-13 * scale

    @given(trace=moderate, det=moderate)
    def test_ordering_and_conjugacy(self, trace, det):
        spec = spectrum_from_trace_det(trace, det)
        assert spec.gamma_plus.real >= spec.gamma_minus.real
        if spec.discriminant < 0:
            assert spec.gamma_plus.imag == -spec.gamma_minus.imag
            assert spec.gamma_plus.imag > 0

    def test_rejects_bad_matrix(self):
        with pytest.raises(ValidationError):
            characteristic_roots(np.ones((3, 3)))


class TestLaminarClosedForm:
    def test_golden_pair(self):
        plus, minus = laminar_closed_form(-1.0, 1.0)
        assert abs(plus - (1 + math.sqrt(5)) / 2) < 1e-12
        assert abs(minus - (1 - math.sqrt(5)) / 2) < 1e-12

    def test_linear_scaling(self):
        plus, minus = laminar_closed_form(-2.0, 2.0)
        assert abs(plus - (1 + math.sqrt(5))) < 1e-12
        assert abs(minus - (1 - math.sqrt(5))) < 1e-12

    def test_validity_condition_enforced(self):
        with pytest.raises(ValidationError, match="validity condition"):
            laminar_closed_form(-1.0, 3.0)


class TestDegenerateBranch:
    def test_unit_curvature(self):
        branch = degenerate_branch(1.0)
        assert branch.alpha_lambda == -2.0
        assert branch.gamma == 1.0

    def test_flat_filament_null_mode(self):
        branch = degenerate_branch(0.0)
        assert branch.alpha_lambda == 0.0 and branch.gamma == 0.0

    def test_substitution_oracle(self):
        # the one locus where quadratic and discriminant agree end to end
        branch = degenerate_branch(2.5)
        al, gamma = branch.alpha_lambda, branch.gamma
        assert al == -5.0 and gamma == 2.5
        quad = gamma**2 + al * gamma - (al + 2.5) * 2.5
        disc = al**2 + 4 * (al + 2.5) * 2.5
        assert abs(quad) < 1e-12 and abs(disc) < 1e-12

    def test_random_curvatures_close_both_expressions(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            k = rng.uniform(0.01, 10.0)
            al, gamma = degenerate_branch(k)
            assert abs(gamma**2 + al * gamma - (al + k) * k) < 1e-10
            assert abs(al**2 + 4 * (al + k) * k) < 1e-10


class TestClassify:
    def test_degenerate_family_is_fast(self):
        family = spectrum_from_real_roots(1.0, 1.0)
        mode = classify(lambda _b: family)
        assert mode.growth is GrowthTag.FAST
        assert mode.degenerate

    def test_oscillatory_family_is_marginal(self):
        geom = FilamentGeometry(kappa0=1.0, tau0=1.0)

        def family(beta):
            params = PlasmaParams(alpha=0.0, beta=beta, lambda_exp=1.0, flow=FlowProfile(v_s=-1.0))
            return characteristic_roots(build_matrix(geom, params, CoefficientScheme.KAPPA_QUADRATIC))

        mode = classify(family)
        assert mode.growth is GrowthTag.MARGINAL
        assert mode.oscillatory
        assert mode.label == "MARGINAL+OSCILLATORY"

    def test_constant_decaying_family(self):
        family = characteristic_roots(np.array([[-1.0, 0.0], [0.0, -2.0]]))
        mode = classify(lambda _b: family)
        assert mode.growth is GrowthTag.DECAYING

    def test_slow_family(self):
        # grows at every finite diffusivity, marginal in the limit
        mode = classify(lambda b: spectrum_from_real_roots(b, -1.0))
        assert mode.growth is GrowthTag.SLOW

    def test_non_monotone_family_raises(self):
        def family(beta):
            bump = 0.5 if beta == 1e-3 else beta
            return spectrum_from_real_roots(bump, -1.0)

        with pytest.raises(ConvergenceError):
            classify(family)

    def test_rescaling_never_changes_tags(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            trace = rng.uniform(-4.0, 4.0)
            det = rng.uniform(-4.0, 4.0)
            base = spectrum_from_trace_det(trace, det)
            if abs(base.gamma_plus.real) < 1e-6 and base.gamma_plus.real != 0.0:
                continue  # stay away from the classification band edge
            for c in (0.5, 3.0, 10.0):
                scaled = spectrum_from_trace_det(c * trace, c * c * det)
                assert scaled.classification.growth is base.classification.growth
                assert scaled.gamma_plus.real == pytest.approx(
                    c * base.gamma_plus.real, rel=1e-12, abs=1e-12
                )


class TestAnosovReference:
    def test_cat_map_pair(self):
        ref = anosov_reference()
        assert abs(ref.cat_map[0] - (3 + math.sqrt(5)) / 2) < 1e-15
        assert abs(ref.cat_map[1] - (3 - math.sqrt(5)) / 2) < 1e-15

    def test_negative_curvature_swaps_golden_pair(self):
        ref = anosov_reference()
        scaled = ref.curvature_scaled(-1.0)
        assert abs(scaled[0] - (1 + math.sqrt(5)) / 2) < 1e-15
        assert abs(scaled[1] - (1 - math.sqrt(5)) / 2) < 1e-15

    def test_golden_ratio_squares_to_stretching_eigenvalue(self):
        ref = anosov_reference()
        assert abs(GOLDEN_RATIO**2 - ref.cat_map[0]) < 1e-12
