"""Self-verification suites: oracle cross-checks with machine-readable results.

Each suite compares an implementation route against an independent oracle
(finite differences for the frame equations, the matrix exponential for
RK4, the time-domain fit for the spectra, the standard trigonometric field
for the complex ABC form) and reports its worst residual against a fixed
threshold.  A scheme-mismatch fault can be injected into the
spectral-temporal suite as a negative control.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .abc_flow import (
    ABCParams,
    TubeField,
    TubePoint,
    TubeRegime,
    abc_velocity_complex,
    abc_velocity_standard,
    tube_growth_rate,
)
from .errors import ConfigError
from .evolution import CoefficientScheme, PlasmaParams, build_matrix
from .flow import FlowProfile
from .geometry import (
    FilamentGeometry,
    HelixSpec,
    frame_laplacian_exact,
    frenet_derivative,
    helix_frame,
)
from .sim import cross_check, fit_growth_rate, integrate
from .spectrum import GrowthTag, characteristic_roots, classify, spectrum_from_real_roots


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    max_residual: float
    threshold: float
    detail: str = ""


SUITE_NAMES = (
    "frenet-fd",
    "laplacian-audit",
    "branch-oscillatory",
    "branch-degenerate",
    "spectral-temporal",
    "rk4-order",
    "abc-equivalence",
    "tube-marginality",
)

#: Randomized-draw box for the spectral-temporal suite.
DRAW_BOX = {"kappa0": (0.1, 5.0), "alpha": (-5.0, 5.0), "beta": (0.0, 1.0), "v_s": (-2.0, 2.0)}


def suite_frenet_fd(seed: int, helices: int = 100, samples: int = 10, step: float = 1e-5) -> SuiteResult:
    """Analytic frame derivatives vs central differences over random helices."""
    rng = np.random.default_rng(seed)
    threshold = 1e-6
    worst = 0.0
    for _ in range(helices):
        spec = HelixSpec(a=rng.uniform(0.1, 10.0), b_pitch=rng.uniform(0.1, 10.0))
        for _ in range(samples):
            s = rng.uniform(-10.0, 10.0)
            sample = helix_frame(spec, s)
            derivs = frenet_derivative(sample.frame, sample.geom)
            plus = helix_frame(spec, s + step)
            minus = helix_frame(spec, s - step)
            for analytic, fwd, bwd in zip(
                derivs,
                (plus.frame.t, plus.frame.n, plus.frame.b),
                (minus.frame.t, minus.frame.n, minus.frame.b),
            ):
                fd = (fwd - bwd) / (2.0 * step)
                worst = max(worst, float(np.max(np.abs(analytic - fd))))
    return SuiteResult("frenet-fd", worst < threshold, worst, threshold,
                       f"{helices} helices x {samples} arclengths, h={step!r}")


def suite_laplacian_audit(seed: int, draws: int = 50) -> SuiteResult:
    """Exact frame Laplacian vs the simplified single-eigenvalue form.

    At kappa0 == tau0 the n-coefficient residual must equal kappa0^2
    exactly (the factor-two normal-diffusion gap); at tau0 == 0 the
    tangent row must have no residual.
    """
    rng = np.random.default_rng(seed)
    threshold = 1e-12
    worst = 0.0
    for _ in range(draws):
        k = rng.uniform(0.1, 5.0)
        equip = frame_laplacian_exact(FilamentGeometry(kappa0=k, tau0=k))
        worst = max(worst, abs(abs(float(equip.residual[1, 1])) - k * k))
        flat = frame_laplacian_exact(FilamentGeometry(kappa0=k, tau0=0.0))
        worst = max(worst, float(np.max(np.abs(flat.residual[0]))))
    return SuiteResult("laplacian-audit", worst < threshold, worst, threshold,
                       f"{draws} draws; n-coefficient gap == kappa0^2, tangent row exact at tau0=0")


def suite_branch_oscillatory(dt: float = 1e-3, t_end: float = 100.0) -> SuiteResult:
    """Curvature-only point: roots +/- i kappa0, norm conservation, frequency."""
    geom = FilamentGeometry(kappa0=1.0, tau0=1.0)
    params = PlasmaParams(alpha=0.0, beta=0.0, lambda_exp=1.0, flow=FlowProfile(v_s=-1.0))
    matrix = build_matrix(geom, params, CoefficientScheme.KAPPA_QUADRATIC)
    spec = characteristic_roots(matrix)
    root_res = max(abs(spec.gamma_plus - 1j), abs(spec.gamma_minus + 1j))
    traj = integrate(matrix, (1.0, 0.0), t_end, dt)
    norms = np.hypot(traj.states[:, 0], traj.states[:, 1]) * np.exp(traj.log_scale)
    norm_res = float(np.max(np.abs(norms - 1.0)))
    fit = fit_growth_rate(traj)
    freq_res = abs(fit.im_gamma - 1.0)
    worst = max(root_res / 1e-12, norm_res / 1e-5, freq_res / 1e-4)
    return SuiteResult("branch-oscillatory", worst < 1.0, worst, 1.0,
                       f"roots {root_res:.3e}/1e-12, norm {norm_res:.3e}/1e-5, freq {freq_res:.3e}/1e-4")


def suite_branch_degenerate(dt: float = 1e-3) -> SuiteResult:
    """Degenerate locus: discriminant zero, double root, FAST, temporal rate."""
    threshold = 1.0
    worst = 0.0
    for kappa0 in np.linspace(0.01, 10.0, 100):
        k = float(kappa0)
        al = -2.0 * k
        disc = al * al + 4.0 * (al + k) * k
        gamma = -0.5 * al
        worst = max(worst, abs(disc) / 1e-10, abs(gamma - k) / 1e-10)
        family = spectrum_from_real_roots(k, k)
        mode = classify(lambda _b: family)
        if mode.growth is not GrowthTag.FAST or not mode.degenerate:
            return SuiteResult("branch-degenerate", False, math.inf, threshold,
                               f"classification {mode.label} at kappa0={k!r}")
        traj = integrate(np.array([[k, 0.0], [0.0, k]]), (1.0, 1.0), 10.0, dt)
        fit = fit_growth_rate(traj)
        worst = max(worst, abs(fit.re_gamma - k) / 1e-4)
    return SuiteResult("branch-degenerate", worst < threshold, worst, threshold,
                       "100 kappa0 in [0.01, 10]; residuals normalized to their tolerances")


def _draw_params(rng: np.random.Generator) -> tuple[FilamentGeometry, PlasmaParams]:
    geom = FilamentGeometry(kappa0=rng.uniform(*DRAW_BOX["kappa0"]), tau0=0.0)
    flow = FlowProfile(v_s=rng.uniform(*DRAW_BOX["v_s"]))
    params = PlasmaParams(
        alpha=rng.uniform(*DRAW_BOX["alpha"]),
        beta=rng.uniform(*DRAW_BOX["beta"]),
        lambda_exp=1.0,
        flow=flow,
    )
    return geom, params


def suite_spectral_temporal(
    seed: int, draws: int = 100, inject_fault: str = "none"
) -> SuiteResult:
    """Fitted temporal rates vs eigenvalues over the documented draw box.

    ``inject_fault='scheme_mismatch'`` integrates the linear-damping matrix
    while comparing against the quadratic-damping spectrum; the suite must
    then fail, which is the negative control for the whole oracle loop.
    """
    rng = np.random.default_rng(seed)
    threshold = 1e-4
    worst = 0.0
    scheme = CoefficientScheme.KAPPA_QUADRATIC
    for _ in range(draws):
        geom, params = _draw_params(rng)
        if inject_fault == "scheme_mismatch":
            spec = characteristic_roots(build_matrix(geom, params, scheme))
            faulty = build_matrix(geom, params, CoefficientScheme.KAPPA_LINEAR)
            traj = integrate(faulty, (1.0, 0.6180339887498949), 20.0, 1e-3)
            fit = fit_growth_rate(traj)
            worst = max(worst, abs(fit.re_gamma - spec.gamma_plus.real))
        else:
            result = cross_check(geom, params, scheme)
            worst = max(worst, result.re_residual)
            if result.im_residual is not None:
                worst = max(worst, result.im_residual)
    return SuiteResult("spectral-temporal", worst < threshold, worst, threshold,
                       f"{draws} seeded draws, scheme {scheme.value}, fault={inject_fault}")


def suite_rk4_order(seed: int, dt: float = 1e-3, matrices: int = 20) -> SuiteResult:
    """Halving dt must shrink the terminal error >= 12x vs the exponential."""
    rng = np.random.default_rng(seed)
    base_dt = 0.02 * (dt / 1e-3)
    threshold = 12.0
    min_ratio = math.inf
    b0 = np.array([1.0, 0.5])
    for _ in range(matrices):
        m = rng.uniform(-1.0, 1.0, size=(2, 2))
        exact = expm(m) @ b0
        errors = []
        for step in (base_dt, base_dt / 2.0):
            traj = integrate(m, (b0[0], b0[1]), 1.0, step)
            errors.append(float(np.max(np.abs(traj.states[-1] - exact))))
        min_ratio = min(min_ratio, errors[0] / errors[1])
    return SuiteResult("rk4-order", min_ratio >= threshold, min_ratio, threshold,
                       f"{matrices} random matrices, dt {base_dt!r} -> {base_dt / 2.0!r}; "
                       "residual column holds the worst (smallest) ratio")


def _fd_divergence(params: ABCParams, point: np.ndarray, h: float = 1e-6) -> float:
    div = 0.0
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        plus = abc_velocity_standard(params, point + offset)[axis]
        minus = abc_velocity_standard(params, point - offset)[axis]
        div += (plus - minus) / (2.0 * h)
    return div


def _fd_curl(params: ABCParams, point: np.ndarray, h: float = 1e-5) -> np.ndarray:
    jac = np.empty((3, 3))
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        plus = abc_velocity_standard(params, point + offset)
        minus = abc_velocity_standard(params, point - offset)
        jac[:, axis] = (plus - minus) / (2.0 * h)
    return np.array(
        [jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]]
    )


def suite_abc_equivalence(seed: int, points: int = 1000) -> SuiteResult:
    """Complex form vs reflected-and-doubled standard form, plus field laws."""
    rng = np.random.default_rng(seed)
    threshold = 1.0
    worst = 0.0
    for index in range(points):
        params = ABCParams(*rng.uniform(-2.0, 2.0, size=3))
        point = rng.uniform(-math.pi, math.pi, size=3)
        paper_like = abc_velocity_complex(params, point)
        mirrored = 2.0 * abc_velocity_standard(params, -point)
        worst = max(worst, float(np.max(np.abs(paper_like - mirrored))) / 1e-12)
        if index % 20 == 0:  # derivative checks are 6 evaluations each
            worst = max(worst, abs(_fd_divergence(params, point)) / 1e-6)
            curl = _fd_curl(params, point)
            field = abc_velocity_standard(params, point)
            worst = max(worst, float(np.max(np.abs(curl - field))) / 1e-5)
    return SuiteResult("abc-equivalence", worst < threshold, worst, threshold,
                       f"{points} random points; equivalence/1e-12, div/1e-6, curl/1e-5")


def suite_tube_marginality() -> SuiteResult:
    """Marginal rate is exactly zero with eta=0; eta>0 flips to slow candidate."""
    threshold = 1e-12
    worst = 0.0
    for r in np.linspace(0.2, 2.0, 10):
        for theta0 in np.linspace(0.3, 2.8, 10):
            tp = TubePoint(r=float(r), s=0.0, theta0=float(theta0), tau0=1.0)
            b_theta = 1.0
            field = TubeField(B_s=b_theta / (tp.tau0 * tp.r * tp.r), B_theta=b_theta)
            ideal = tube_growth_rate(field, tp, eta=0.0)
            if ideal.regime is not TubeRegime.MARGINAL or ideal.gamma != 0.0:
                return SuiteResult("tube-marginality", False, math.inf, threshold,
                                   f"unexpected regime {ideal.regime} at r={r!r}")
            worst = max(worst, abs(ideal.constraint_residual or 0.0))
            resistive = tube_growth_rate(field, tp, eta=0.01)
            if resistive.regime is not TubeRegime.SLOW_CANDIDATE:
                return SuiteResult("tube-marginality", False, math.inf, threshold,
                                   f"eta>0 did not flip to SLOW_CANDIDATE at r={r!r}")
    return SuiteResult("tube-marginality", worst < threshold, worst, threshold,
                       "100-point (r, theta) grid, eta in {0, 0.01}")


def run_suites(
    names: list[str] | None = None,
    *,
    seed: int = 0,
    draws: int = 100,
    dt: float = 1e-3,
    t_end: float = 100.0,
    inject_fault: str = "none",
    threads: int = 1,
) -> list[SuiteResult]:
    """Run the named suites (all by default) over a worker pool."""
    selected = list(SUITE_NAMES) if not names else names
    unknown = [name for name in selected if name not in SUITE_NAMES]
    if unknown:
        raise ConfigError(
            f"unknown verify suites {unknown!r}; available: {', '.join(SUITE_NAMES)}"
        )

    jobs = {
        "frenet-fd": lambda: suite_frenet_fd(seed + 1),
        "laplacian-audit": lambda: suite_laplacian_audit(seed + 2),
        "branch-oscillatory": lambda: suite_branch_oscillatory(dt=dt, t_end=t_end),
        "branch-degenerate": lambda: suite_branch_degenerate(dt=dt),
        "spectral-temporal": lambda: suite_spectral_temporal(
            seed + 3, draws=draws, inject_fault=inject_fault
        ),
        "rk4-order": lambda: suite_rk4_order(seed + 4, dt=dt),
        "abc-equivalence": lambda: suite_abc_equivalence(seed + 5),
        "tube-marginality": suite_tube_marginality,
    }
    runners = [jobs[name] for name in selected]
    if threads <= 1:
        return [run() for run in runners]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda run: run(), runners))
