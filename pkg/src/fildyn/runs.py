"""Point evaluation and parameter sweeps over the spectrum pipeline.

Every sweep row is the result of one pure point evaluation, so grids can
fan out over a worker pool; assembly keeps the deterministic lexicographic
row order regardless of completion order.  On the two closed-form loci
(the degenerate locus alpha*lambda == -2 kappa0 and the laminar locus
kappa0 == -alpha*lambda, both at beta == 0 and v_s == -1) the reported
spectrum is the closed-form branch, with the matrix-derived roots and the
branch-vs-matrix offset carried alongside.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .config import GridAxis, RunConfig
from .errors import ConfigError
from .evolution import CoefficientScheme, PlasmaParams, build_matrix
from .flow import FlowProfile
from .geometry import FilamentGeometry
from .spectrum import (
    BRANCH_TOL,
    Spectrum,
    characteristic_roots,
    degenerate_branch,
    laminar_closed_form,
    spectrum_from_real_roots,
)

#: Sweep output columns, in contract order.
CSV_COLUMNS = (
    "kappa0",
    "tau0",
    "v_s",
    "alpha",
    "lambda",
    "beta",
    "scheme",
    "re_gamma_plus",
    "im_gamma_plus",
    "re_gamma_minus",
    "im_gamma_minus",
    "discriminant",
    "classification",
)

#: Axis iteration order for sweeps (rows are lexicographic over these).
CANONICAL_AXES = ("kappa0", "tau0", "v_s", "alpha", "lambda", "beta")

DEFAULT_MAX_ROWS = 10_000_000


@dataclass(frozen=True)
class PointSpec:
    """One fully-specified parameter point."""

    kappa0: float
    tau0: float
    v_s: float
    alpha: float
    lambda_exp: float
    beta: float
    v_n: float = 0.0
    v_n_meansq: float = 1.0
    eta: float = 0.0


@dataclass(frozen=True)
class PointResult:
    """Spectrum of a parameter point, with branch bookkeeping.

    ``spectrum`` is the primary (branch or matrix) spectrum; the
    matrix-derived one is always available, and ``branch_offset`` holds
    (branch - matrix) per root when a closed-form branch applied.
    """

    point: PointSpec
    scheme: CoefficientScheme
    spectrum: Spectrum
    matrix_spectrum: Spectrum
    branch: str | None
    branch_offset: tuple[complex, complex] | None


def evaluate_point(point: PointSpec, scheme: CoefficientScheme) -> PointResult:
    """Spectrum at one parameter point, branch-aware."""
    geom = FilamentGeometry(kappa0=point.kappa0, tau0=point.tau0)
    flow = FlowProfile(v_s=point.v_s, v_n=point.v_n, v_n_meansq=point.v_n_meansq)
    params = PlasmaParams(
        alpha=point.alpha,
        beta=point.beta,
        lambda_exp=point.lambda_exp,
        eta=point.eta,
        flow=flow,
    )
    matrix_spectrum = characteristic_roots(build_matrix(geom, params, scheme))
    branch = None
    primary = matrix_spectrum
    offset = None
    al = params.alpha_lambda
    if point.beta == 0.0 and point.v_s == -1.0:
        if abs(al + 2.0 * point.kappa0) <= BRANCH_TOL:
            gamma = degenerate_branch(point.kappa0).gamma
            primary = spectrum_from_real_roots(gamma, gamma)
            branch = "degenerate"
        elif abs(point.kappa0 + al) <= BRANCH_TOL:
            gp, gm = laminar_closed_form(al, point.kappa0)
            primary = spectrum_from_real_roots(gp, gm)
            branch = "laminar"
    if branch is not None:
        offset = (
            primary.gamma_plus - matrix_spectrum.gamma_plus,
            primary.gamma_minus - matrix_spectrum.gamma_minus,
        )
    return PointResult(
        point=point,
        scheme=scheme,
        spectrum=primary,
        matrix_spectrum=matrix_spectrum,
        branch=branch,
        branch_offset=offset,
    )


def row_dict(result: PointResult) -> dict:
    """Flatten a point result into the sweep column contract."""
    p = result.point
    s = result.spectrum
    return {
        "kappa0": p.kappa0,
        "tau0": p.tau0,
        "v_s": p.v_s,
        "alpha": p.alpha,
        "lambda": p.lambda_exp,
        "beta": p.beta,
        "scheme": result.scheme.value,
        "re_gamma_plus": s.gamma_plus.real,
        "im_gamma_plus": s.gamma_plus.imag,
        "re_gamma_minus": s.gamma_minus.real,
        "im_gamma_minus": s.gamma_minus.imag,
        "discriminant": s.discriminant,
        "classification": s.classification.label,
    }


@dataclass
class SweepPlan:
    """Grid axes (canonical order), base point values, and coupling."""

    axes: list[tuple[str, np.ndarray]]
    base: dict[str, float]
    coupling: str
    scheme: CoefficientScheme
    tau0_pinned: bool

    @property
    def row_count(self) -> int:
        count = 1
        for _, values in self.axes:
            count *= len(values)
        return count


def point_from_config(cfg: RunConfig, scheme: CoefficientScheme) -> PointSpec:
    """Single-point parameters; geometry.kappa0 must be explicit."""
    kappa0 = cfg.require_float("geometry.kappa0")
    tau0 = cfg.get_float("geometry.tau0")
    if tau0 is None:
        tau0 = kappa0
    return PointSpec(
        kappa0=kappa0,
        tau0=tau0,
        v_s=cfg.get_float("plasma.v_s", -1.0),
        alpha=cfg.get_float("plasma.alpha", -1.0),
        lambda_exp=cfg.get_float("plasma.lambda", 1.0),
        beta=cfg.get_float("plasma.beta", 0.0),
        v_n=cfg.get_float("plasma.v_n", 0.0),
        v_n_meansq=cfg.get_float("plasma.v_n_meansq", 1.0),
        eta=cfg.get_float("plasma.eta", 0.0),
    )


def build_sweep_plan(cfg: RunConfig, scheme: CoefficientScheme) -> SweepPlan:
    """Validate and assemble a sweep: axes, base values, row cap."""
    axes: list[tuple[str, np.ndarray]] = []
    for name in CANONICAL_AXES:
        axis = cfg.get_grid(f"sweep.{name}")
        if axis is not None:
            axes.append((name, axis.values()))
    if not axes:
        raise ConfigError("sweep needs at least one sweep.<param> = min:max:count axis")

    axis_names = {name for name, _ in axes}
    base: dict[str, float] = {}
    if "kappa0" not in axis_names:
        base["kappa0"] = cfg.require_float("geometry.kappa0")
    tau0_pinned = cfg.has("geometry.tau0") or "tau0" in axis_names
    if tau0_pinned and "tau0" not in axis_names:
        base["tau0"] = cfg.require_float("geometry.tau0")
    base.setdefault("v_s", cfg.get_float("plasma.v_s", -1.0))
    base.setdefault("alpha", cfg.get_float("plasma.alpha", -1.0))
    base.setdefault("lambda", cfg.get_float("plasma.lambda", 1.0))
    base.setdefault("beta", cfg.get_float("plasma.beta", 0.0))
    base["v_n"] = cfg.get_float("plasma.v_n", 0.0)
    base["v_n_meansq"] = cfg.get_float("plasma.v_n_meansq", 1.0)
    base["eta"] = cfg.get_float("plasma.eta", 0.0)

    coupling = cfg.get_str("sweep.coupling", "none")
    plan = SweepPlan(
        axes=axes, base=base, coupling=coupling, scheme=scheme, tau0_pinned=tau0_pinned
    )
    max_rows = cfg.get_int("sweep.max_rows", DEFAULT_MAX_ROWS)
    if plan.row_count > max_rows:
        raise ConfigError(
            f"sweep would produce {plan.row_count} rows, above the cap of {max_rows}"
        )
    return plan


def iter_points(plan: SweepPlan) -> Iterator[PointSpec]:
    """Grid points in lexicographic order over the canonical axes."""
    names = [name for name, _ in plan.axes]
    value_arrays = [values for _, values in plan.axes]
    for combo in itertools.product(*value_arrays):
        values = dict(plan.base)
        values.update({name: float(v) for name, v in zip(names, combo)})
        if not plan.tau0_pinned:
            values["tau0"] = values["kappa0"]
        if plan.coupling == "degenerate_locus":
            lam = values["lambda"]
            if lam == 0.0:
                raise ConfigError("degenerate locus coupling requires lambda != 0")
            values["alpha"] = -2.0 * values["kappa0"] / lam
        yield PointSpec(
            kappa0=values["kappa0"],
            tau0=values["tau0"],
            v_s=values["v_s"],
            alpha=values["alpha"],
            lambda_exp=values["lambda"],
            beta=values["beta"],
            v_n=values["v_n"],
            v_n_meansq=values["v_n_meansq"],
            eta=values["eta"],
        )


def sweep_rows(plan: SweepPlan, threads: int = 1) -> Iterable[dict]:
    """Evaluate the grid, preserving row order independent of scheduling."""

    def evaluate(point: PointSpec) -> dict:
        return row_dict(evaluate_point(point, plan.scheme))

    if threads <= 1:
        yield from map(evaluate, iter_points(plan))
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(evaluate, iter_points(plan), chunksize=256)


def grid_values(value: float | GridAxis) -> np.ndarray:
    """Uniform access for scalar-or-grid config entries."""
    if isinstance(value, GridAxis):
        return value.values()
    return np.array([float(value)])


def grid_product(*entries: float | GridAxis) -> Iterator[tuple[float, ...]]:
    """Lexicographic product over scalar-or-grid entries."""
    arrays = [grid_values(entry) for entry in entries]
    for combo in itertools.product(*arrays):
        yield tuple(float(v) for v in combo)


def check_grid_cap(count: int, cfg: RunConfig) -> None:
    max_rows = cfg.get_int("sweep.max_rows", DEFAULT_MAX_ROWS)
    if count > max_rows:
        raise ConfigError(f"grid would produce {count} rows, above the cap of {max_rows}")


def scheme_from_token(token: str) -> CoefficientScheme:
    for scheme in CoefficientScheme:
        if scheme.value == token:
            return scheme
    raise ConfigError(f"unknown scheme tag {token!r}")


def monotone_toward_limit(values: list[float], limit: float, slack: float = 1e-12) -> bool:
    """True when deviations from ``limit`` shrink monotonically."""
    devs = [abs(v - limit) for v in values]
    return all(b <= a + slack for a, b in zip(devs, devs[1:]))
