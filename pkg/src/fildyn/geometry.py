"""Frenet-frame kinematics of helical filaments.

Every operator coefficient downstream is a function of the filament's
constant curvature and torsion, so this module carries the frame evolution
equations, an exact circular-helix realization that serves as the
finite-difference oracle for them, the exact constant-coefficient frame
Laplacians next to the simplified single-eigenvalue form, and the
solenoidal-constraint residual.  Everything here is a pure function of its
inputs and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError

#: Tolerance for frame orthonormality checks.
FRAME_TOL = 1e-12


@dataclass(frozen=True)
class FilamentGeometry:
    """Constant Frenet curvature and torsion of a filament.

    Curvature is nonnegative because it comes from a curve; torsion may
    carry either sign.  ``helical_equipartition`` marks the
    ``kappa0 == tau0`` specialization and is derived from the two scalars
    when omitted.
    """

    kappa0: float
    tau0: float
    helical_equipartition: bool | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.kappa0) and math.isfinite(self.tau0)):
            raise ValidationError("curvature and torsion must be finite")
        if self.kappa0 < 0.0:
            raise ValidationError("Frenet curvature must be nonnegative")
        if self.helical_equipartition is None:
            object.__setattr__(self, "helical_equipartition", self.kappa0 == self.tau0)
        elif self.helical_equipartition and self.kappa0 != self.tau0:
            raise ValidationError("helical equipartition requires kappa0 == tau0")


@dataclass(frozen=True, eq=False)
class FrenetFrame:
    """Orthonormal (tangent, normal, binormal) triad along the filament."""

    t: np.ndarray
    n: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        for name in ("t", "n", "b"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (3,) or not np.all(np.isfinite(vec)):
                raise ValidationError(f"frame vector {name} must be a finite 3-vector")
            if abs(float(np.linalg.norm(vec)) - 1.0) > FRAME_TOL:
                raise ValidationError(f"frame vector {name} must have unit norm")
            object.__setattr__(self, name, vec)
        if (
            abs(float(self.t @ self.n)) > FRAME_TOL
            or abs(float(self.t @ self.b)) > FRAME_TOL
            or abs(float(self.n @ self.b)) > FRAME_TOL
        ):
            raise ValidationError("frame vectors must be pairwise orthogonal")
        if float(np.max(np.abs(np.cross(self.t, self.n) - self.b))) > FRAME_TOL:
            raise ValidationError("binormal must equal t x n")


@dataclass(frozen=True)
class HelixSpec:
    """Circular helix with radius ``a`` and pitch parameter ``b_pitch``.

    The only curve with constant curvature and torsion both nonzero, which
    makes it the canonical concrete filament: every frame identity can be
    checked against its closed forms.
    """

    a: float
    b_pitch: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b_pitch)):
            raise ValidationError("helix parameters must be finite")
        if self.a <= 0.0:
            raise ValidationError("helix radius must be positive")

    @property
    def curvature(self) -> float:
        return self.a / (self.a**2 + self.b_pitch**2)

    @property
    def torsion(self) -> float:
        return self.b_pitch / (self.a**2 + self.b_pitch**2)


class HelixSample(NamedTuple):
    point: np.ndarray
    frame: FrenetFrame
    geom: FilamentGeometry


def frenet_derivative(
    frame: FrenetFrame, geom: FilamentGeometry
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arclength derivatives ``(dt/ds, dn/ds, db/ds)`` of the frame.

    dt/ds = kappa0 * n
    dn/ds = -kappa0 * t + tau0 * b
    db/ds = -tau0 * n
    """
    k, tau = geom.kappa0, geom.tau0
    return k * frame.n, -k * frame.t + tau * frame.b, -tau * frame.n


def helix_frame(spec: HelixSpec, s: float) -> HelixSample:
    """Arclength-parameterized helix point with its exact Frenet frame.

    Returns the point, the analytic frame and the geometry carrying
    kappa = a/(a^2 + b^2) and tau = b/(a^2 + b^2).
    """
    if not math.isfinite(s):
        raise ValidationError("arclength must be finite")
    a, b = spec.a, spec.b_pitch
    c = math.hypot(a, b)
    u = s / c
    cos_u, sin_u = math.cos(u), math.sin(u)
    point = np.array([a * cos_u, a * sin_u, b * u])
    t = np.array([-a * sin_u / c, a * cos_u / c, b / c])
    n = np.array([-cos_u, -sin_u, 0.0])
    bv = np.array([b * sin_u / c, -b * cos_u / c, a / c])
    geom = FilamentGeometry(kappa0=spec.curvature, tau0=spec.torsion)
    return HelixSample(point, FrenetFrame(t, n, bv), geom)


@dataclass(frozen=True, eq=False)
class FrameLaplacian:
    """Second arclength derivatives of (t, n, b) as coefficient matrices.

    Rows are the differentiated vectors (t, n, b), columns the expansion
    coefficients over (t, n, b).  ``exact`` follows from differentiating
    the frame evolution equations with constant coefficients:

        t'' = -kappa^2 t + kappa tau b
        n'' = -(kappa^2 + tau^2) n
        b'' = kappa tau t - tau^2 b

    ``simplified`` applies the single eigenvalue -kappa0^2 to every frame
    vector (only its t and n rows are externally asserted; the b row
    continues the same pattern).  ``residual`` is exact - simplified; at
    kappa0 == tau0 its n-coefficient equals -kappa0^2, i.e. the simplified
    form underestimates the normal diffusion by exactly a factor of two.
    """

    exact: np.ndarray
    simplified: np.ndarray
    residual: np.ndarray


def frame_laplacian_exact(geom: FilamentGeometry) -> FrameLaplacian:
    """Exact and simplified frame Laplacian coefficients with their gap."""
    k, tau = geom.kappa0, geom.tau0
    exact = np.array(
        [
            [-k * k, 0.0, k * tau],
            [0.0, -(k * k + tau * tau), 0.0],
            [k * tau, 0.0, -tau * tau],
        ]
    )
    simplified = np.diag([-k * k, -k * k, -k * k])
    return FrameLaplacian(exact=exact, simplified=simplified, residual=exact - simplified)


def solenoidal_residual(
    B_n: float, B_b: float, geom: FilamentGeometry, dBb_ds: float
) -> float:
    """Divergence-constraint residual ``d(B_b)/ds - kappa0 * B_n``.

    Zero means the two-component field is solenoidal.  The residual is
    reported rather than enforced: with both amplitudes constant and
    kappa0 > 0 it cannot vanish unless B_n does, so it acts as a
    diagnostic, not a validity gate.  ``B_b`` does not enter the formula;
    it is accepted so call sites can hand over the full field state they
    are auditing.
    """
    del B_b
    return dBb_ds - geom.kappa0 * B_n
