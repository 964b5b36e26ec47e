"""ABC flow evaluation and its reduction in twisted flux-tube coordinates.

The velocity field is evaluated in two forms: the complex-exponential form
(whose imaginary part must cancel and is asserted to) and the standard
trigonometric form used as an independent oracle; the two satisfy
``complex_form(p) == 2 * standard_form(-p)`` exactly.  On the tube side the
module provides the cylinder-with-twist coordinate map, the transformed
velocity components with their singularity guards, stagnation-point
classification and the marginal / slow growth-rate reduction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ComplexResidualError, DomainError, ValidationError

#: Exclusion band around the csc/tan singularities.
SINGULAR_TOL = 1e-12

#: Cap on the imaginary residue of the complex-form evaluation.
IMAG_TOL = 1e-13


@dataclass(frozen=True)
class ABCParams:
    """Flow amplitudes (A, B, C)."""

    A: float
    B: float
    C: float

    def __post_init__(self) -> None:
        for name in ("A", "B", "C"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"amplitude {name} must be finite")

    @property
    def is_strong_stagnation(self) -> bool:
        """B == C == 0, where the toroidal tube flow vanishes identically."""
        return self.B == 0.0 and self.C == 0.0


@dataclass(frozen=True)
class TubePoint:
    """Twisted flux-tube coordinates (r, s, theta0, tau0).

    The twist angle at arclength s is theta0 - tau0 * s (constant-torsion
    specialization of the twist integral).
    """

    r: float
    s: float
    theta0: float
    tau0: float

    def __post_init__(self) -> None:
        for name in ("r", "s", "theta0", "tau0"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"tube coordinate {name} must be finite")
        if self.r < 0.0:
            raise ValidationError("tube radius must be nonnegative")

    def twist_angle(self) -> float:
        return self.theta0 - self.tau0 * self.s


@dataclass(frozen=True)
class TubeField:
    """Toroidal and poloidal field amplitudes in the tube frame."""

    B_s: float
    B_theta: float

    def __post_init__(self) -> None:
        for name in ("B_s", "B_theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"field amplitude {name} must be finite")


def abc_velocity_complex(params: ABCParams, point: np.ndarray) -> np.ndarray:
    """ABC velocity from the complex-exponential component sum.

    Components (before amplitudes):

        A-part: (i, 1, 0) e^{iz} + (-i, 1, 0) e^{-iz}
        B-part: (0, i, 1) e^{ix} + (0, -i, 1) e^{-ix}
        C-part: (1, 0, i) e^{iy} + (1, 0, -i) e^{-iy}

    The sum is real up to roundoff; a residual imaginary part above 1e-13
    signals a transcription bug and raises.
    """
    x, y, z = (float(v) for v in np.asarray(point, dtype=float))
    ex, emx = cmath.exp(1j * x), cmath.exp(-1j * x)
    ey, emy = cmath.exp(1j * y), cmath.exp(-1j * y)
    ez, emz = cmath.exp(1j * z), cmath.exp(-1j * z)
    vx = params.A * (1j * ez - 1j * emz) + params.C * (ey + emy)
    vy = params.A * (ez + emz) + params.B * (1j * ex - 1j * emx)
    vz = params.B * (ex + emx) + params.C * (1j * ey - 1j * emy)
    vec = np.array([vx, vy, vz])
    imag = float(np.max(np.abs(vec.imag)))
    if imag > IMAG_TOL:
        raise ComplexResidualError(
            f"complex-form velocity left imaginary residue {imag!r} > {IMAG_TOL}"
        )
    return vec.real


def abc_velocity_standard(params: ABCParams, point: np.ndarray) -> np.ndarray:
    """Textbook ABC field, the independent oracle for the complex form.

        (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)

    Beltrami with unit eigenvalue (curl V == V) and divergence-free for all
    amplitudes.  Relation to the complex form:
    ``abc_velocity_complex(p) == 2 * abc_velocity_standard(-p)``.
    """
    x, y, z = (float(v) for v in np.asarray(point, dtype=float))
    return np.array(
        [
            params.A * math.sin(z) + params.C * math.cos(y),
            params.B * math.sin(x) + params.A * math.cos(z),
            params.C * math.sin(y) + params.B * math.cos(x),
        ]
    )


def tube_to_cartesian(tp: TubePoint) -> np.ndarray:
    """Coordinate map (r, s, theta0) -> (r cos theta, r sin theta, s).

    The axial coordinate is taken as exactly s (thin-tube reduction).
    """
    theta = tp.twist_angle()
    return np.array([tp.r * math.cos(theta), tp.r * math.sin(theta), tp.s])


@dataclass(frozen=True)
class TubeVelocity:
    """Tube-frame velocity sample.

    ``v_r_imag`` is the imaginary part discarded from the radial bracket;
    the mixed cos/sin phases of that bracket make it nonzero in general,
    so it is reported as a diagnostic instead of silently dropped.
    """

    v_s: float
    v_r: float
    v_r_imag: float


def tube_velocity(
    params: ABCParams, tp: TubePoint, *, symmetrize_bracket: bool = False
) -> TubeVelocity:
    """ABC velocity components in the tube frame.

        V_s = 2 B cos(r cos theta) + 2 C cos(r sin theta)
        V_r = csc(theta) / (1 + r) * Re[ i A m + i C n
              + i r B (e^{i r cos theta} - e^{-i r q}) ]

    with m = e^{i r s} - e^{-i r s}, n = e^{i r sin theta} - e^{-i r sin
    theta}, and q = sin theta by default.  ``symmetrize_bracket=True`` sets
    q = cos theta, which makes the last term purely real; the default keeps
    the mixed phases as circulated.  Points with |sin theta| < 1e-12 are
    singular and rejected.
    """
    theta = tp.twist_angle()
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    if abs(sin_t) < SINGULAR_TOL:
        raise DomainError(
            f"tube velocity is singular at twist angle {theta!r} (csc theta)"
        )
    r = tp.r
    v_s = 2.0 * params.B * math.cos(r * cos_t) + 2.0 * params.C * math.cos(r * sin_t)
    m = cmath.exp(1j * r * tp.s) - cmath.exp(-1j * r * tp.s)
    n = cmath.exp(1j * r * sin_t) - cmath.exp(-1j * r * sin_t)
    q = cos_t if symmetrize_bracket else sin_t
    b_term = 1j * r * params.B * (cmath.exp(1j * r * cos_t) - cmath.exp(-1j * r * q))
    bracket = 1j * params.A * m + 1j * params.C * n + b_term
    w = bracket / (sin_t * (1.0 + r))
    return TubeVelocity(v_s=v_s, v_r=w.real, v_r_imag=w.imag)


def radial_flow_near_axis(A: float, theta: float, s: float) -> float:
    """Near-axis radial flow ``A csc(theta) * s``.

    The thin-tube approximation of the radial component close to the
    magnetic axis; linear in arclength.  It is not the r -> 0 limit of the
    full radial bracket as written (that limit vanishes with r), so it is
    exposed as its own formula.
    """
    sin_t = math.sin(theta)
    if abs(sin_t) < SINGULAR_TOL:
        raise DomainError(f"near-axis radial flow is singular at theta={theta!r}")
    return A * s / sin_t


class StagnationClass(Enum):
    STRONG_STAGNATION = "STRONG_STAGNATION"
    NO_STAGNATION_CONSTRAINT = "NO_STAGNATION_CONSTRAINT"


def stagnation_classify(params: ABCParams) -> StagnationClass:
    """Strong-stagnation test: B == C == 0.

    At a strong stagnation point the toroidal tube flow is identically
    zero and no dynamo action is possible; only marginal modes remain.
    """
    if params.is_strong_stagnation:
        return StagnationClass.STRONG_STAGNATION
    return StagnationClass.NO_STAGNATION_CONSTRAINT


class TubeRegime(Enum):
    MARGINAL = "MARGINAL"
    TRIVIAL_FIELD = "TRIVIAL_FIELD"
    SLOW_CANDIDATE = "SLOW_CANDIDATE"


@dataclass(frozen=True)
class TubeGrowthResult:
    """Outcome of the tube-frame growth-rate reduction.

    ``gamma`` is exactly 0.0 in the marginal regime and None where the
    reduction yields no numeric rate.  ``required_toroidal`` is the
    toroidal amplitude pinned by the marginal constraint,
    B_theta / (tau0 r^2); ``constraint_residual`` is B_s minus that value.
    """

    gamma: float | None
    regime: TubeRegime
    required_toroidal: float | None
    constraint_residual: float | None


def toroidal_constraint(b_theta: float, tau0: float, r: float) -> float:
    """Toroidal amplitude forced by marginality: ``B_theta / (tau0 * r^2)``."""
    if r <= 0.0:
        raise DomainError("toroidal constraint divides by r^2; r must be positive")
    if tau0 == 0.0:
        raise DomainError("toroidal constraint divides by tau0; tau0 must be nonzero")
    return b_theta / (tau0 * r * r)


def tube_growth_rate(field: TubeField, tp: TubePoint, eta: float) -> TubeGrowthResult:
    """Local growth rate of the tube-frame induction reduction.

    With zero resistivity and a nonzero poloidal amplitude the reduction
    forces gamma * B_theta / r^2 = 0, i.e. an exactly marginal mode, and
    pins the toroidal amplitude to B_theta / (tau0 r^2).  A vanishing
    poloidal amplitude is the trivial case.  Finite resistivity breaks the
    marginality argument, flagging that slow modes become possible; no
    numeric slow rate follows from this reduction.
    """
    if not math.isfinite(eta) or eta < 0.0:
        raise ValidationError("resistivity eta must be finite and nonnegative")
    if tp.r <= 0.0:
        raise DomainError("tube growth rate needs r > 0 (the constraint divides by r^2)")
    if field.B_theta == 0.0:
        return TubeGrowthResult(
            gamma=None,
            regime=TubeRegime.TRIVIAL_FIELD,
            required_toroidal=None,
            constraint_residual=None,
        )
    required = toroidal_constraint(field.B_theta, tp.tau0, tp.r)
    residual = field.B_s - required
    if eta == 0.0:
        return TubeGrowthResult(
            gamma=0.0,
            regime=TubeRegime.MARGINAL,
            required_toroidal=required,
            constraint_residual=residual,
        )
    return TubeGrowthResult(
        gamma=None,
        regime=TubeRegime.SLOW_CANDIDATE,
        required_toroidal=required,
        constraint_residual=residual,
    )


def radial_flow_gradient(A: float, theta: float, tau0: float, s: float) -> float:
    """Arclength gradient of the radial flow at a strong stagnation point.

        dV_r/ds = A [ (1 + tan^2 theta) tau0^2 + cos s ]

    Singular at theta = pi/2 + k pi (tan theta); an exclusion band of
    1e-12 on |cos theta| is enforced.
    """
    cos_t = math.cos(theta)
    if abs(cos_t) < SINGULAR_TOL:
        raise DomainError(f"radial flow gradient is singular at theta={theta!r}")
    tan_sq = math.tan(theta) ** 2
    return A * ((1.0 + tan_sq) * tau0 * tau0 + math.cos(s))
