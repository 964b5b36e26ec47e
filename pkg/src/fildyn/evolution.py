"""Construction of the 2x2 evolution operator for the (B_n, B_b) field pair.

The canonical object is the evolution matrix M with dB/dt = M B, whose
eigenvalues are the growth rates.  The exponent of the curvature in the
binormal damping term differs between circulating printings of this model
and changes the physics, so it is an explicit, selectable scheme instead of
a constant.

The matrix pencil D(gamma), which states the eigenproblem as
det D(gamma) = 0 with the unknown substituted into the matrix, is kept
alongside as a transcription cross-check.  In its customary written form
the (2,2) entry carries the opposite sign of gamma*I - M; the ``corrected``
flag flips that entry so the determinant genuinely vanishes on the
spectrum.  Verification suites report the determinant gap between the two
conventions instead of silently picking one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ValidationError
from .flow import FlowProfile
from .geometry import FilamentGeometry


class CoefficientScheme(Enum):
    """Selectable binormal-damping exponent for the evolution matrix.

    The binormal damping term is ``-beta * kappa0**p``:

    - ``KAPPA_LINEAR`` (tag ``eq13_14``): p = 1
    - ``KAPPA_QUADRATIC`` (tag ``eq18``): p = 2
    - ``ZERO_HELICITY_QUARTIC`` (tag ``eq24``): p = 4, and the
      alpha*lambda terms are dropped (a nonzero product is rejected)
    - ``EXACT`` (tag ``exact``): p = 2, the exponent implied by the exact
      frame Laplacian under kappa0 == tau0; identical to KAPPA_QUADRATIC
      for every input
    """

    KAPPA_LINEAR = "eq13_14"
    KAPPA_QUADRATIC = "eq18"
    ZERO_HELICITY_QUARTIC = "eq24"
    EXACT = "exact"

    @property
    def binormal_exponent(self) -> int:
        return _EXPONENTS[self]

    @property
    def requires_zero_helicity(self) -> bool:
        return self is CoefficientScheme.ZERO_HELICITY_QUARTIC


_EXPONENTS = {
    CoefficientScheme.KAPPA_LINEAR: 1,
    CoefficientScheme.KAPPA_QUADRATIC: 2,
    CoefficientScheme.ZERO_HELICITY_QUARTIC: 4,
    CoefficientScheme.EXACT: 2,
}


@dataclass(frozen=True)
class PlasmaParams:
    """Physical inputs of the evolution operator.

    ``alpha`` (mean-field helicity) and ``lambda_exp`` (the exponential
    rate of |B|) are stored separately but only ever consumed through
    their product.
    """

    alpha: float
    beta: float
    lambda_exp: float
    eta: float = 0.0
    flow: FlowProfile = field(default_factory=FlowProfile)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "lambda_exp", "eta"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"plasma parameter {name} must be finite")
        if self.beta < 0.0:
            raise ValidationError("turbulent diffusivity beta must be nonnegative")
        if self.eta < 0.0:
            raise ValidationError("resistivity eta must be nonnegative")

    @property
    def alpha_lambda(self) -> float:
        return self.alpha * self.lambda_exp


@dataclass(frozen=True)
class DynamoMatrix:
    """Evolution matrix for (B_n, B_b): dB/dt = M B."""

    m11: float
    m12: float
    m21: float
    m22: float
    scheme: CoefficientScheme

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21


def build_matrix(
    geom: FilamentGeometry, params: PlasmaParams, scheme: CoefficientScheme
) -> DynamoMatrix:
    """Assemble the evolution matrix under the given coefficient scheme.

        M = [[alpha*lambda - 2*beta*kappa0^2,   kappa0            ],
             [alpha*lambda + kappa0*v_s,        -beta*kappa0**p   ]]

    with p selected by the scheme.  ZERO_HELICITY_QUARTIC rejects a
    nonzero alpha*lambda product, which makes its dropped helicity terms
    vanish identically.
    """
    if scheme.requires_zero_helicity and params.alpha_lambda != 0.0:
        raise ValidationError(
            "scheme eq24 forces alpha*lambda == 0; got "
            f"alpha*lambda={params.alpha_lambda!r}"
        )
    k = geom.kappa0
    al = params.alpha_lambda
    return DynamoMatrix(
        m11=al - 2.0 * params.beta * k * k,
        m12=k,
        m21=al + k * params.flow.v_s,
        m22=-params.beta * k**scheme.binormal_exponent,
        scheme=scheme,
    )


class PencilVariant(Enum):
    """Specializations of the eigenproblem pencil D(gamma)."""

    GENERAL = "general"
    LAMINAR = "laminar"  # beta == 0
    ZERO_HELICITY = "zero_helicity"  # alpha*lambda == 0, quartic damping
    IDEAL_LIMIT = "ideal_limit"  # beta -> 0 limit of ZERO_HELICITY


def pencil_matrix(
    geom: FilamentGeometry,
    params: PlasmaParams,
    variant: PencilVariant,
    gamma: complex,
    *,
    corrected: bool = False,
) -> np.ndarray:
    """Evaluate the 2x2 pencil D(gamma) for the chosen variant.

    By default the (2,2) entry is ``-(gamma + damping)``, the sign
    convention the pencil is customarily written with; ``corrected=True``
    uses ``+(gamma + damping)`` instead, which makes the pencil equal
    gamma*I - M so that det D(gamma) = 0 exactly on the spectrum of M.
    The uncorrected determinant generally does not vanish there; that gap
    is a transcription residual, reported by the verification suites.
    """
    k = geom.kappa0
    al = params.alpha_lambda
    beta = params.beta
    v_s = params.flow.v_s
    g = complex(gamma)
    if variant is PencilVariant.GENERAL:
        a11 = g + 2.0 * beta * k * k - al
        a21 = -(al + k * v_s)
        damping = beta * k * k
    elif variant is PencilVariant.LAMINAR:
        if beta != 0.0:
            raise ValidationError("laminar pencil requires beta == 0")
        a11 = g - al
        a21 = -(al + k * v_s)
        damping = 0.0
    elif variant is PencilVariant.ZERO_HELICITY:
        if al != 0.0:
            raise ValidationError("zero-helicity pencil requires alpha*lambda == 0")
        a11 = g + 2.0 * beta * k * k
        a21 = -k * v_s
        damping = beta * k**4
    elif variant is PencilVariant.IDEAL_LIMIT:
        a11 = g
        a21 = -k * v_s
        damping = 0.0
    else:  # pragma: no cover - exhaustive enum
        raise ValidationError(f"unknown pencil variant {variant!r}")
    a22 = g + damping
    if not corrected:
        a22 = -a22
    return np.array([[a11, -k], [a21, a22]], dtype=complex)


def pencil_determinant(
    geom: FilamentGeometry,
    params: PlasmaParams,
    variant: PencilVariant,
    gamma: complex,
    *,
    corrected: bool = False,
) -> complex:
    """Determinant of the pencil at ``gamma`` (zero iff gamma solves it)."""
    d = pencil_matrix(geom, params, variant, gamma, corrected=corrected)
    return complex(d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0])
