"""Eigenvalue spectra of the evolution matrix and their classification.

Growth rates are the roots of gamma^2 - trace(M) gamma + det(M).  Two
closed-form branches (the laminar golden-ratio pair and the degenerate
double root) are implemented directly under their validity conditions
because they do not coincide with the assembled matrix's spectrum; the gap
between the two routes is surfaced, not resolved.  Reference stretching
constants for uniformly hyperbolic (Anosov) dynamics are provided for
cross-checks.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ValidationError
from .evolution import DynamoMatrix

#: Numerical-zero band separating growth, decay and marginality.
EPS_CLASS = 1e-9

#: Absolute tolerance on closed-form branch validity conditions.
BRANCH_TOL = 1e-12

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


class GrowthTag(Enum):
    FAST = "FAST"
    SLOW = "SLOW"
    MARGINAL = "MARGINAL"
    DECAYING = "DECAYING"


@dataclass(frozen=True)
class ModeClass:
    """Growth tag plus oscillatory / degenerate attachments.

    Combinations occur (a marginal spectrum may be oscillatory, a fast one
    degenerate), so the oscillation and discriminant flags ride along with
    the growth tag instead of competing with it.
    """

    growth: GrowthTag
    oscillatory: bool = False
    degenerate: bool = False

    @property
    def label(self) -> str:
        parts = [self.growth.value]
        if self.oscillatory:
            parts.append("OSCILLATORY")
        if self.degenerate:
            parts.append("DEGENERATE")
        return "+".join(parts)


@dataclass(frozen=True)
class Spectrum:
    """Ordered growth-rate pair with discriminant and classification.

    Ordering convention: Re(gamma_plus) >= Re(gamma_minus), ties broken by
    the imaginary part so the +i member of a conjugate pair is gamma_plus.
    """

    gamma_plus: complex
    gamma_minus: complex
    discriminant: float
    classification: ModeClass


def roots_from_trace_det(trace: float, det: float) -> tuple[complex, complex]:
    """Both roots of gamma^2 - trace*gamma + det, ordered by (Re, Im)."""
    disc = trace * trace - 4.0 * det
    if disc == 0.0:
        r = 0.5 * trace
        return complex(r), complex(r)
    if disc > 0.0:
        root = math.sqrt(disc)
        # cancellation-free: compute the larger-magnitude root first
        r1 = 0.5 * (trace + root) if trace >= 0.0 else 0.5 * (trace - root)
        r2 = det / r1 if r1 != 0.0 else 0.0
        pair = (complex(r1), complex(r2))
    else:
        re = 0.5 * trace
        im = 0.5 * math.sqrt(-disc)
        pair = (complex(re, im), complex(re, -im))
    a, b = pair
    if (a.real, a.imag) >= (b.real, b.imag):
        return a, b
    return b, a


def classify_roots(gamma_plus: complex, gamma_minus: complex, discriminant: float) -> ModeClass:
    """Classification of a single spectrum.

    FAST here records growth at the evaluated parameters; distinguishing
    fast from slow dynamos in the vanishing-diffusivity sense needs the
    family-based :func:`classify`.
    """
    del gamma_minus
    re = gamma_plus.real
    if re > EPS_CLASS:
        growth = GrowthTag.FAST
    elif re < -EPS_CLASS:
        growth = GrowthTag.DECAYING
    else:
        growth = GrowthTag.MARGINAL
    return ModeClass(
        growth=growth,
        oscillatory=abs(gamma_plus.imag) > EPS_CLASS,
        degenerate=abs(discriminant) <= EPS_CLASS,
    )


def spectrum_from_trace_det(trace: float, det: float) -> Spectrum:
    gp, gm = roots_from_trace_det(trace, det)
    disc = trace * trace - 4.0 * det
    return Spectrum(gp, gm, disc, classify_roots(gp, gm, disc))


def spectrum_from_real_roots(gamma_a: float, gamma_b: float) -> Spectrum:
    """Spectrum assembled from a known real root pair."""
    gp, gm = (gamma_a, gamma_b) if gamma_a >= gamma_b else (gamma_b, gamma_a)
    disc = (gp - gm) ** 2
    return Spectrum(complex(gp), complex(gm), disc, classify_roots(complex(gp), complex(gm), disc))


def characteristic_roots(matrix: DynamoMatrix | np.ndarray) -> Spectrum:
    """Spectrum of a 2x2 evolution matrix."""
    if isinstance(matrix, DynamoMatrix):
        trace, det = matrix.trace, matrix.det
    else:
        arr = np.asarray(matrix, dtype=float)
        if arr.shape != (2, 2) or not np.all(np.isfinite(arr)):
            raise ValidationError("matrix must be a finite 2x2 array")
        trace = float(arr[0, 0] + arr[1, 1])
        det = float(arr[0, 0] * arr[1, 1] - arr[0, 1] * arr[1, 0])
    return spectrum_from_trace_det(trace, det)


def laminar_closed_form(alpha_lambda: float, kappa0: float) -> tuple[float, float]:
    """Laminar closed-form pair ``alpha*lambda * (-1 +/- sqrt(5)) / 2``.

    Valid only on the locus kappa0 == -alpha*lambda (the normalization the
    closed form is derived under); off that locus the pair does not solve
    any characteristic polynomial of this model, so the condition is
    enforced rather than assumed.  For alpha*lambda == -1 the pair is the
    golden ratio and its conjugate, (1 +/- sqrt(5)) / 2.
    """
    if abs(kappa0 + alpha_lambda) > BRANCH_TOL:
        raise ValidationError(
            "laminar closed form requires the validity condition "
            f"kappa0 == -alpha*lambda; got kappa0={kappa0!r}, "
            f"alpha*lambda={alpha_lambda!r}"
        )
    root = math.sqrt(5.0)
    pair = (alpha_lambda * (-1.0 + root) / 2.0, alpha_lambda * (-1.0 - root) / 2.0)
    return (max(pair), min(pair))


class DegenerateBranch(NamedTuple):
    alpha_lambda: float
    gamma: float


def degenerate_branch(kappa0: float) -> DegenerateBranch:
    """Helicity product that closes the discriminant, and the double root.

    The laminar discriminant (alpha*lambda)^2 + 4 (alpha*lambda + kappa0)
    kappa0 factors as (alpha*lambda + 2 kappa0)^2, so its unique zero is
    alpha*lambda = -2 kappa0, where the quadratic degenerates to the double
    growth rate gamma = kappa0.  Positive curvature therefore means a
    growing (fast) mode on this branch.
    """
    if not math.isfinite(kappa0):
        raise ValidationError("kappa0 must be finite")
    return DegenerateBranch(alpha_lambda=-2.0 * kappa0, gamma=kappa0)


DEFAULT_BETAS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


def classify(
    spectrum_family: Callable[[float], Spectrum],
    betas: Sequence[float] = DEFAULT_BETAS,
) -> ModeClass:
    """Diffusivity-limit classification of a spectrum family.

    Evaluates the family at beta = 0 and along the descending ``betas``
    sequence.  FAST / DECAYING are decided by the limiting Re gamma_plus;
    when the limit is marginal, any sampled finite diffusivity that still
    grows makes the family SLOW, otherwise it is MARGINAL.  Oscillatory and
    degenerate attachments are read off the limit spectrum.  Raises
    ConvergenceError when the sampled deviations from the limit fail to
    shrink monotonically as beta falls.
    """
    limit = spectrum_family(0.0)
    limit_re = limit.gamma_plus.real
    sampled = [spectrum_family(float(b)) for b in sorted(betas, reverse=True)]
    devs = [abs(s.gamma_plus.real - limit_re) for s in sampled]
    slack = 1e-12 + 1e-9 * max([abs(limit_re)] + devs)
    for prev, nxt in zip(devs, devs[1:]):
        if nxt > prev + slack:
            raise ConvergenceError(
                "Re gamma_plus does not approach its beta->0 value "
                f"monotonically (deviations {devs!r})"
            )
    if limit_re > EPS_CLASS:
        growth = GrowthTag.FAST
    elif limit_re < -EPS_CLASS:
        growth = GrowthTag.DECAYING
    elif any(s.gamma_plus.real > EPS_CLASS for s in sampled):
        growth = GrowthTag.SLOW
    else:
        growth = GrowthTag.MARGINAL
    return ModeClass(
        growth=growth,
        oscillatory=abs(limit.gamma_plus.imag) > EPS_CLASS,
        degenerate=abs(limit.discriminant) <= EPS_CLASS,
    )


@dataclass(frozen=True)
class AnosovReference:
    """Reference stretching constants of uniformly hyperbolic dynamics."""

    cat_map: tuple[float, float]

    @staticmethod
    def curvature_scaled(kappa: float) -> tuple[float, float]:
        """Curvature-scaled stretching pair ``kappa * (-1 +/- sqrt(5)) / 2``.

        At kappa = -1 this returns (1 -/+ sqrt(5)) / 2, the golden pair
        with roles swapped.
        """
        root = math.sqrt(5.0)
        return (kappa * (-1.0 + root) / 2.0, kappa * (-1.0 - root) / 2.0)


def anosov_reference() -> AnosovReference:
    """Cat-map eigenvalue pair ``(3 +/- sqrt(5)) / 2`` plus curvature scaling.

    The stretching member is the square of the golden ratio, which ties the
    laminar closed-form branch to the standard hyperbolic benchmark.
    """
    root = math.sqrt(5.0)
    return AnosovReference(cat_map=((3.0 + root) / 2.0, (3.0 - root) / 2.0))
