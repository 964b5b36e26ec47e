"""Velocity profile along the filament and the mean-field helicity coefficient."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .geometry import FilamentGeometry


@dataclass(frozen=True)
class FlowProfile:
    """Tangential / normal flow components plus the normal mean square.

    ``v_n_meansq`` is a free ensemble input rather than being derived from
    ``v_n``; the averaging measure behind the mean-field bracket is not
    specified by the model, so it stays a parameter.  A profile supports
    field equipartition (B_n == B_b downstream) only when v_s == -1.
    """

    v_s: float = -1.0
    v_n: float = 0.0
    v_n_meansq: float = 1.0

    def __post_init__(self) -> None:
        for name in ("v_s", "v_n", "v_n_meansq"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"flow component {name} must be finite")
        if self.v_n_meansq < 0.0:
            raise ValidationError("v_n_meansq must be nonnegative")

    @property
    def supports_equipartition(self) -> bool:
        return self.v_s == -1.0


def alpha_helicity(geom: FilamentGeometry | float, flow: FlowProfile) -> float:
    """Mean-field helicity coefficient ``alpha = -kappa0 * <v_n^2>``.

    A raw (possibly signed) curvature is accepted in place of a geometry so
    the negative-curvature reference cases stay expressible; there the
    helicity coefficient turns positive.
    """
    kappa0 = geom.kappa0 if isinstance(geom, FilamentGeometry) else float(geom)
    return -kappa0 * flow.v_n_meansq


def binormal_transfer(B_n: float, flow: FlowProfile) -> float:
    """Binormal amplitude produced from the normal one: ``B_b = -B_n * v_s``.

    With the equipartition flow (v_s == -1) this is the identity map,
    i.e. B_n == B_b.
    """
    return -B_n * flow.v_s
