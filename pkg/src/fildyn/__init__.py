"""Growth-rate spectra of filamentary kinematic dynamos.

The field of a thin helical filament reduces to a two-component system in
the Frenet frame; its 2x2 evolution operator, the spectra and closed-form
branches, the ABC flow in twisted flux-tube coordinates, and a time-domain
RK4 oracle that independently verifies the spectra all live here.  The
``fildyn`` CLI exposes single-point queries, parameter sweeps, ABC
evaluations and the verification suites.
"""

__version__ = "0.1.0"

from .abc_flow import (
    ABCParams,
    StagnationClass,
    TubeField,
    TubeGrowthResult,
    TubePoint,
    TubeRegime,
    TubeVelocity,
    abc_velocity_complex,
    abc_velocity_standard,
    radial_flow_gradient,
    radial_flow_near_axis,
    stagnation_classify,
    toroidal_constraint,
    tube_growth_rate,
    tube_to_cartesian,
    tube_velocity,
)
from .errors import (
    ComplexResidualError,
    ConfigError,
    ConvergenceError,
    DegenerateFitError,
    DomainError,
    FildynError,
    ValidationError,
)
from .evolution import (
    CoefficientScheme,
    DynamoMatrix,
    PencilVariant,
    PlasmaParams,
    build_matrix,
    pencil_determinant,
    pencil_matrix,
)
from .flow import FlowProfile, alpha_helicity, binormal_transfer
from .geometry import (
    FilamentGeometry,
    FrameLaplacian,
    FrenetFrame,
    HelixSample,
    HelixSpec,
    frame_laplacian_exact,
    frenet_derivative,
    helix_frame,
    solenoidal_residual,
)
from .sim import (
    CrossCheckResult,
    GrowthRateFit,
    Trajectory,
    cross_check,
    fit_growth_rate,
    integrate,
)
from .spectrum import (
    AnosovReference,
    DegenerateBranch,
    GrowthTag,
    ModeClass,
    Spectrum,
    anosov_reference,
    characteristic_roots,
    classify,
    classify_roots,
    degenerate_branch,
    laminar_closed_form,
    roots_from_trace_det,
    spectrum_from_trace_det,
)

__all__ = [
    "__version__",
    # geometry
    "FilamentGeometry", "FrenetFrame", "HelixSpec", "HelixSample", "FrameLaplacian",
    "frenet_derivative", "helix_frame", "frame_laplacian_exact", "solenoidal_residual",
    # flow
    "FlowProfile", "alpha_helicity", "binormal_transfer",
    # evolution operator
    "CoefficientScheme", "PlasmaParams", "DynamoMatrix", "PencilVariant",
    "build_matrix", "pencil_matrix", "pencil_determinant",
    # spectra
    "Spectrum", "ModeClass", "GrowthTag", "AnosovReference", "DegenerateBranch",
    "characteristic_roots", "classify", "classify_roots", "laminar_closed_form",
    "degenerate_branch", "anosov_reference", "roots_from_trace_det",
    "spectrum_from_trace_det",
    # ABC flows
    "ABCParams", "TubePoint", "TubeField", "TubeVelocity", "TubeGrowthResult",
    "TubeRegime", "StagnationClass",
    "abc_velocity_complex", "abc_velocity_standard", "tube_to_cartesian",
    "tube_velocity", "stagnation_classify", "tube_growth_rate",
    "toroidal_constraint", "radial_flow_gradient", "radial_flow_near_axis",
    # time-domain oracle
    "Trajectory", "GrowthRateFit", "CrossCheckResult",
    "integrate", "fit_growth_rate", "cross_check",
    # errors
    "FildynError", "ValidationError", "DomainError", "ConfigError",
    "ComplexResidualError", "DegenerateFitError", "ConvergenceError",
]
