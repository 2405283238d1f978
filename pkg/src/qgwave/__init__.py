"""Traveling-wave admissibility toolkit for shear flows in a zonal channel.

Computes principal eigenvalues of the (singular) Rayleigh-Kuo boundary-value
problem, the transitional beta value and critical wavelengths that separate
rigidity from existence of nearby genuine traveling waves, and classifies
the wave speed of gridded traveling-wave fields.
"""

__version__ = "0.1.0"

from .channel import (
    ChannelGeometry,
    FieldDiagnostics,
    Grid2D,
    WaveField,
    diagnostics,
    field_from_dict,
    field_to_dict,
    gradient,
    laplacian,
    read_field,
    write_field,
)
from .classify import (
    ClassificationReport,
    RigidityVerdict,
    c_beta_plus,
    classify,
    profile_rigidity_bound,
    rigidity_predicates,
)
from .eigen import (
    CurvePoint,
    EigenProblem,
    EigenResult,
    boundary_curve,
    critical_beta,
    lambda_inf_over_c,
    principal_eigenvalue,
    scaling_check,
    wave_speed_root,
)
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    FieldFormatError,
    NoRootError,
    ProfileSpecError,
    QgwaveError,
    ShapeError,
    UnsupportedSingularityError,
)
from .flows import (
    KOLMOGOROV_PERIOD,
    MIN_CRITICAL_BETA0,
    Example31Params,
    GrsParams,
    make_grs_vortex,
    make_inflection_wave,
    make_kolmogorov_perturbed,
    make_min_critical_wave,
)
from .planets import (
    JUPITER,
    PLANETS,
    SATURN,
    BandSpec,
    PlanetData,
    band_halfwidth,
    beta_plane_params,
    jupiter_band_case,
    saturn_polar_case,
)
from .profiles import (
    Bickley,
    ConcaveParabola,
    CouettePoiseuille,
    Kolmogorov,
    LinearProfile,
    Polynomial,
    ProfileOnBand,
    ShearProfile,
    band_extrema,
    couette,
    parse_profile,
)

__all__ = [
    "__version__",
    "ChannelGeometry",
    "Grid2D",
    "WaveField",
    "FieldDiagnostics",
    "gradient",
    "laplacian",
    "diagnostics",
    "field_to_dict",
    "field_from_dict",
    "read_field",
    "write_field",
    "ShearProfile",
    "LinearProfile",
    "ConcaveParabola",
    "CouettePoiseuille",
    "Bickley",
    "Kolmogorov",
    "Polynomial",
    "ProfileOnBand",
    "couette",
    "band_extrema",
    "parse_profile",
    "EigenProblem",
    "EigenResult",
    "CurvePoint",
    "principal_eigenvalue",
    "critical_beta",
    "lambda_inf_over_c",
    "wave_speed_root",
    "boundary_curve",
    "scaling_check",
    "ClassificationReport",
    "RigidityVerdict",
    "c_beta_plus",
    "classify",
    "rigidity_predicates",
    "profile_rigidity_bound",
    "Example31Params",
    "GrsParams",
    "MIN_CRITICAL_BETA0",
    "KOLMOGOROV_PERIOD",
    "make_inflection_wave",
    "make_min_critical_wave",
    "make_kolmogorov_perturbed",
    "make_grs_vortex",
    "PlanetData",
    "BandSpec",
    "JUPITER",
    "SATURN",
    "PLANETS",
    "beta_plane_params",
    "band_halfwidth",
    "jupiter_band_case",
    "saturn_polar_case",
    "QgwaveError",
    "ShapeError",
    "DomainError",
    "ProfileSpecError",
    "FieldFormatError",
    "UnsupportedSingularityError",
    "ConvergenceError",
    "DivergenceError",
    "NoRootError",
]
