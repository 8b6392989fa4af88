"""Rational matrix functions (co)isometric on the unit circle.

Three interchangeable certificates of circle (co)isometry (realization
matrix, block-Hankel coefficient tests, direct circle sampling), the
Blaschke-Potapov product representation with its real-angle parametrization,
conversions between the representations, and a lossless-approximation
fitting harness.
"""

from .analysis import (
    Certificate,
    block_hankel,
    circle_residual,
    gramian_certificate,
    laurent_check,
    mcmillan_degree,
    mfd_check,
    realization_check,
)
from .errors import (
    AngleCountMismatch,
    ConvergenceFailure,
    DimensionMismatch,
    DocumentError,
    EvalAtPole,
    ImproperFunction,
    InconsistentPair,
    NotCoIsometricRealization,
    NotFIR,
    NotHermitian,
    NotIsometric,
    NotIsometricConstant,
    NotSchurStable,
    ParaunitError,
    PoleNotInDisk,
    SideMismatch,
    SingularDenominator,
    SizeLimitExceeded,
)
from .fit import FitResult, SampleSet, fit_lossless, objective
from .forms import (
    COISO,
    ISO,
    LEFT,
    RIGHT,
    BlaschkePotapovForm,
    LaurentPolyForm,
    MFDForm,
    Pole,
    StateSpaceRealization,
    blaschke_scalar,
    conjugate,
    evaluate,
)
from .linalg import (
    hermitian_eig,
    solve_stein,
    spectral_radius,
    unitary_completion,
)
from .params import (
    ParaunitaryParam,
    PoleParam,
    build_paraunitary,
    isometry_from_angles,
    param_count,
    random_params,
    unit_vector_from_angles,
)
from .transforms import (
    allpass_embed,
    bp_to_laurent,
    bp_to_realization,
    embed_to_square,
    extract_constant,
    factor_realization,
    flip_poles,
    flip_scalar,
    series_cascade,
    ss_to_mfd,
    truncate_to_rect,
)

__version__ = "0.1.0"

__all__ = [
    "AngleCountMismatch",
    "BlaschkePotapovForm",
    "COISO",
    "Certificate",
    "ConvergenceFailure",
    "DimensionMismatch",
    "DocumentError",
    "EvalAtPole",
    "FitResult",
    "ISO",
    "ImproperFunction",
    "InconsistentPair",
    "LEFT",
    "LaurentPolyForm",
    "MFDForm",
    "NotCoIsometricRealization",
    "NotFIR",
    "NotHermitian",
    "NotIsometric",
    "NotIsometricConstant",
    "NotSchurStable",
    "ParaunitError",
    "ParaunitaryParam",
    "Pole",
    "PoleNotInDisk",
    "PoleParam",
    "RIGHT",
    "SampleSet",
    "SideMismatch",
    "SingularDenominator",
    "SizeLimitExceeded",
    "StateSpaceRealization",
    "allpass_embed",
    "blaschke_scalar",
    "block_hankel",
    "bp_to_laurent",
    "bp_to_realization",
    "build_paraunitary",
    "circle_residual",
    "conjugate",
    "embed_to_square",
    "evaluate",
    "extract_constant",
    "factor_realization",
    "fit_lossless",
    "flip_poles",
    "flip_scalar",
    "gramian_certificate",
    "hermitian_eig",
    "isometry_from_angles",
    "laurent_check",
    "mcmillan_degree",
    "mfd_check",
    "objective",
    "param_count",
    "random_params",
    "realization_check",
    "series_cascade",
    "solve_stein",
    "spectral_radius",
    "ss_to_mfd",
    "truncate_to_rect",
    "unit_vector_from_angles",
    "unitary_completion",
]
