"""Multi-index hypergeometric series and exact verification of their reductions."""

from .families import F3Shape, KdfShape, SdShape, make_f3, make_kdf, make_pfq, make_sd
from .numeric import factorial, format_rational, parse_rational, pochhammer, rat, to_float
from .reductions import (
    IDS,
    REGISTRY,
    ReductionParams,
    build_identity,
    coeff_T1,
    coeff_T2,
    coeff_T3,
    rhs_taylor,
)
from .series import (
    ArgMonomial,
    SeriesSpec,
    WeightedParam,
    eval_float,
    pole_check,
    taylor_coeffs,
    term_coeff,
)
from .verify import VerifyConfig, sample_params, verify_exact, verify_float, verify_sweep

__version__ = "0.1.0"

__all__ = [
    "ArgMonomial", "F3Shape", "IDS", "KdfShape", "REGISTRY", "ReductionParams", "SdShape",
    "SeriesSpec", "VerifyConfig", "WeightedParam", "build_identity", "coeff_T1", "coeff_T2",
    "coeff_T3", "eval_float", "factorial", "format_rational", "make_f3", "make_kdf", "make_pfq",
    "make_sd", "parse_rational", "pochhammer", "pole_check", "rat", "rhs_taylor", "sample_params",
    "taylor_coeffs", "term_coeff", "to_float", "verify_exact", "verify_float", "verify_sweep",
]
