"""Joint decomposition of a signal into AM-FM modes and a piecewise-constant jump part.

The univariate engine (:func:`decompose`) and its multichannel counterpart
(:func:`decompose_mv`, shared center frequencies) alternate Wiener-style mode
updates in the frequency domain with a jump subproblem regularized by a
minimax-concave penalty on first differences.
"""
from .baselines import decompose_auto, decompose_vmd
from .config import (
    DecompConfig,
    DecompositionResult,
    InvalidConfig,
    InvalidModeCount,
    InvalidSignal,
    JMDError,
    PenaltyParams,
    Signal,
    StrongConvexityViolated,
    ValidatedConfig,
    derive_penalty_params,
    validate_config,
)
from .engine import decompose
from .mcprox import check_strong_convexity, mc_penalty, prox_mc
from .multivariate import decompose_mv

__all__ = [
    "DecompConfig", "DecompositionResult", "InvalidConfig", "InvalidModeCount",
    "InvalidSignal", "JMDError", "PenaltyParams", "Signal", "StrongConvexityViolated",
    "ValidatedConfig", "check_strong_convexity", "decompose", "decompose_auto",
    "decompose_mv", "decompose_vmd", "derive_penalty_params", "mc_penalty",
    "prox_mc", "validate_config",
]
__version__ = "0.1.0"
