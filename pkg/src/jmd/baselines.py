"""Jump-free reference decompositions (plain VMD / MVMD) on the same engines."""
from __future__ import annotations

from .config import DecompositionResult, Signal
from .engine import ConfigLike, decompose
from .multivariate import decompose_mv


def decompose_vmd(sig: Signal, cfg: ConfigLike) -> DecompositionResult:
    """Run the ADMM loop with the jump branch disabled; ``beta`` is ignored.

    The univariate engine is used for one channel, the shared-frequency
    multivariate engine otherwise.
    """
    if sig.n_channels == 1:
        return decompose(sig, cfg, jump=False)
    return decompose_mv(sig, cfg, jump=False)


def decompose_auto(sig: Signal, cfg: ConfigLike, *, jump: bool = True) -> DecompositionResult:
    """Dispatch on channel count."""
    if sig.n_channels == 1:
        return decompose(sig, cfg, jump=jump)
    return decompose_mv(sig, cfg, jump=jump)
