"""Domain types, parameter validation and derived penalty constants."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

OMEGA_INITS = ("zeros", "uniform", "random", "peaks")
STOP_RULES = ("components", "reconstruction")


class JMDError(ValueError):
    """Base class for invalid inputs to the decomposition."""


class InvalidConfig(JMDError):
    pass


class InvalidModeCount(InvalidConfig):
    pass


class StrongConvexityViolated(InvalidConfig):
    pass


class InvalidSignal(JMDError):
    pass


@dataclass(frozen=True)
class Signal:
    """Real multichannel time series, stored as a ``(C, N)`` array.

    A 1-D array is promoted to a single channel.
    """

    samples: np.ndarray
    sample_rate: float = 1.0
    labels: Optional[tuple] = None

    def __post_init__(self):
        x = np.array(self.samples, dtype=float)
        if x.ndim == 1:
            x = x[None, :]
        if x.ndim != 2:
            raise InvalidSignal(f"samples must be 1-D or 2-D, got shape {x.shape}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        if self.labels is None:
            object.__setattr__(
                self, "labels", tuple(f"ch{c + 1}" for c in range(x.shape[0]))
            )
        else:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != x.shape[0]:
                raise InvalidSignal("one label per channel is required")
            object.__setattr__(self, "labels", labels)

    @property
    def n_channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    def validate(self) -> None:
        if self.n_channels < 1:
            raise InvalidSignal("at least one channel is required")
        if self.n_samples < 4:
            raise InvalidSignal(f"at least 4 samples are required, got {self.n_samples}")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidSignal("samples must be finite")
        if not (self.sample_rate > 0 and math.isfinite(self.sample_rate)):
            raise InvalidSignal("sample_rate must be positive")


@dataclass(frozen=True)
class DecompConfig:
    """User parameters of the jump + AM-FM decomposition.

    Parameters
    ----------
    K : int
        Number of oscillatory modes.
    alpha : float
        Bandwidth weight of the mode prior.
    beta : float
        Weight of the jump prior. Roughly ``1 / (expected number of jumps)``.
    b_bar : float
        Minimal expected jump height. Differences of ``v`` at least this
        large all cost the same.
    tau1 : float
        Dual ascent step of the reconstruction constraint, in ``[0, 1]``.
        ``0`` lets the residual absorb noise.
    tau2 : float
        Convexity margin, must exceed 1. Sets ``gamma = tau2 * b * beta``.
    eps : float
        Tolerance of the stopping test selected by ``stop_rule``.
    max_iter : int
        Iteration cap.
    omega_init : {"peaks", "zeros", "uniform", "random"}
        Center-frequency initialization.
    seed : int, optional
        Seed for ``omega_init="random"``.
    stop_rule : {"components", "reconstruction"}
        What the ``eps`` test measures: the stacked change of every mode and
        the jump, or only the change of their sum ``sum(u_k) + v``.
    """

    K: int
    alpha: float
    beta: float = 0.03
    b_bar: float = 0.3
    tau1: float = 0.0
    tau2: float = 10.0
    eps: float = 1e-7
    max_iter: int = 500
    omega_init: str = "peaks"
    seed: Optional[int] = None
    stop_rule: str = "components"

    def replace(self, **changes) -> "DecompConfig":
        d = asdict(self)
        d.update(changes)
        return DecompConfig(**d)


@dataclass(frozen=True)
class PenaltyParams:
    b: float
    gamma: float
    mu: float

    @property
    def breakpoint(self) -> float:
        return math.sqrt(2.0 / self.b)

    @property
    def dead_zone(self) -> float:
        return self.mu * math.sqrt(2.0 * self.b)


@dataclass(frozen=True)
class ValidatedConfig:
    config: DecompConfig
    penalty: PenaltyParams

    def __getattr__(self, name):
        # forward parameter lookups (cfg.K, cfg.alpha, ...) to the user config
        if name.startswith("__") or name in ("config", "penalty"):
            raise AttributeError(name)
        return getattr(self.config, name)


@dataclass
class DecompositionResult:
    """Output of a decomposition.

    ``modes`` is ``(K, C, N)``, ``jump`` and ``residual`` are ``(C, N)``,
    ``omegas`` are in cycles/sample, sorted ascending with the modes.
    """

    modes: np.ndarray
    jump: np.ndarray
    omegas: np.ndarray
    residual: np.ndarray
    iterations: int
    converged: bool
    convergence_trace: np.ndarray
    sample_rate: float = 1.0
    labels: Sequence[str] = field(default_factory=tuple)

    @property
    def omegas_hz(self) -> np.ndarray:
        return self.omegas * self.sample_rate

    def reconstruction(self) -> np.ndarray:
        return self.modes.sum(axis=0) + self.jump


def derive_penalty_params(beta: float, b_bar: float, tau2: float) -> PenaltyParams:
    """``b = 2 / b_bar**2``, ``gamma = tau2 * b * beta``, ``mu = beta / gamma``."""
    if not beta > 0:
        raise InvalidConfig("beta must be positive")
    if not b_bar > 0:
        raise InvalidConfig("b_bar must be positive")
    if not tau2 > 1:
        raise StrongConvexityViolated(
            f"tau2 must exceed 1 (strong convexity needs gamma > b*beta), got {tau2}"
        )
    b = 2.0 / b_bar**2
    gamma = tau2 * b * beta
    return PenaltyParams(b=b, gamma=gamma, mu=beta / gamma)


def validate_config(cfg: DecompConfig, sig: Optional[Signal] = None) -> ValidatedConfig:
    """Check ``cfg`` (and ``sig`` if given) and attach the derived constants."""
    if isinstance(cfg.K, bool) or int(cfg.K) != cfg.K or cfg.K < 1:
        raise InvalidModeCount(f"K must be a positive integer, got {cfg.K!r}")
    if not cfg.alpha > 0:
        raise InvalidConfig(f"alpha must be positive, got {cfg.alpha}")
    if not 0.0 <= cfg.tau1 <= 1.0:
        raise InvalidConfig(f"tau1 must lie in [0, 1], got {cfg.tau1}")
    if not cfg.eps > 0:
        raise InvalidConfig(f"eps must be positive, got {cfg.eps}")
    if int(cfg.max_iter) != cfg.max_iter or cfg.max_iter < 1:
        raise InvalidConfig(f"max_iter must be a positive integer, got {cfg.max_iter}")
    if cfg.omega_init not in OMEGA_INITS:
        raise InvalidConfig(
            f"omega_init must be one of {', '.join(OMEGA_INITS)}, got {cfg.omega_init!r}"
        )
    if cfg.stop_rule not in STOP_RULES:
        raise InvalidConfig(
            f"stop_rule must be one of {', '.join(STOP_RULES)}, got {cfg.stop_rule!r}"
        )
    penalty = derive_penalty_params(cfg.beta, cfg.b_bar, cfg.tau2)
    if sig is not None:
        sig.validate()
    cfg = cfg.replace(K=int(cfg.K), max_iter=int(cfg.max_iter))
    return ValidatedConfig(cfg, penalty)
