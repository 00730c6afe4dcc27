"""Univariate jump + AM-FM mode decomposition (ADMM).

Each sweep updates the mode spectra and their center frequencies, then the
reconstruction multiplier, then the jump subproblem (v, x, rho). It stops
when the relative change of the iterate drops below ``eps``: by default of
all components stacked, optionally only of ``sum(u_k) + v``.
"""
from __future__ import annotations

import logging
from typing import Union

import numpy as np
from scipy.signal import find_peaks

from . import spectral
from .config import (
    DecompConfig,
    DecompositionResult,
    InvalidSignal,
    Signal,
    ValidatedConfig,
    validate_config,
)
from .jumpsolve import JumpState, VSolver, update_rho, update_x

log = logging.getLogger(__name__)

OMEGA_MAX = float(np.nextafter(0.5, 0.0))
ZERO_POWER = 1e-30

ConfigLike = Union[DecompConfig, ValidatedConfig]


def ensure_validated(cfg: ConfigLike, sig: Signal) -> ValidatedConfig:
    if isinstance(cfg, ValidatedConfig):
        sig.validate()
        return cfg
    return validate_config(cfg, sig)


def init_omegas(policy: str, K: int, power: np.ndarray, n: int, seed=None) -> np.ndarray:
    """Starting center frequencies in cycles/sample.

    ``power`` is the one-sided power spectrum of the input (summed over
    channels), only used by the ``"peaks"`` policy, which starts the modes at
    the ``K`` strongest local maxima above DC. Missing peaks are filled from
    the uniform layout.
    """
    uniform = 0.5 * (np.arange(K) + 0.5) / K
    if policy == "zeros":
        return np.zeros(K)
    if policy == "uniform":
        return uniform
    if policy == "random":
        rng = np.random.default_rng(seed)
        lo = np.log(1.0 / n)
        return np.sort(np.exp(lo + (np.log(0.5) - lo) * rng.random(K)))
    if policy == "peaks":
        p = np.array(power, dtype=float)
        p[0] = 0.0
        idx, _ = find_peaks(np.concatenate([[0.0], p, [0.0]]))
        idx = idx - 1
        idx = idx[p[idx] > 0]
        # stable sort keeps the lower frequency on ties
        idx = idx[np.argsort(-p[idx], kind="stable")][:K]
        om = list(idx / n)
        for w in uniform:
            if len(om) == K:
                break
            if not np.any(np.isclose(om, w)):
                om.append(w)
        return np.minimum(np.sort(np.array(om, dtype=float)), OMEGA_MAX)
    raise ValueError(f"unknown omega_init {policy!r}")


def update_mode_spectrum(f_hat, other_modes_sum, v_hat, lambda_hat, omega_k, alpha, grid):
    """Wiener-style filter of the residual around ``omega_k``."""
    return (f_hat - other_modes_sum - v_hat + 0.5 * lambda_hat) / (
        1.0 + 2.0 * alpha * (grid - omega_k) ** 2
    )


def update_center_frequency(u_hat, grid, previous: float = 0.0) -> float:
    """Power-weighted centroid of ``|u_hat|**2``; holds ``previous`` on zero power."""
    p = np.abs(u_hat) ** 2
    total = p.sum()
    if total < ZERO_POWER:
        return previous
    return min(float(np.dot(grid, p.T).sum() / total), OMEGA_MAX)


def update_lambda(lambda_hat, f_hat, v_hat, modes_sum_hat, tau1):
    return lambda_hat + tau1 * (f_hat - (v_hat + modes_sum_hat))


def relative_change(new: np.ndarray, old: np.ndarray) -> float:
    """``||new - old||^2 / ||old||^2``; 0 or 1 when ``old`` is zero."""
    den = float(np.dot(old, old))
    num = float(np.dot(new - old, new - old))
    if den == 0.0:
        return 0.0 if num == 0.0 else 1.0
    return num / den


def stop_measure(rule: str, u_hat, v, prev):
    """Relative change for the ``eps`` test.

    ``prev`` is the state returned by the previous call (``None`` on the first
    call, which yields ``change=None``). Returns ``(change, state)``.
    """
    if rule == "reconstruction":
        r = spectral.irfft(u_hat.sum(axis=0), v.shape[-1]) + v
        return (None if prev is None else relative_change(r, prev)), r
    s = np.concatenate([spectral.irfft(u_hat, v.shape[-1]).ravel(), v])
    return (None if prev is None else relative_change(s, prev)), s


def _finish(uh, omegas, v, f, n, it, converged, trace, sig, multichannel):
    modes = spectral.irfft(uh, n)
    if not multichannel:
        modes = modes[:, None, :]
        v = v[None, :]
        f = f[None, :]
    order = np.argsort(omegas, kind="stable")
    modes = modes[order]
    residual = f - modes.sum(axis=0) - v
    return DecompositionResult(
        modes=modes,
        jump=v,
        omegas=omegas[order],
        residual=residual,
        iterations=it,
        converged=converged,
        convergence_trace=np.asarray(trace, dtype=float),
        sample_rate=sig.sample_rate,
        labels=sig.labels,
    )


def decompose(sig: Signal, cfg: ConfigLike, *, jump: bool = True) -> DecompositionResult:
    """Decompose a single-channel signal into ``K`` modes plus a jump component.

    With ``jump=False`` the jump branch is frozen at zero and the loop is a
    plain variational mode decomposition.
    """
    if sig.n_channels != 1:
        raise InvalidSignal(f"decompose expects one channel, got {sig.n_channels}")
    vcfg = ensure_validated(cfg, sig)
    c, pen = vcfg.config, vcfg.penalty
    f = sig.samples[0]
    n = f.size
    K = c.K
    grid = spectral.frequency_grid(n)
    f_hat = spectral.rfft(f)

    omegas = init_omegas(c.omega_init, K, np.abs(f_hat) ** 2, n, c.seed)
    u_hat = np.zeros((K, grid.size), dtype=complex)
    lambda_hat = np.zeros(grid.size, dtype=complex)
    state = JumpState.zeros(n)
    v_hat = np.zeros(grid.size, dtype=complex)
    solver = VSolver(n, pen.gamma) if jump else None

    _, prev = stop_measure(c.stop_rule, u_hat, state.v, None)
    trace = []
    converged = False
    it = 0
    while it < c.max_iter:
        it += 1
        total = u_hat.sum(axis=0)
        for k in range(K):
            others = total - u_hat[k]
            u_hat[k] = update_mode_spectrum(
                f_hat, others, v_hat, lambda_hat, omegas[k], c.alpha, grid
            )
            if jump:
                # constants lie in the kernel of D: the offset belongs to v
                u_hat[k, 0] = 0.0
            omegas[k] = update_center_frequency(u_hat[k], grid, omegas[k])
            total = others + u_hat[k]
        u_sum = spectral.irfft(total, n)
        lambda_hat = update_lambda(lambda_hat, f_hat, v_hat, total, c.tau1)
        if jump:
            lam_t = spectral.irfft(lambda_hat, n)
            v = solver.solve(f - u_sum, lam_t, state.x, state.rho)
            x = update_x(v, state.rho, pen.gamma, pen.mu, pen.b)
            state = JumpState(v, x, update_rho(state.rho, x, v, pen.gamma))
            v_hat = spectral.rfft(v)
        change, prev = stop_measure(c.stop_rule, u_hat, state.v, prev)
        trace.append(change)
        if change < c.eps:
            converged = True
            break
    log.debug("decompose: %d iterations, converged=%s", it, converged)
    return _finish(u_hat, omegas, state.v, f, n, it, converged, trace, sig, False)
