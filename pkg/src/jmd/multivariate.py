"""Multichannel decomposition with center frequencies shared across channels.

Mode ``k`` has one spectrum per channel but a single ``omega_k``, so the modes
stay aligned in frequency. The jump branch runs independently per channel with
global ``gamma``, ``b`` and ``mu``.
"""
from __future__ import annotations

import logging

import numpy as np

from . import spectral
from .config import DecompositionResult, Signal
from .engine import (
    ConfigLike,
    _finish,
    ensure_validated,
    init_omegas,
    relative_change,
    stop_measure,
    update_center_frequency,
    update_lambda,
    update_mode_spectrum,
)
from .jumpsolve import JumpState, VSolver, update_rho, update_x

log = logging.getLogger(__name__)


def update_mode_spectrum_mv(f_hat, other_modes_sum, v_hat, lambda_hat, omega_k, alpha, grid):
    """Channel-wise mode update; all inputs are ``(C, H)`` and share ``omega_k``."""
    return update_mode_spectrum(f_hat, other_modes_sum, v_hat, lambda_hat, omega_k, alpha, grid)


def update_center_frequency_mv(u_hat_k, grid, previous: float = 0.0) -> float:
    """Centroid of the channel-summed power of one mode, ``u_hat_k`` is ``(C, H)``."""
    return update_center_frequency(np.atleast_2d(u_hat_k), grid, previous)


def multichannel_stop_measure(rule: str, u_hat, v, prev):
    """Sum over channels of the per-channel relative change (see
    :func:`jmd.engine.stop_measure`)."""
    states = [stop_measure(rule, u_hat[:, c], v[c], None)[1] for c in range(v.shape[0])]
    if prev is None:
        return None, states
    return float(sum(relative_change(a, b) for a, b in zip(states, prev))), states


def decompose_mv(sig: Signal, cfg: ConfigLike, *, jump: bool = True) -> DecompositionResult:
    """Decompose a ``C``-channel signal into ``K`` aligned modes plus per-channel jumps.

    Convergence is declared when the sum over channels of the per-channel
    relative change (as selected by ``stop_rule``) is below ``eps``. With
    ``C = 1`` this is the same iteration as :func:`jmd.engine.decompose`.
    """
    vcfg = ensure_validated(cfg, sig)
    c, pen = vcfg.config, vcfg.penalty
    F = sig.samples
    C, n = F.shape
    K = c.K
    grid = spectral.frequency_grid(n)
    f_hat = spectral.rfft(F)

    power = (np.abs(f_hat) ** 2).sum(axis=0)
    omegas = init_omegas(c.omega_init, K, power, n, c.seed)
    u_hat = np.zeros((K, C, grid.size), dtype=complex)
    lambda_hat = np.zeros((C, grid.size), dtype=complex)
    state = JumpState.zeros(n, C)
    v_hat = np.zeros((C, grid.size), dtype=complex)
    solver = VSolver(n, pen.gamma) if jump else None

    _, prev = multichannel_stop_measure(c.stop_rule, u_hat, state.v, None)
    trace = []
    converged = False
    it = 0
    while it < c.max_iter:
        it += 1
        total = u_hat.sum(axis=0)
        for k in range(K):
            others = total - u_hat[k]
            u_hat[k] = update_mode_spectrum_mv(
                f_hat, others, v_hat, lambda_hat, omegas[k], c.alpha, grid
            )
            if jump:
                u_hat[k, :, 0] = 0.0
            omegas[k] = update_center_frequency_mv(u_hat[k], grid, omegas[k])
            total = others + u_hat[k]
        u_sum = spectral.irfft(total, n)
        lambda_hat = update_lambda(lambda_hat, f_hat, v_hat, total, c.tau1)
        if jump:
            lam_t = spectral.irfft(lambda_hat, n)
            v = solver.solve(F - u_sum, lam_t, state.x, state.rho)
            x = update_x(v, state.rho, pen.gamma, pen.mu, pen.b)
            state = JumpState(v, x, update_rho(state.rho, x, v, pen.gamma))
            v_hat = spectral.rfft(v)
        change, prev = multichannel_stop_measure(c.stop_rule, u_hat, state.v, prev)
        trace.append(change)
        if change < c.eps:
            converged = True
            break
    log.debug("decompose_mv: C=%d, %d iterations, converged=%s", C, it, converged)
    return _finish(u_hat, omegas, state.v, F, n, it, converged, trace, sig, True)
