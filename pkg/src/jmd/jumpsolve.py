"""Jump subproblem: difference operator, v solve, x shrinkage, rho ascent.

All functions accept either a single vector or a ``(C, N)`` stack of channels
(differences run along the last axis).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .mcprox import prox_mc


def forward_diff(v: np.ndarray) -> np.ndarray:
    """``out[j] = v[j+1] - v[j]``."""
    return np.diff(v, axis=-1)


def diff_transpose(y: np.ndarray) -> np.ndarray:
    """Adjoint of :func:`forward_diff`, length ``N`` from ``N - 1``."""
    y = np.asarray(y, dtype=float)
    pad = [(0, 0)] * (y.ndim - 1)
    yp = np.pad(y, pad + [(1, 1)])
    return yp[..., :-1] - yp[..., 1:]


@dataclass(frozen=True)
class DiffOperator:
    """First-difference matrix of shape ``(n - 1, n)``, rows ``[-1, 1]``."""

    n: int

    def apply(self, v):
        return forward_diff(v)

    def apply_transpose(self, y):
        return diff_transpose(y)

    def dense(self) -> np.ndarray:
        D = np.zeros((self.n - 1, self.n))
        idx = np.arange(self.n - 1)
        D[idx, idx] = -1.0
        D[idx, idx + 1] = 1.0
        return D

    def gram_bands(self):
        """Diagonal and off-diagonal of ``D.T @ D`` (stencil 1, 2, ..., 2, 1)."""
        diag = np.full(self.n, 2.0)
        diag[0] = diag[-1] = 1.0
        return diag, -np.ones(self.n - 1)


@dataclass
class JumpState:
    v: np.ndarray
    x: np.ndarray
    rho: np.ndarray

    @classmethod
    def zeros(cls, n: int, n_channels: int | None = None) -> "JumpState":
        lead = () if n_channels is None else (n_channels,)
        return cls(np.zeros(lead + (n,)), np.zeros(lead + (n - 1,)), np.zeros(lead + (n - 1,)))


class VSolver:
    """Factor ``gamma * D.T D + 2 I`` once, then solve for many right-hand sides.

    The matrix is symmetric positive definite for every ``gamma >= 0``, so a
    banded Cholesky factorization costs O(N) and is stable.
    """

    def __init__(self, n: int, gamma: float):
        if gamma < 0:
            raise ValueError("gamma must be nonnegative")
        self.n = n
        self.gamma = float(gamma)
        diag, off = DiffOperator(n).gram_bands()
        ab = np.zeros((2, n))
        ab[1] = 2.0 + gamma * diag
        ab[0, 1:] = gamma * off
        self._chol = cholesky_banded(ab, lower=False)

    def rhs(self, f_minus_modes, lambda_t, x, rho):
        return (
            -diff_transpose(rho)
            + self.gamma * diff_transpose(x)
            + 2.0 * np.asarray(f_minus_modes, dtype=float)
            + lambda_t
        )

    def solve(self, f_minus_modes, lambda_t, x, rho) -> np.ndarray:
        r = self.rhs(f_minus_modes, lambda_t, x, rho)
        if not np.all(np.isfinite(r)):
            raise ValueError("non-finite input to the v update")
        # LAPACK wants the system along axis 0
        return cho_solve_banded((self._chol, False), r.T, check_finite=False).T


def solve_v(f_minus_modes, lambda_t, x, rho, gamma: float) -> np.ndarray:
    """Minimize the augmented Lagrangian over the jump component ``v``.

    Solves ``(gamma D^T D + 2I) v = -D^T rho + gamma D^T x + 2 (f - sum u) + lambda``.

    Parameters
    ----------
    f_minus_modes : ndarray
        Signal minus the current sum of modes, time domain.
    lambda_t : ndarray
        Reconstruction multiplier in the time domain.
    x, rho : ndarray
        Auxiliary difference variable and its multiplier, length ``N - 1``.
    gamma : float
        ADMM penalty.
    """
    f_minus_modes = np.asarray(f_minus_modes, dtype=float)
    return VSolver(f_minus_modes.shape[-1], gamma).solve(f_minus_modes, lambda_t, x, rho)


def update_x(v, rho, gamma: float, mu: float, b: float) -> np.ndarray:
    return prox_mc(forward_diff(v) + rho / gamma, mu, b)


def update_rho(rho, x, v, gamma: float) -> np.ndarray:
    return rho - gamma * (x - forward_diff(v))
