"""Minimax-concave penalty and its closed-form proximal map."""
from __future__ import annotations

import math

import numpy as np

from .config import StrongConvexityViolated


def mc_breakpoint(b: float) -> float:
    """Argument at which the penalty saturates at 1."""
    return math.sqrt(2.0 / b)


def mc_penalty(x, b: float):
    """Piecewise-quadratic penalty ``-(b/2) x**2 + sqrt(2b) x``, capped at 1.

    The cap starts at ``sqrt(2/b)``, where the quadratic reaches exactly 1.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("mc_penalty is defined on x >= 0")
    s = mc_breakpoint(b)
    out = np.where(x < s, -0.5 * b * x**2 + math.sqrt(2.0 * b) * x, 1.0)
    return out[()] if out.ndim == 0 else out


def check_strong_convexity(b: float, mu: float) -> bool:
    return b < 1.0 / mu


def prox_mc(h, mu: float, b: float):
    """Minimizer of ``mu * phi(|x|; b) + (x - h)**2 / 2``, elementwise.

    Dead zone ``|h| <= mu*sqrt(2b)`` maps to 0, ``|h| >= sqrt(2/b)`` is left
    untouched, and in between the input is shrunk linearly.

    Raises
    ------
    StrongConvexityViolated
        If ``b * mu >= 1``; the scalar problem then has no unique minimizer.
    """
    if not check_strong_convexity(b, mu):
        raise StrongConvexityViolated(f"prox needs b*mu < 1, got {b * mu}")
    h = np.asarray(h, dtype=float)
    a = np.abs(h)
    scale = 1.0 / (1.0 - mu * b)
    offset = mu * math.sqrt(2.0 * b) * scale
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        factor = np.clip(scale - offset / a, 0.0, 1.0)
    # both thresholds applied explicitly so they hold exactly under rounding
    factor = np.where(a > mu * math.sqrt(2.0 * b), factor, 0.0)
    out = np.where(a >= mc_breakpoint(b), h, factor * h)
    return out[()] if out.ndim == 0 else out
