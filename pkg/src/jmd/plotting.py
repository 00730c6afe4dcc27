"""Static SVG panels of a decomposition (one file per component)."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def minmax_scale(x: np.ndarray) -> np.ndarray:
    """Affine map of each channel (row) onto ``[0, 1]``; constant rows map to 0."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    lo = x.min(axis=1, keepdims=True)
    span = x.max(axis=1, keepdims=True) - lo
    span[span == 0] = 1.0
    return (x - lo) / span


def plot_panel(path, x, labels: Sequence[str], title: str, sample_rate: float = 1.0,
               normalize: bool = False) -> Path:
    """Plot a ``(C, N)`` component with one stacked axis per channel."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if normalize:
        x = minmax_scale(x)
    t = np.arange(x.shape[1]) / sample_rate
    C = x.shape[0]
    fig, axes = plt.subplots(C, 1, sharex=True, squeeze=False, figsize=(7, 1.6 * C + 0.6))
    for c in range(C):
        ax = axes[c, 0]
        ax.plot(t, x[c], lw=0.8)
        ax.set_ylabel(labels[c] if c < len(labels) else f"ch{c + 1}")
    axes[0, 0].set_title(title)
    axes[-1, 0].set_xlabel("time")
    fig.tight_layout()
    path = Path(path)
    # fixed metadata keeps the SVG reproducible
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
