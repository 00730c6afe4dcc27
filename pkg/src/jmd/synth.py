"""Synthetic test signals with known components, and evaluation metrics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .config import Signal

Edge = Tuple[int, float]


@dataclass
class GroundTruth:
    """Named ``(C, N)`` components that sum to the generated signal.

    ``tone_freqs`` lists the oscillation frequencies in Hz, in the same order
    as the ``tone_*`` components. ``jump_edges`` holds one edge list per channel.
    """

    components: Dict[str, np.ndarray]
    tone_freqs: np.ndarray
    jump_edges: List[List[Edge]] = field(default_factory=list)

    def tones(self) -> Dict[str, np.ndarray]:
        return {k: v for k, v in self.components.items() if k.startswith("tone_")}

    def total(self) -> np.ndarray:
        out = None
        for comp in self.components.values():
            out = comp.copy() if out is None else out + comp
        return out


def time_axis(n: int) -> np.ndarray:
    """``n`` uniform samples of ``[0, 1)`` (sample rate ``n``)."""
    return np.arange(n) / n


def gen_step_train(n: int, edges: Sequence[Edge]) -> np.ndarray:
    """Piecewise constant sequence starting at 0, stepping by ``height`` at ``index``."""
    out = np.zeros(n)
    last = 0
    for idx, height in edges:
        if int(idx) != idx or not 1 <= idx <= n - 1:
            raise ValueError(f"edge index {idx} outside [1, {n - 1}]")
        if idx <= last:
            raise ValueError("edge indices must be strictly increasing")
        out[int(idx):] += height
        last = idx
    return out


def _tone_name(freq: float) -> str:
    return f"tone_{freq:g}Hz"


def _assemble(components, tone_freqs, edges, n, labels):
    truth = GroundTruth(components, np.asarray(tone_freqs, dtype=float), edges)
    return Signal(truth.total(), sample_rate=float(n), labels=labels), truth


def gen_example1(
    n: int = 1000,
    seed: int = 0,
    sigma: float = 0.1,
    jump_height: float = 1.5,
    jump_at: float = 0.5,
):
    """Three unit cosines at 4, 80 and 200 Hz, one step and white noise."""
    if n < 512:
        raise ValueError("n must be at least 512")
    t = time_axis(n)
    freqs = (4.0, 80.0, 200.0)
    comps = {_tone_name(fr): np.cos(2 * np.pi * fr * t)[None, :] for fr in freqs}
    edges = [(int(round(jump_at * n)), float(jump_height))]
    comps["jump"] = gen_step_train(n, edges)[None, :]
    rng = np.random.default_rng(seed)
    comps["noise"] = sigma * rng.standard_normal((1, n))
    return _assemble(comps, freqs, [edges], n, ("f1",))


# amplitudes per channel (C1, C2, C3); zero means the tone is absent
EXAMPLE2_TONES = {
    1.0: (10.0, 4.0, 10.0),
    24.0: (2.0, 2.0, 0.0),
    48.0: (0.0, 2.0, 2.0),
    128.0: (0.0, 2.0, 2.0),
}
EXAMPLE2_JUMP_CHANNELS = (0, 2)


def gen_example2(
    n: int = 1000,
    seed: int = 0,
    sigma: float = 0.1,
    jump_height: float = 1.5,
    jump_at: float = 0.5,
):
    """Three channels sharing tones at 1, 24, 48 and 128 Hz; a step in C1 and C3 only."""
    if n < 512:
        raise ValueError("n must be at least 512")
    t = time_axis(n)
    comps = {}
    for fr, amps in EXAMPLE2_TONES.items():
        comps[_tone_name(fr)] = np.array(amps)[:, None] * np.cos(2 * np.pi * fr * t)
    step_edges = [(int(round(jump_at * n)), float(jump_height))]
    step = gen_step_train(n, step_edges)
    jump = np.zeros((3, n))
    edges: List[List[Edge]] = [[], [], []]
    for c in EXAMPLE2_JUMP_CHANNELS:
        jump[c] = step
        edges[c] = list(step_edges)
    comps["jump"] = jump
    rng = np.random.default_rng(seed)
    comps["noise"] = sigma * rng.standard_normal((3, n))
    return _assemble(comps, list(EXAMPLE2_TONES), edges, n, ("C1", "C2", "C3"))


def gen_tones(
    n: int = 1000,
    seed: int = 0,
    sigma: float = 0.1,
    freqs: Sequence[float] = (10.0, 60.0),
    amps: Sequence[float] = (1.0, 1.0),
):
    """Jump-free sum of cosines plus white noise."""
    t = time_axis(n)
    comps = {
        _tone_name(fr): a * np.cos(2 * np.pi * fr * t)[None, :] for fr, a in zip(freqs, amps)
    }
    rng = np.random.default_rng(seed)
    comps["noise"] = sigma * rng.standard_normal((1, n))
    return _assemble(comps, freqs, [[]], n, ("f",))


def gen_step(
    n: int = 1000,
    seed: int = 0,
    sigma: float = 0.1,
    edges: Sequence[Edge] = ((250, 1.0), (600, -1.5), (800, 0.75)),
):
    """Step train plus white noise."""
    edges = [(int(i), float(h)) for i, h in edges]
    comps = {"jump": gen_step_train(n, edges)[None, :]}
    rng = np.random.default_rng(seed)
    comps["noise"] = sigma * rng.standard_normal((1, n))
    return _assemble(comps, [], [edges], n, ("f",))


GENERATORS = {
    "example1": gen_example1,
    "example2": gen_example2,
    "tones": gen_tones,
    "step": gen_step,
}


# ---------------------------------------------------------------- metrics


def component_correlation(est, truth) -> float:
    """Pearson correlation; raises on a constant ``truth``."""
    est = np.asarray(est, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if est.shape != truth.shape:
        raise ValueError(f"shape mismatch {est.shape} vs {truth.shape}")
    t = truth - truth.mean()
    e = est - est.mean()
    tn = np.sqrt(np.dot(t, t))
    if tn == 0:
        raise ValueError("correlation undefined for a constant reference")
    en = np.sqrt(np.dot(e, e))
    if en == 0:
        return 0.0
    return float(np.clip(np.dot(e, t) / (en * tn), -1.0, 1.0))


def jump_edges(v, min_height: float) -> List[Edge]:
    """Locations and signed heights of steps in ``v`` at least ``min_height`` tall.

    An edge at index ``i`` means the new level starts at sample ``i``.
    Super-threshold differences closer than 3 samples are merged into the
    largest one.
    """
    if not min_height > 0:
        raise ValueError("min_height must be positive")
    d = np.diff(np.asarray(v, dtype=float))
    cand = np.flatnonzero(np.abs(d) >= min_height)
    edges: List[Edge] = []
    group: List[int] = []
    for j in cand:
        if group and j - group[-1] > 2:
            best = max(group, key=lambda i: abs(d[i]))
            edges.append((int(best) + 1, float(d[best])))
            group = []
        group.append(int(j))
    if group:
        best = max(group, key=lambda i: abs(d[i]))
        edges.append((int(best) + 1, float(d[best])))
    return edges


def strongest_edge(v) -> int:
    """Index of the largest absolute step in ``v``."""
    return int(np.argmax(np.abs(np.diff(np.asarray(v, dtype=float))))) + 1


def snr_db(signal, noise) -> float:
    signal = np.asarray(signal, dtype=float)
    noise = np.asarray(noise, dtype=float)
    en = float(np.sum(noise**2))
    if en == 0:
        raise ValueError("noise is identically zero")
    return float(10.0 * np.log10(np.sum(signal**2) / en))


def greedy_match(corr: np.ndarray) -> List[Tuple[int, int]]:
    """Pair rows and columns of a score matrix, highest score first."""
    corr = np.array(corr, dtype=float)
    pairs = []
    score = np.where(np.isfinite(corr), corr, -np.inf)
    for _ in range(min(score.shape)):
        i, j = np.unravel_index(np.argmax(score), score.shape)
        if not np.isfinite(score[i, j]):
            break
        pairs.append((int(i), int(j)))
        score[i, :] = -np.inf
        score[:, j] = -np.inf
    return sorted(pairs, key=lambda p: p[1])
