import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jmd.config import (
    DecompConfig,
    InvalidConfig,
    InvalidModeCount,
    InvalidSignal,
    Signal,
    StrongConvexityViolated,
    derive_penalty_params,
    validate_config,
)


def test_signal_promotes_1d_and_labels():
    s = Signal(np.arange(8.0))
    assert s.samples.shape == (1, 8)
    assert s.labels == ("ch1",)
    assert not s.samples.flags.writeable


def test_signal_label_count_mismatch():
    with pytest.raises(InvalidSignal):
        Signal(np.zeros((2, 8)), labels=("a",))


@pytest.mark.parametrize(
    "samples, fs",
    [(np.zeros(3), 1.0), (np.array([0, 1, np.nan, 2.0, 3.0]), 1.0), (np.zeros(8), 0.0)],
)
def test_signal_validate_rejects(samples, fs):
    with pytest.raises(InvalidSignal):
        Signal(samples, sample_rate=fs).validate()


def test_derived_params_example1():
    p = derive_penalty_params(0.03, 0.45, 50.0)
    assert p.b == pytest.approx(2 / 0.45**2)
    assert p.gamma == pytest.approx(50 * p.b * 0.03)
    assert p.mu == pytest.approx(0.03 / p.gamma)
    assert p.breakpoint == pytest.approx(0.45)
    assert p.dead_zone == pytest.approx(0.45 / 50)


@given(
    beta=st.floats(1e-4, 10.0),
    b_bar=st.floats(1e-3, 10.0),
    tau2=st.floats(1.001, 100.0),
)
def test_penalty_invariants(beta, b_bar, tau2):
    p = derive_penalty_params(beta, b_bar, tau2)
    assert p.b * p.mu == pytest.approx(1 / tau2, rel=1e-12)
    assert p.b * p.mu < 1
    assert math.sqrt(2 / p.b) == pytest.approx(b_bar, rel=1e-12)
    assert derive_penalty_params(beta, b_bar, tau2) == p


@pytest.mark.parametrize("tau2", [1.0, 0.5, -3.0])
def test_tau2_must_exceed_one(tau2):
    with pytest.raises(StrongConvexityViolated, match="tau2 must exceed 1"):
        validate_config(DecompConfig(K=2, alpha=100.0, tau2=tau2))


@pytest.mark.parametrize(
    "changes, exc",
    [
        (dict(K=0), InvalidModeCount),
        (dict(K=2.5), InvalidModeCount),
        (dict(K=True), InvalidModeCount),
        (dict(alpha=0.0), InvalidConfig),
        (dict(beta=-1.0), InvalidConfig),
        (dict(b_bar=0.0), InvalidConfig),
        (dict(tau1=1.5), InvalidConfig),
        (dict(eps=0.0), InvalidConfig),
        (dict(max_iter=0), InvalidConfig),
        (dict(omega_init="bogus"), InvalidConfig),
        (dict(stop_rule="bogus"), InvalidConfig),
    ],
)
def test_validate_rejects(changes, exc):
    cfg = DecompConfig(K=2, alpha=100.0).replace(**changes)
    with pytest.raises(exc):
        validate_config(cfg)


def test_validated_config_forwards_fields():
    v = validate_config(DecompConfig(K=3, alpha=5000.0), Signal(np.zeros(16)))
    assert v.K == 3 and v.alpha == 5000.0 and v.tau1 == 0.0
    assert v.penalty.b * v.penalty.mu == pytest.approx(0.1)
    with pytest.raises(AttributeError):
        v.nonexistent


def test_defaults():
    c = DecompConfig(K=1, alpha=1.0)
    assert (c.tau1, c.tau2, c.b_bar, c.eps, c.max_iter) == (0.0, 10.0, 0.3, 1e-7, 500)


def test_validate_is_deterministic():
    cfg = DecompConfig(K=2, alpha=10.0, beta=0.2)
    assert validate_config(cfg) == validate_config(cfg)
