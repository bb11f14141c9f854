import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teleportsim.linalg import kron
from teleportsim.noise import (
    NO_NOISE,
    NoiseConfig,
    NoiseKind,
    NoiseSpec,
    apply_noise,
    check_trace_preserving,
    kraus_ops,
    lift,
)
from teleportsim.states import SIGMA_X

from helpers import NOISY_KINDS, probs, random_density, rng, specs


def test_noise_spec_validation():
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.BIT_FLIP, 1.0001)
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.BIT_FLIP, -0.1)
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.BIT_FLIP, float("nan"))


def test_none_kind_forces_zero_probability():
    assert NoiseSpec(NoiseKind.NONE, 0.7).p == 0.0
    assert NoiseSpec().kind is NoiseKind.NONE


@given(st.sampled_from(NOISY_KINDS), probs)
def test_kraus_ops_trace_preserving(kind, p):
    assert check_trace_preserving(kraus_ops(NoiseSpec(kind, p)))


def test_check_trace_preserving_detects_leakage():
    assert not check_trace_preserving([0.9 * np.eye(2)])


def _channel_2x2(spec, rho):
    out = np.zeros_like(rho)
    for op in kraus_ops(spec):
        out += op @ rho @ op.conj().T
    return out


def test_amplitude_damping_full_decay_resets_to_ground():
    excited = np.diag([0.0, 1.0]).astype(complex)
    out = _channel_2x2(NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 1.0), excited)
    assert np.max(np.abs(out - np.diag([1.0, 0.0]))) < 1e-15


def test_bit_flip_at_unit_probability_is_x_conjugation():
    gen = rng(3)
    rho = random_density(gen, 2)
    out = _channel_2x2(NoiseSpec(NoiseKind.BIT_FLIP, 1.0), rho)
    assert np.max(np.abs(out - SIGMA_X @ rho @ SIGMA_X)) < 1e-14


def test_depolarizing_at_unit_probability_is_maximally_mixing():
    gen = rng(4)
    rho = random_density(gen, 2)
    out = _channel_2x2(NoiseSpec(NoiseKind.DEPOLARIZING, 1.0), rho)
    assert np.max(np.abs(out - 0.5 * np.eye(2))) < 1e-14


def test_lift_places_operator_on_requested_slot():
    eye = np.eye(2)
    assert np.array_equal(lift(SIGMA_X, 1), kron(SIGMA_X, np.eye(4)))
    assert np.array_equal(lift(SIGMA_X, 2), kron(eye, kron(SIGMA_X, eye)))
    assert np.array_equal(lift(SIGMA_X, 3), kron(np.eye(4), SIGMA_X))
    with pytest.raises(ValueError):
        lift(SIGMA_X, 4)
    with pytest.raises(ValueError):
        lift(np.eye(4), 1)


def test_apply_noise_validates_register_shape():
    with pytest.raises(ValueError):
        apply_noise(np.eye(4) / 4.0, NO_NOISE)
    with pytest.raises(ValueError):
        apply_noise(np.eye(8), NO_NOISE)  # trace 8, not a density matrix


@given(specs, st.sampled_from(["input", "alice", "bob"]))
def test_apply_noise_touches_only_its_slot(spec, slot):
    gen = rng(5)
    parts = [random_density(gen, 2) for _ in range(3)]
    full = kron(kron(parts[0], parts[1]), parts[2])
    config = NoiseConfig(**{slot: spec})
    idx = {"input": 0, "alice": 1, "bob": 2}[slot]
    parts[idx] = _channel_2x2(spec, parts[idx])
    expected = kron(kron(parts[0], parts[1]), parts[2])
    assert np.max(np.abs(apply_noise(full, config) - expected)) < 1e-12


@given(specs, specs, specs)
def test_apply_noise_preserves_trace(s_in, s_a, s_b):
    gen = rng(6)
    rho = random_density(gen, 8)
    out = apply_noise(rho, NoiseConfig(s_in, s_a, s_b))
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
