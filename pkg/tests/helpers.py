"""Shared generators and hypothesis strategies for the test suite."""

import math

import numpy as np
from hypothesis import strategies as st

from teleportsim import (
    ChannelKind,
    InputQubit,
    NoiseConfig,
    NoiseKind,
    NoiseSpec,
    ProtocolParams,
)

NOISY_KINDS = (
    NoiseKind.BIT_FLIP,
    NoiseKind.PHASE_FLIP,
    NoiseKind.DEPOLARIZING,
    NoiseKind.AMPLITUDE_DAMPING,
)

HALF_PI = math.pi / 2.0


def rng(seed=20240817):
    return np.random.default_rng(seed)


def random_qubit(gen):
    return InputQubit(prob0=float(gen.uniform(0.0, 1.0)),
                      phase=float(gen.uniform(0.0, 2.0 * math.pi)))


def random_params(gen, channel=None):
    if channel is None:
        channel = ChannelKind.PHI if gen.uniform() < 0.5 else ChannelKind.PSI
    return ProtocolParams(theta=float(gen.uniform(-HALF_PI, HALF_PI)),
                          phi=float(gen.uniform(-HALF_PI, HALF_PI)),
                          channel=channel)


def random_spec(gen, allow_none=True):
    kinds = NOISY_KINDS + ((NoiseKind.NONE,) if allow_none else ())
    kind = kinds[int(gen.integers(len(kinds)))]
    if kind is NoiseKind.NONE:
        return NoiseSpec()
    return NoiseSpec(kind=kind, p=float(gen.uniform(0.0, 1.0)))


def random_config(gen, allow_none=True):
    return NoiseConfig(input=random_spec(gen, allow_none),
                       alice=random_spec(gen, allow_none),
                       bob=random_spec(gen, allow_none))


def random_density(gen, dim):
    # Ginibre construction: A A^dag / tr is a valid density matrix
    a = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


# hypothesis strategies

probs = st.floats(0.0, 1.0, allow_nan=False)
phases = st.floats(0.0, 2.0 * math.pi, allow_nan=False)
angles = st.floats(-HALF_PI, HALF_PI, allow_nan=False)

qubits = st.builds(InputQubit, probs, phases)
noisy_specs = st.builds(NoiseSpec, st.sampled_from(NOISY_KINDS), probs)
specs = st.one_of(st.just(NoiseSpec()), noisy_specs)
configs = st.builds(NoiseConfig, specs, specs, specs)
channels = st.sampled_from(ChannelKind)
params = st.builds(ProtocolParams, angles, angles, channels)
