import math

import numpy as np
import pytest
from hypothesis import given, settings

from teleportsim import (
    ChannelKind,
    InputQubit,
    NoiseConfig,
    NoiseKind,
    NoiseSpec,
    ProtocolParams,
    avg_fidelity,
    run,
)
from teleportsim.linalg import assert_density_matrix
from teleportsim.states import input_density

from helpers import configs, params, qubits, random_params, random_qubit, rng

QUARTER_PI = math.pi / 4.0


def test_noiseless_maximally_entangled_is_exact():
    gen = rng(21)
    for channel in ChannelKind:
        for _ in range(10):
            q = random_qubit(gen)
            res = run(q, ProtocolParams(QUARTER_PI, QUARTER_PI, channel))
            assert res.avg_fidelity == pytest.approx(1.0, abs=1e-12)
            rho_in = input_density(q)
            for br in res.branches:
                assert br.probability == pytest.approx(0.25, abs=1e-12)
                assert br.fidelity == pytest.approx(1.0, abs=1e-12)
                assert np.max(np.abs(br.bob_state - rho_in)) < 1e-12


def test_unentangled_resource_gives_half_for_equator_input():
    # theta = 0 resource carries no entanglement; prob0 = 1/2 input lands at 1/2
    res = run(InputQubit(0.5), ProtocolParams(0.0, QUARTER_PI))
    assert res.avg_fidelity == pytest.approx(0.5, abs=1e-12)
    for br in res.branches:
        assert br.probability == pytest.approx(0.25, abs=1e-12)


def test_full_bit_flip_on_input_inverts_basis_state():
    config = NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 1.0))
    res = run(InputQubit(1.0), ProtocolParams(QUARTER_PI, QUARTER_PI), config)
    assert res.avg_fidelity == pytest.approx(0.0, abs=1e-12)
    for br in res.branches:
        assert br.fidelity == pytest.approx(0.0, abs=1e-12)


def test_degenerate_branches_report_none():
    # theta = phi = 0 with a basis-state input: only outcome 1 can fire
    res = run(InputQubit(1.0), ProtocolParams(0.0, 0.0))
    probs = [br.probability for br in res.branches]
    assert probs[0] == pytest.approx(1.0, abs=1e-12)
    assert probs[1:] == pytest.approx([0.0, 0.0, 0.0], abs=1e-13)
    assert res.branches[0].fidelity == pytest.approx(1.0, abs=1e-12)
    for br in res.branches[1:]:
        assert br.bob_state is None
        assert br.fidelity is None
    # division-free average is still finite and exact
    assert res.avg_fidelity == pytest.approx(1.0, abs=1e-12)


@settings(deadline=None)
@given(qubits, params, configs)
def test_branch_probabilities_form_a_distribution(q, pp, config):
    res = run(q, pp, config)
    total = 0.0
    for br in res.branches:
        assert -1e-12 <= br.probability <= 1.0 + 1e-12
        total += br.probability
        # renormalizing by a probability near the degeneracy cutoff
        # amplifies rounding noise, so judge states only on solid branches
        if br.fidelity is not None and br.probability > 1e-8:
            assert -1e-10 <= br.fidelity <= 1.0 + 1e-10
            assert_density_matrix(br.bob_state)
    assert total == pytest.approx(1.0, abs=1e-10)
    assert -1e-10 <= res.avg_fidelity <= 1.0 + 1e-10


@settings(deadline=None)
@given(qubits, params, configs)
def test_average_equals_probability_weighted_branches(q, pp, config):
    res = run(q, pp, config)
    acc = sum(br.probability * br.fidelity
              for br in res.branches if br.fidelity is not None)
    assert res.avg_fidelity == pytest.approx(acc, abs=1e-10)


@settings(deadline=None)
@given(qubits, params, configs)
def test_sign_flip_of_both_angles_is_a_symmetry(q, pp, config):
    flipped = ProtocolParams(-pp.theta, -pp.phi, pp.channel)
    assert run(q, pp, config).avg_fidelity == pytest.approx(
        run(q, flipped, config).avg_fidelity, abs=1e-12)


def test_avg_fidelity_wrapper_matches_run():
    gen = rng(22)
    for _ in range(5):
        q = random_qubit(gen)
        pp = random_params(gen)
        assert avg_fidelity(q, pp) == run(q, pp).avg_fidelity
