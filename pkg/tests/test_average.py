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
    QuadratureSpec,
    gauss_legendre_nodes,
    haar_average,
    haar_average_grid,
    run,
    trig_coefficients,
)

from helpers import configs, params, random_config, random_params, rng

QUARTER_PI = math.pi / 4.0


def test_gauss_legendre_low_orders():
    assert gauss_legendre_nodes(1) == [(0.5, 1.0)]
    nodes = gauss_legendre_nodes(2)
    half = 0.5 / math.sqrt(3.0)
    assert nodes[0][0] == pytest.approx(0.5 - half)
    assert nodes[1][0] == pytest.approx(0.5 + half)
    assert [w for _, w in nodes] == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_gauss_legendre_integrates_polynomials_exactly(n):
    nodes = gauss_legendre_nodes(n)
    assert sum(w for _, w in nodes) == pytest.approx(1.0)
    for k in range(2 * n):  # exact through degree 2n-1
        quad = sum(w * x**k for x, w in nodes)
        assert quad == pytest.approx(1.0 / (k + 1), abs=1e-14)


def test_quadrature_spec_enforces_minima():
    with pytest.raises(ValueError):
        QuadratureSpec(nodes_prob0=3)
    with pytest.raises(ValueError):
        QuadratureSpec(nodes_phase=7)
    QuadratureSpec(4, 8)  # the minima themselves are fine


def _brute_average(pp, config, quad):
    total = 0.0
    phase_step = 2.0 * math.pi / quad.nodes_phase
    for prob0, w in gauss_legendre_nodes(quad.nodes_prob0):
        for k in range(quad.nodes_phase):
            q = InputQubit(prob0, k * phase_step)
            total += (w / quad.nodes_phase) * run(q, pp, config).avg_fidelity
    return total


def test_haar_average_matches_per_input_brute_force():
    gen = rng(31)
    quad = QuadratureSpec(4, 8)
    for _ in range(6):
        pp = random_params(gen)
        config = random_config(gen)
        assert haar_average(pp, config, quad) == pytest.approx(
            _brute_average(pp, config, quad), abs=5e-13)


def test_known_averages():
    assert haar_average(ProtocolParams(QUARTER_PI, QUARTER_PI)) == pytest.approx(1.0, abs=1e-12)
    assert haar_average(ProtocolParams(0.0, QUARTER_PI)) == pytest.approx(2.0 / 3.0, abs=1e-12)
    bf = NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 0.3))
    assert haar_average(ProtocolParams(QUARTER_PI, QUARTER_PI), bf) == pytest.approx(0.8, abs=1e-12)


@settings(deadline=None, max_examples=40)
@given(params, configs)
def test_doubling_nodes_does_not_move_the_average(pp, config):
    base = haar_average(pp, config, QuadratureSpec(8, 16))
    fine = haar_average(pp, config, QuadratureSpec(16, 32))
    assert abs(base - fine) < 1e-12


def test_grid_matches_pointwise_average():
    gen = rng(32)
    config = random_config(gen)
    thetas = np.linspace(-math.pi / 2.0, math.pi / 2.0, 7)
    phis = np.linspace(-math.pi / 2.0, math.pi / 2.0, 5)
    grid = haar_average_grid(thetas, phis, ChannelKind.PHI, config)
    assert grid.shape == (7, 5)
    for i, th in enumerate(thetas):
        for j, ph in enumerate(phis):
            pp = ProtocolParams(th, ph, ChannelKind.PHI)
            assert grid[i, j] == pytest.approx(haar_average(pp, config), abs=1e-14)


def test_trig_coefficients_reproduce_the_average():
    gen = rng(33)
    for channel in ChannelKind:
        config = random_config(gen)
        coeffs = trig_coefficients(channel, config)
        assert coeffs.shape == (3, 3)
        for _ in range(8):
            pp = random_params(gen, channel)
            t_th = np.array([1.0, math.cos(2 * pp.theta), math.sin(2 * pp.theta)])
            t_ph = np.array([1.0, math.cos(2 * pp.phi), math.sin(2 * pp.phi)])
            assert float(t_th @ coeffs @ t_ph) == pytest.approx(
                haar_average(pp, config), abs=1e-13)


def test_trig_coefficients_returns_a_safe_copy():
    config = NoiseConfig(bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.4))
    first = trig_coefficients(ChannelKind.PHI, config)
    snapshot = first.copy()
    first[:] = 0.0
    second = trig_coefficients(ChannelKind.PHI, config)
    assert np.array_equal(second, snapshot)
