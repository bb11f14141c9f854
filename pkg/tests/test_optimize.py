import math

import pytest
from hypothesis import given, settings

from teleportsim import (
    ChannelKind,
    NoiseConfig,
    NoiseKind,
    NoiseSpec,
    ProtocolParams,
    haar_average,
    optimize_angles,
    sign_regime,
)
from teleportsim.verification import iter_printed_families

from helpers import channels, configs

QUARTER_PI = math.pi / 4.0


def _twin_normalized(report):
    # optima come in +/- pairs; normalize to phi >= 0 before comparing angles
    if report.best_phi < 0.0:
        return -report.best_theta, -report.best_phi
    return report.best_theta, report.best_phi


def test_noiseless_optimum_is_maximally_entangled():
    report = optimize_angles(NoiseConfig())
    assert report.best_value == pytest.approx(1.0, abs=1e-10)
    theta, phi = _twin_normalized(report)
    assert theta == pytest.approx(QUARTER_PI, abs=1e-8)
    assert phi == pytest.approx(QUARTER_PI, abs=1e-8)


def test_strong_phase_flip_flips_the_sign_regime():
    report = optimize_angles(NoiseConfig(input=NoiseSpec(NoiseKind.PHASE_FLIP, 0.8)))
    assert report.best_value == pytest.approx(2.0 / 3.0 + 0.2, abs=1e-10)
    theta, phi = _twin_normalized(report)
    assert theta == pytest.approx(-QUARTER_PI, abs=1e-6)
    assert phi == pytest.approx(QUARTER_PI, abs=1e-6)


def test_damped_bob_pulls_the_optimum_away_from_maximal_entanglement():
    config = NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 0.2),
                         bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5))
    report = optimize_angles(config)
    theta, phi = _twin_normalized(report)
    expected_theta = 0.5 * math.atan(3.7712361663282534)
    assert theta == pytest.approx(expected_theta, abs=1e-6)
    assert phi == pytest.approx(QUARTER_PI, abs=1e-6)
    maximal = haar_average(ProtocolParams(QUARTER_PI, QUARTER_PI), config)
    assert report.best_value > maximal + 1e-6


def test_grid_resolution_validation():
    with pytest.raises(ValueError):
        optimize_angles(NoiseConfig(), grid_n=8)


@settings(deadline=None, max_examples=60)
@given(configs, channels)
def test_optimum_never_loses_to_the_reference_corners(config, channel):
    report = optimize_angles(config, channel)
    assert -math.pi / 2.0 <= report.best_theta <= math.pi / 2.0
    assert -math.pi / 2.0 <= report.best_phi <= math.pi / 2.0
    for corner_theta in (QUARTER_PI, -QUARTER_PI):
        corner = haar_average(
            ProtocolParams(corner_theta, QUARTER_PI, channel), config)
        assert report.best_value >= corner - 1e-10


@settings(deadline=None, max_examples=60)
@given(configs, channels)
def test_sign_flip_leaves_the_averaged_objective_unchanged(config, channel):
    a = haar_average(ProtocolParams(0.53, -1.1, channel), config)
    b = haar_average(ProtocolParams(-0.53, 1.1, channel), config)
    assert a == pytest.approx(b, abs=1e-12)


def test_optimizer_reproduces_every_cataloged_optimum():
    # closed-form catalog on an 11-point probability grid per axis
    worst = 0.0
    count = 0
    for point in iter_printed_families(11):
        report = optimize_angles(point.config, point.channel)
        worst = max(worst, abs(report.best_value - point.value))
        count += 1
    assert count == 2992
    assert worst < 1e-7


def test_sign_regime_reports():
    phf = lambda p: NoiseConfig(input=NoiseSpec(NoiseKind.PHASE_FLIP, p))
    assert "match: yes" in sign_regime(phf(0.4))
    report = sign_regime(phf(0.6))
    assert report.startswith("opposite-sign")
    assert "match: yes" in report
    assert "match: yes" in sign_regime(phf(0.5))
    uncataloged = NoiseConfig(input=NoiseSpec(NoiseKind.PHASE_FLIP, 0.2),
                              alice=NoiseSpec(NoiseKind.PHASE_FLIP, 0.2))
    assert "no printed rule" in sign_regime(uncataloged)
