"""Self-checks tying the analytic catalog to the numerical pipeline.

run_checks drives every cross-validation the package offers: channel
algebra invariants, protocol exactness, closed forms against the
quadrature oracle over probability grids, optimizer consistency, and
backend agreement. The CLI `verify` subcommand is a thin wrapper.

Physical invariants (trace preservation, density-matrix structure,
unit branch probabilities) carry fixed tolerances; comparisons between
independent evaluation routes use the caller's tolerance so the suite
doubles as a noise-floor probe: tolerances below the arithmetic noise
of the longest accumulation chains are expected to fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _backend
from .average import (QuadratureSpec, gauss_legendre_nodes, haar_average,
                      haar_average_grid)
from .closedform import (OptimalSetting, f_channel_choice_ad, f_opt_alice_pair,
                         f_opt_channel_pair, f_opt_input_bob, f_opt_input_only,
                         symmetry_check_families)
from .linalg import is_density_matrix
from .noise import (NoiseConfig, NoiseKind, NoiseSpec, apply_noise,
                    check_trace_preserving, kraus_ops)
from .optimize import optimize_angles
from .states import ChannelKind, InputQubit, ProtocolParams
from .teleport import run

_INPUT_KINDS = (NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP,
                NoiseKind.DEPOLARIZING, NoiseKind.AMPLITUDE_DAMPING)
_ALL_KINDS = (NoiseKind.NONE,) + _INPUT_KINDS
QUARTER_PI = 0.25 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    checks: int
    worst: float
    tol: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FamilyPoint:
    """One probability-grid point of a cataloged closed-form family."""

    label: str
    config: NoiseConfig
    channel: ChannelKind
    value: float
    setting: OptimalSetting


def iter_printed_families(n: int) -> Iterator[FamilyPoint]:
    """All cataloged families on an n-point grid per probability axis."""
    ps = np.linspace(0.0, 1.0, n)
    phi_ch = ChannelKind.PHI

    for kind in _INPUT_KINDS:
        for p in ps:
            value, setting = f_opt_input_only(kind, p)
            yield FamilyPoint(f"{kind.value},-,-",
                              NoiseConfig(input=NoiseSpec(kind, p)),
                              phi_ch, value, setting)

    for kind_in in _INPUT_KINDS:
        for kind_bob in _INPUT_KINDS:
            for p_i in ps:
                for p_b in ps:
                    value, setting = f_opt_input_bob(kind_in, kind_bob, p_i, p_b)
                    yield FamilyPoint(
                        f"{kind_in.value},-,{kind_bob.value}",
                        NoiseConfig(input=NoiseSpec(kind_in, p_i),
                                    bob=NoiseSpec(kind_bob, p_b)),
                        phi_ch, value, setting)

    for kind_bob in _ALL_KINDS:
        for p in ps:
            for p_b in (ps if kind_bob is not NoiseKind.NONE else (0.0,)):
                value, setting = f_opt_alice_pair(kind_bob, p, p_b)
                yield FamilyPoint(
                    f"bf,bf,{kind_bob.value}",
                    NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, p),
                                alice=NoiseSpec(NoiseKind.BIT_FLIP, p),
                                bob=NoiseSpec(kind_bob, p_b)),
                    phi_ch, value, setting)

    for kind_in in _ALL_KINDS:
        for p in ps:
            for p_i in (ps if kind_in is not NoiseKind.NONE else (0.0,)):
                value, setting = f_opt_channel_pair(kind_in, p_i, p)
                yield FamilyPoint(
                    f"{kind_in.value},bf,bf",
                    NoiseConfig(input=NoiseSpec(kind_in, p_i),
                                alice=NoiseSpec(NoiseKind.BIT_FLIP, p),
                                bob=NoiseSpec(NoiseKind.BIT_FLIP, p)),
                    phi_ch, value, setting)

    for channel in (ChannelKind.PHI, ChannelKind.PSI):
        for p in ps:
            value, setting = f_channel_choice_ad(channel, p)
            yield FamilyPoint(
                f"-,ad,ad ({channel.value})",
                NoiseConfig(alice=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, p),
                            bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, p)),
                channel, value, setting)


def _random_density(rng, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _random_spec(rng) -> NoiseSpec:
    kind = _ALL_KINDS[int(rng.integers(0, len(_ALL_KINDS)))]
    return NoiseSpec(kind, float(rng.uniform(0.0, 1.0)) if kind is not NoiseKind.NONE else 0.0)


def _random_scenario(rng):
    q = InputQubit(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 2.0 * math.pi)))
    params = ProtocolParams(float(rng.uniform(-math.pi / 2, math.pi / 2)),
                            float(rng.uniform(-math.pi / 2, math.pi / 2)),
                            ChannelKind.PHI if rng.integers(0, 2) == 0 else ChannelKind.PSI)
    config = NoiseConfig(_random_spec(rng), _random_spec(rng), _random_spec(rng))
    return q, params, config


def _brute_average(params, config, quad) -> float:
    """Plain weighted sum of per-input runs; long naive accumulation."""
    total = 0.0
    phases = [2.0 * math.pi * k / quad.nodes_phase for k in range(quad.nodes_phase)]
    for prob0, w in gauss_legendre_nodes(quad.nodes_prob0):
        for c in phases:
            total += (w / quad.nodes_phase) * run(InputQubit(prob0, c),
                                                  params, config).avg_fidelity
    return total


def _check_kraus(tol: float) -> CheckResult:
    worst, count = 0.0, 0
    for kind in _INPUT_KINDS:
        for p in np.linspace(0.0, 1.0, 50):
            ops = kraus_ops(NoiseSpec(kind, float(p)))
            acc = sum(op.conj().T @ op for op in ops)
            worst = max(worst, float(np.max(np.abs(acc - np.eye(2)))))
            count += 1
            if not check_trace_preserving(ops, tol):
                return CheckResult("kraus-trace-preserving", count, worst, tol,
                                   False, f"{kind.value} at p={p:g}")
    return CheckResult("kraus-trace-preserving", count, worst, tol, True)


def _check_register_map(tol: float) -> CheckResult:
    rng = np.random.default_rng(20240811)
    worst, count = 0.0, 0
    for _ in range(100):
        rho = _random_density(rng, 8)
        config = NoiseConfig(_random_spec(rng), _random_spec(rng), _random_spec(rng))
        out = apply_noise(rho, config)
        worst = max(worst,
                    abs(float(np.trace(out).real) - 1.0),
                    float(np.max(np.abs(out - out.conj().T))),
                    max(0.0, -float(np.linalg.eigvalsh(out)[0])))
        count += 1
        if not is_density_matrix(out, tol):
            return CheckResult("register-map-density", count, worst, tol, False,
                               "output failed density-matrix structure")
    return CheckResult("register-map-density", count, worst, tol, True)


def _check_branch_probabilities(tol: float) -> CheckResult:
    rng = np.random.default_rng(20240812)
    worst, count = 0.0, 0
    for _ in range(100):
        q, params, config = _random_scenario(rng)
        result = run(q, params, config)
        total = sum(b.probability for b in result.branches)
        worst = max(worst, abs(total - 1.0))
        count += 1
    return CheckResult("branch-probabilities", count, worst, tol, worst <= tol)


def _check_noiseless(tol: float) -> CheckResult:
    rng = np.random.default_rng(20240813)
    params = ProtocolParams(QUARTER_PI, QUARTER_PI)
    worst, count = 0.0, 0
    for _ in range(20):
        q = InputQubit(float(rng.uniform(0, 1)), float(rng.uniform(0, 2 * math.pi)))
        result = run(q, params)
        for branch in result.branches:
            worst = max(worst, abs(branch.probability - 0.25),
                        abs(branch.fidelity - 1.0))
        count += 1
    return CheckResult("noiseless-exactness", count, worst, tol, worst <= tol)


def _check_closed_vs_oracle(grid: int, tol: float) -> CheckResult:
    worst, count, worst_label = 0.0, 0, ""
    for point in iter_printed_families(grid):
        numeric = haar_average(
            ProtocolParams(point.setting.theta_star, point.setting.phi_star,
                           point.channel), point.config)
        delta = abs(numeric - point.value)
        count += 1
        if delta > worst:
            worst, worst_label = delta, point.label
    return CheckResult("closed-vs-oracle", count, worst, tol, worst <= tol,
                       f"worst at {worst_label}" if worst_label else "")


def _check_optimum_dominates(grid: int, tol: float) -> CheckResult:
    angles = np.linspace(-math.pi / 2, math.pi / 2, 9)
    worst, count, worst_label = 0.0, 0, ""
    for point in iter_printed_families(grid):
        surface = haar_average_grid(angles, angles, point.channel, point.config)
        excess = float(surface.max()) - point.value
        count += 1
        if excess > worst:
            worst, worst_label = excess, point.label
    return CheckResult("optimum-dominates-grid", count, worst, tol, worst <= tol,
                       f"worst at {worst_label}" if worst_label else "")


def _check_pipeline_consistency(tol: float) -> CheckResult:
    quad = QuadratureSpec(32, 64)
    # amplitude-damping stacks stress the per-branch renormalization,
    # so these two carry the largest honest accumulation noise
    cases = [
        (NoiseConfig(alice=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5),
                     bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5)),
         ProtocolParams(QUARTER_PI, QUARTER_PI)),
        (NoiseConfig(input=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.9),
                     alice=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.7),
                     bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.8)),
         ProtocolParams(1.2, 0.3)),
    ]
    worst = 0.0
    for config, params in cases:
        delta = abs(_brute_average(params, config, quad) - haar_average(params, config))
        worst = max(worst, delta)
    return CheckResult("pipeline-consistency", len(cases), worst, tol, worst <= tol,
                       "2048-node naive sum vs polynomial path")


def _check_backend_agreement(tol: float) -> CheckResult:
    if not _backend.compiled_available():
        return CheckResult("backend-agreement", 0, 0.0, tol, True,
                           "compiled backend unavailable; nothing to compare")
    from . import _kernels_cy, _kernels_py
    rng = np.random.default_rng(20240814)
    worst, count = 0.0, 0
    for _ in range(40):
        theta, phi = rng.uniform(-2.0, 2.0, size=2)
        code = int(rng.integers(0, 2))
        stacks = [np.ascontiguousarray(np.stack(kraus_ops(_random_spec(rng))))
                  for _ in range(3)]
        a = _kernels_py.superops(theta, phi, code, *stacks)
        b = np.asarray(_kernels_cy.superops(theta, phi, code, *stacks))
        worst = max(worst, float(np.max(np.abs(a - b))))
        count += 1
    return CheckResult("backend-agreement", count, worst, tol, worst <= tol)


def _check_quadrature_plateau(tol: float) -> CheckResult:
    rng = np.random.default_rng(20240815)
    base = QuadratureSpec()
    double = QuadratureSpec(base.nodes_prob0 * 2, base.nodes_phase * 2)
    worst, count = 0.0, 0
    for _ in range(10):
        _, params, config = _random_scenario(rng)
        delta = abs(haar_average(params, config, base)
                    - haar_average(params, config, double))
        worst = max(worst, delta)
        count += 1
    return CheckResult("quadrature-plateau", count, worst, tol, worst <= tol)


def _check_sign_flip(tol: float) -> CheckResult:
    rng = np.random.default_rng(20240816)
    worst, count = 0.0, 0
    for _ in range(20):
        q, params, config = _random_scenario(rng)
        flipped = ProtocolParams(-params.theta, -params.phi, params.channel)
        delta = abs(run(q, params, config).avg_fidelity
                    - run(q, flipped, config).avg_fidelity)
        worst = max(worst, delta)
        count += 1
    return CheckResult("sign-flip-symmetry", count, worst, tol, worst <= tol)


def _check_exchange_symmetry(tol: float) -> CheckResult:
    report = symmetry_check_families(tol=tol)
    worst = max(e.max_abs_difference for e in report.entries)
    detail = f"amplitude-damping pair asymmetry {report.ad_asymmetry:.3e}"
    return CheckResult("exchange-symmetry", len(report.entries), worst, tol,
                       report.ok, detail)


def _check_optimizer(tol: float) -> CheckResult:
    worst, count = 0.0, 0
    probe = []
    for k in _INPUT_KINDS:
        for p in (0.0, 0.25, 0.5, 0.75, 1.0):
            value, setting = f_opt_input_only(k, p)
            probe.append(FamilyPoint(f"{k.value},-,-",
                                     NoiseConfig(input=NoiseSpec(k, p)),
                                     ChannelKind.PHI, value, setting))
    value, setting = f_opt_input_bob(NoiseKind.BIT_FLIP,
                                     NoiseKind.AMPLITUDE_DAMPING, 0.2, 0.5)
    probe.append(FamilyPoint("bf,-,ad",
                             NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 0.2),
                                         bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5)),
                             ChannelKind.PHI, value, setting))
    value, setting = f_opt_alice_pair(NoiseKind.AMPLITUDE_DAMPING, 0.3, 0.6)
    probe.append(FamilyPoint("bf,bf,ad",
                             NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, 0.3),
                                         alice=NoiseSpec(NoiseKind.BIT_FLIP, 0.3),
                                         bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.6)),
                             ChannelKind.PHI, value, setting))
    ad_pair = NoiseConfig(alice=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5),
                          bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.5))
    for channel in (ChannelKind.PHI, ChannelKind.PSI):
        value, setting = f_channel_choice_ad(channel, 0.5)
        probe.append(FamilyPoint(f"-,ad,ad ({channel.value})", ad_pair,
                                 channel, value, setting))
    worst_label = ""
    for point in probe:
        report = optimize_angles(point.config, point.channel)
        delta = abs(report.best_value - point.value)
        count += 1
        if delta > worst:
            worst, worst_label = delta, point.label
    return CheckResult("optimizer-consistency", count, worst, tol, worst <= tol,
                       f"worst at {worst_label}" if worst_label else "")


def run_checks(grid: int = 21, tol: float = 1e-9) -> list[CheckResult]:
    """The full verification suite; fixed-seed, deterministic."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    return [
        _check_kraus(1e-12),
        _check_register_map(1e-10),
        _check_branch_probabilities(1e-10),
        _check_noiseless(1e-10),
        _check_closed_vs_oracle(grid, tol),
        _check_optimum_dominates(grid, tol),
        _check_pipeline_consistency(tol),
        _check_backend_agreement(1e-12),
        _check_quadrature_plateau(1e-12),
        _check_sign_flip(1e-12),
        _check_exchange_symmetry(tol),
        _check_optimizer(tol),
    ]
