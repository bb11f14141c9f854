"""Command-line front end: runs, figure sweeps, optimization, verification.

All data output is CSV with the fixed header

    scenario,kind_in,kind_a,kind_b,p_in,p_a,p_b,theta,phi,concurrence,f_closed,f_numeric,delta

Reals print with 12 significant digits and '\\n' line endings, so a
repeated invocation is byte-identical. f_closed is filled whenever an
analytic expression covers the exact scenario: the matching optimum,
the input-only expression at arbitrary angles, or a damped-Bob
expression at phi = pi/4; otherwise it and delta stay empty.

Exit codes: 0 success, 1 verification failure, 2 usage error.

Figure sweeps emit data series, not images:

    fig1          input-only optima, all four kinds, over p_I
    fig2 / fig3   bit-flip / phase-flip input at p_I in {0.1,0.3,0.7,0.9},
                  each non-trivial Bob kind, over p_B
    figA1 / figA2 the same layout for depolarizing / damped input
    fig4          bit-flip pair on input+Alice at p in {0.1,0.3,0.7,0.9},
                  each Bob kind, over p_B
    fig5          amplitude damping on both channel qubits, both resource
                  kinds, over p

Rows are independent; they are computed and written in a fixed order.
"""

from __future__ import annotations

import argparse
import math
import sys

from .average import QuadratureSpec, haar_average
from .closedform import (f_channel_choice_ad, f_general_input_only,
                         f_opt_alice_pair, f_opt_input_bob, f_opt_input_only,
                         f_theta_alice_pair_ad, f_theta_input_bob,
                         printed_optimum)
from .noise import NoiseConfig, NoiseKind, NoiseSpec
from .optimize import optimize_angles
from .states import ChannelKind, ProtocolParams, concurrence
from .verification import run_checks

CSV_HEADER = ("scenario,kind_in,kind_a,kind_b,p_in,p_a,p_b,"
              "theta,phi,concurrence,f_closed,f_numeric,delta")
QUARTER_PI = 0.25 * math.pi

_ANGLE_MATCH_TOL = 1e-6
_PANEL_PS = (0.1, 0.3, 0.7, 0.9)
_SWEEP_KINDS = (NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP,
                NoiseKind.DEPOLARIZING, NoiseKind.AMPLITUDE_DAMPING)


def p_of_time(t: float, T: float) -> float:
    """Noise probability after exposure time t with decay constant T."""
    if T <= 0.0:
        raise ValueError(f"decay constant T must be positive, got {T}")
    if t < 0.0:
        raise ValueError(f"exposure time t must be nonnegative, got {t}")
    return 1.0 - math.exp(-t / T)


def _parse_noise(token: str) -> NoiseSpec:
    kind_part, sep, p_part = token.partition(":")
    try:
        kind = NoiseKind(kind_part)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown noise kind in '{token}': expected none, bf, phf, d or ad")
    if kind is NoiseKind.NONE:
        if sep:
            raise argparse.ArgumentTypeError(
                f"'none' takes no probability, got '{token}'")
        return NoiseSpec()
    if not sep or not p_part:
        raise argparse.ArgumentTypeError(
            f"missing probability in '{token}': expected {kind.value}:p")
    try:
        p = float(p_part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability in '{token}'")
    if not (0.0 <= p <= 1.0):
        raise argparse.ArgumentTypeError(
            f"probability must lie in [0, 1], got '{token}'")
    return NoiseSpec(kind, p)


def _parse_step(token: str) -> float:
    try:
        step = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad step '{token}'")
    if not (0.0 < step <= 1.0):
        raise argparse.ArgumentTypeError(f"step must lie in (0, 1], got {step}")
    return step


def _fmt(value) -> str:
    return "" if value is None else f"{value:.12g}"


def _csv_row(scenario: str, config: NoiseConfig, theta: float, phi: float,
             f_closed, f_numeric: float) -> str:
    delta = abs(f_closed - f_numeric) if f_closed is not None else None
    return ",".join([
        scenario,
        config.input.kind.value, config.alice.kind.value, config.bob.kind.value,
        _fmt(config.input.p), _fmt(config.alice.p), _fmt(config.bob.p),
        _fmt(theta), _fmt(phi), _fmt(concurrence(theta)),
        _fmt(f_closed), _fmt(f_numeric), _fmt(delta)])


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as handle:
            handle.write(text)


def _closed_form_at(config: NoiseConfig, channel: ChannelKind,
                    theta: float, phi: float):
    """Analytic value for this exact scenario, None when uncataloged."""
    family = printed_optimum(config, channel)
    if family is not None:
        ts, ps = family.setting.theta_star, family.setting.phi_star
        for sign in (1.0, -1.0):
            if (abs(theta - sign * ts) <= _ANGLE_MATCH_TOL
                    and abs(phi - sign * ps) <= _ANGLE_MATCH_TOL):
                return family.value

    ki, ka, kb = config.input.kind, config.alice.kind, config.bob.kind
    none = NoiseKind.NONE
    if ka is none and kb is none:
        kind = ki if ki is not none else NoiseKind.BIT_FLIP
        return f_general_input_only(kind, config.input.p, theta, phi)

    # damped Bob at phi = +/- pi/4: theta-dependent expressions;
    # flipping both signs leaves the average unchanged
    if channel is ChannelKind.PHI and kb is NoiseKind.AMPLITUDE_DAMPING \
            and abs(abs(phi) - QUARTER_PI) <= _ANGLE_MATCH_TOL:
        th = theta if phi > 0 else -theta
        if ka is none:
            kind = ki if ki is not none else NoiseKind.BIT_FLIP
            return f_theta_input_bob(kind, config.input.p, config.bob.p, th)
        if ki is NoiseKind.BIT_FLIP and ka is NoiseKind.BIT_FLIP \
                and config.input.p == config.alice.p:
            return f_theta_alice_pair_ad(config.input.p, config.bob.p, th)
    return None


def cmd_run(args) -> int:
    config = NoiseConfig(args.noise_in, args.noise_a, args.noise_b)
    channel = ChannelKind(args.channel)
    quad = QuadratureSpec(args.quad_prob0, args.quad_phase)
    family = printed_optimum(config, channel)
    if family is not None:
        default_theta, default_phi = (family.setting.theta_star,
                                      family.setting.phi_star)
    else:
        default_theta = default_phi = QUARTER_PI
    theta = args.theta if args.theta is not None else default_theta
    phi = args.phi if args.phi is not None else default_phi
    f_numeric = haar_average(ProtocolParams(theta, phi, channel), config, quad)
    f_closed = _closed_form_at(config, channel, theta, phi)
    _emit([CSV_HEADER, _csv_row("run", config, theta, phi, f_closed, f_numeric)],
          args.out)
    return 0


def cmd_optimize(args) -> int:
    config = NoiseConfig(args.noise_in, args.noise_a, args.noise_b)
    channel = ChannelKind(args.channel)
    quad = QuadratureSpec(args.quad_prob0, args.quad_phase)
    report = optimize_angles(config, channel, args.grid, quad)
    family = printed_optimum(config, channel)
    f_closed = family.value if family is not None else None
    _emit([CSV_HEADER,
           _csv_row("optimize", config, report.best_theta, report.best_phi,
                    f_closed, report.best_value)], args.out)
    return 0


def _axis(step: float) -> list[float]:
    count = int(math.floor(1.0 / step + 1e-9)) + 1
    return [min(k * step, 1.0) for k in range(count)]


def _family_row(scenario, config, channel, value, setting, quad) -> str:
    params = ProtocolParams(setting.theta_star, setting.phi_star, channel)
    return _csv_row(scenario, config, setting.theta_star, setting.phi_star,
                    value, haar_average(params, config, quad))


def _rows_fig1(axis, quad):
    for kind in _SWEEP_KINDS:
        for p in axis:
            value, setting = f_opt_input_only(kind, p)
            yield _family_row(f"fig1:{kind.value}",
                              NoiseConfig(input=NoiseSpec(kind, p)),
                              ChannelKind.PHI, value, setting, quad)


def _rows_input_bob(figure, kind_in, axis, quad):
    for p_i in _PANEL_PS:
        for kind_bob in _SWEEP_KINDS:
            for p_b in axis:
                value, setting = f_opt_input_bob(kind_in, kind_bob, p_i, p_b)
                yield _family_row(
                    f"{figure}:pI={p_i:g}:{kind_bob.value}",
                    NoiseConfig(input=NoiseSpec(kind_in, p_i),
                                bob=NoiseSpec(kind_bob, p_b)),
                    ChannelKind.PHI, value, setting, quad)


def _rows_fig4(axis, quad):
    for p in _PANEL_PS:
        for kind_bob in _SWEEP_KINDS:
            for p_b in axis:
                value, setting = f_opt_alice_pair(kind_bob, p, p_b)
                yield _family_row(
                    f"fig4:p={p:g}:{kind_bob.value}",
                    NoiseConfig(input=NoiseSpec(NoiseKind.BIT_FLIP, p),
                                alice=NoiseSpec(NoiseKind.BIT_FLIP, p),
                                bob=NoiseSpec(kind_bob, p_b)),
                    ChannelKind.PHI, value, setting, quad)


def _rows_fig5(axis, quad):
    for channel in (ChannelKind.PHI, ChannelKind.PSI):
        for p in axis:
            value, setting = f_channel_choice_ad(channel, p)
            yield _family_row(
                f"fig5:{channel.value}",
                NoiseConfig(alice=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, p),
                            bob=NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, p)),
                channel, value, setting, quad)


_FIGURES = {
    "fig1": lambda axis, quad: _rows_fig1(axis, quad),
    "fig2": lambda axis, quad: _rows_input_bob("fig2", NoiseKind.BIT_FLIP, axis, quad),
    "fig3": lambda axis, quad: _rows_input_bob("fig3", NoiseKind.PHASE_FLIP, axis, quad),
    "fig4": lambda axis, quad: _rows_fig4(axis, quad),
    "fig5": lambda axis, quad: _rows_fig5(axis, quad),
    "figA1": lambda axis, quad: _rows_input_bob("figA1", NoiseKind.DEPOLARIZING, axis, quad),
    "figA2": lambda axis, quad: _rows_input_bob("figA2", NoiseKind.AMPLITUDE_DAMPING, axis, quad),
}


def cmd_sweep(args) -> int:
    quad = QuadratureSpec(args.quad_prob0, args.quad_phase)
    rows = [CSV_HEADER]
    rows.extend(_FIGURES[args.figure](_axis(args.step), quad))
    _emit(rows, args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_checks(grid=args.grid, tol=args.tol)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"  [{r.detail}]" if r.detail else ""
        lines.append(f"{status}  {r.name:28s} checks={r.checks:<6d} "
                     f"worst={r.worst:.3e}  tol={r.tol:g}{detail}")
    failed = sum(1 for r in results if not r.passed)
    total_checks = sum(r.checks for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} check groups passed "
                 f"({total_checks} individual checks)")
    sys.stdout.write("\n".join(lines) + "\n")
    return 1 if failed else 0


def _add_noise_flags(parser) -> None:
    parser.add_argument("--in", dest="noise_in", type=_parse_noise,
                        default=NoiseSpec(), metavar="KIND[:P]",
                        help="input-qubit noise, e.g. bf:0.3 or none")
    parser.add_argument("--a", dest="noise_a", type=_parse_noise,
                        default=NoiseSpec(), metavar="KIND[:P]",
                        help="noise on Alice's channel qubit")
    parser.add_argument("--b", dest="noise_b", type=_parse_noise,
                        default=NoiseSpec(), metavar="KIND[:P]",
                        help="noise on Bob's channel qubit")


def _add_quad_flags(parser) -> None:
    parser.add_argument("--quad-prob0", type=int, default=8,
                        help="Gauss-Legendre nodes on the population axis")
    parser.add_argument("--quad-phase", type=int, default=16,
                        help="uniform nodes on the phase axis")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleportsim",
        description="teleportation fidelity under single-qubit noise")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one scenario, one CSV row")
    _add_noise_flags(p_run)
    p_run.add_argument("--theta", type=float, default=None,
                       help="channel angle in radians (default: the "
                            "scenario's analytic optimum, else pi/4)")
    p_run.add_argument("--phi", type=float, default=None,
                       help="measurement angle in radians (same default rule)")
    p_run.add_argument("--channel", choices=["phi", "psi"], default="phi")
    _add_quad_flags(p_run)
    p_run.add_argument("--out", default=None, help="output file (default stdout)")
    p_run.set_defaults(handler=cmd_run)

    p_sweep = sub.add_parser("sweep", help="figure-reproduction data sweep")
    p_sweep.add_argument("--figure", required=True, choices=sorted(_FIGURES),
                         help="which data set to emit")
    p_sweep.add_argument("--step", type=_parse_step, default=0.01,
                         help="probability step (default 0.01)")
    _add_quad_flags(p_sweep)
    p_sweep.add_argument("--out", default=None, help="output file (default stdout)")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="maximize <Fbar> over the angles")
    _add_noise_flags(p_opt)
    p_opt.add_argument("--channel", choices=["phi", "psi"], default="phi")
    p_opt.add_argument("--grid", type=int, default=41,
                       help="coarse scan resolution per axis (default 41)")
    _add_quad_flags(p_opt)
    p_opt.add_argument("--out", default=None, help="output file (default stdout)")
    p_opt.set_defaults(handler=cmd_optimize)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--grid", type=int, default=21,
                          help="probability-grid points per axis (default 21)")
    p_verify.add_argument("--tol", type=float, default=1e-9,
                          help="tolerance for cross-validation checks")
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
