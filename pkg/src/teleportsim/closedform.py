"""Closed-form averaged fidelities for the cataloged noise scenarios.

Every function here evaluates an analytic expression; none runs the
density-matrix pipeline. They exist to cross-check the quadrature
oracle and to hand the CLI and the optimizer their reference optima.

Catalog (first/second/third slot = input/Alice/Bob noise):

  input only           X,-,-    for X in {BF, PhF, D, AD}
  input and Bob        X,-,Y    all 16 kind pairs
  Alice pair           BF,BF,Y  with p_input = p_alice = p
  channel pair         X,BF,BF  with p_alice = p_bob = p
  channel choice       -,AD,AD  for both resource kinds (PHI vs PSI)

Scenarios with amplitude damping on Bob optimize at phi = pi/4 with
tan(2 theta) fixed by the noise strengths; everything else optimizes at
theta = phi = +/- pi/4 or theta = -phi = +/- pi/4 (sign regimes). Sign
twins (-theta, -phi) are always equally optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .noise import NoiseConfig, NoiseKind
from .states import ChannelKind

QUARTER_PI = 0.25 * math.pi
CLASSICAL_LIMIT = 2.0 / 3.0

_INPUT_KINDS = (NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP,
                NoiseKind.DEPOLARIZING, NoiseKind.AMPLITUDE_DAMPING)

SAME_SIGN = "same-sign"
OPPOSITE_SIGN = "opposite-sign"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class OptimalSetting:
    theta_star: float
    phi_star: float
    branch_note: str = ""


def _check_p(name: str, value: float) -> float:
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return float(value)


def _sign_setting(regime: str) -> OptimalSetting:
    if regime == OPPOSITE_SIGN:
        return OptimalSetting(-QUARTER_PI, QUARTER_PI,
                              "theta = -phi = pi/4; twin (pi/4, -pi/4) equally optimal")
    if regime == DEGENERATE:
        return OptimalSetting(QUARTER_PI, QUARTER_PI,
                              "degenerate: both sign regimes coincide")
    return OptimalSetting(QUARTER_PI, QUARTER_PI,
                          "theta = phi = pi/4; twin (-pi/4, -pi/4) equally optimal")


def _regime(discriminant: float) -> str:
    if discriminant > 0.0:
        return SAME_SIGN
    if discriminant < 0.0:
        return OPPOSITE_SIGN
    return DEGENERATE


def _tan_setting(numerator: float, denominator: float) -> OptimalSetting:
    theta = 0.5 * math.atan2(numerator, denominator)
    return OptimalSetting(theta, QUARTER_PI,
                          "phi = pi/4, tan(2 theta) = "
                          f"{numerator:.6g}/{denominator:.6g}; "
                          "twin (-theta, -phi) equally optimal")


# ---------------------------------------------------------------- input only

def f_general_input_only(kind: NoiseKind, p_i: float,
                         theta: float, phi: float) -> float:
    """Averaged fidelity at arbitrary angles, noise on the input only."""
    p = _check_p("p_i", p_i)
    ss = math.sin(2.0 * theta) * math.sin(2.0 * phi)
    if kind is NoiseKind.BIT_FLIP:
        return (2.0 / 3.0) * (1.0 - p / 2.0 + (1.0 - p) / 2.0 * ss)
    if kind is NoiseKind.PHASE_FLIP:
        return (2.0 / 3.0) * (1.0 + (1.0 - 2.0 * p) / 2.0 * ss)
    if kind is NoiseKind.DEPOLARIZING:
        return (2.0 / 3.0) * (1.0 - p / 4.0 + (1.0 - p) / 2.0 * ss)
    if kind is NoiseKind.AMPLITUDE_DAMPING:
        return (2.0 / 3.0) * (1.0 - p / 4.0 + math.sqrt(1.0 - p) / 2.0 * ss)
    raise ValueError(f"no input-only expression for kind {kind}")


def f_opt_input_only(kind: NoiseKind, p_i: float) -> tuple[float, OptimalSetting]:
    p = _check_p("p_i", p_i)
    if kind is NoiseKind.BIT_FLIP:
        return 1.0 - 2.0 * p / 3.0, _sign_setting(SAME_SIGN)
    if kind is NoiseKind.PHASE_FLIP:
        value = 2.0 / 3.0 + abs(1.0 - 2.0 * p) / 3.0
        return value, _sign_setting(_regime(1.0 - 2.0 * p))
    if kind is NoiseKind.DEPOLARIZING:
        return 1.0 - p / 2.0, _sign_setting(SAME_SIGN)
    if kind is NoiseKind.AMPLITUDE_DAMPING:
        value = 2.0 / 3.0 - p / 6.0 + math.sqrt(1.0 - p) / 3.0
        return value, _sign_setting(SAME_SIGN)
    raise ValueError(f"no input-only optimum for kind {kind}")


# ------------------------------------------------------------- input and Bob

def f_theta_input_bob(kind_in: NoiseKind, p_i: float, p_b: float,
                      theta: float) -> float:
    """Amplitude damping on Bob at phi = pi/4, theta free."""
    p_i = _check_p("p_i", p_i)
    p_b = _check_p("p_b", p_b)
    c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    if kind_in is NoiseKind.BIT_FLIP:
        return (2.0 / 3.0
                - (p_i + p_b / 2.0 * (1.0 - 2.0 * p_i) * (1.0 - c2)
                   - (1.0 - p_i) * math.sqrt(1.0 - p_b) * s2) / 3.0)
    if kind_in is NoiseKind.PHASE_FLIP:
        return (2.0 / 3.0) * (1.0 - p_b / 4.0 + p_b * c2 / 4.0
                              + (1.0 - 2.0 * p_i) * math.sqrt(1.0 - p_b) * s2 / 2.0)
    if kind_in is NoiseKind.DEPOLARIZING:
        return (2.0 / 3.0 - p_i / 6.0
                - (1.0 - p_i) * p_b * (1.0 - c2) / 6.0
                + (1.0 - p_i) * math.sqrt(1.0 - p_b) * s2 / 3.0)
    if kind_in is NoiseKind.AMPLITUDE_DAMPING:
        return (2.0 / 3.0 - p_i / 6.0
                - (1.0 - p_i) * p_b * (1.0 - c2) / 6.0
                + math.sqrt((1.0 - p_i) * (1.0 - p_b)) * s2 / 3.0)
    raise ValueError(f"no damped-Bob expression for input kind {kind_in}")


def _ad_bob_setting(kind_in: NoiseKind, p_i: float, p_b: float) -> OptimalSetting:
    if kind_in is NoiseKind.BIT_FLIP:
        return _tan_setting(2.0 * (1.0 - p_i) * math.sqrt(1.0 - p_b),
                            p_b * (1.0 - 2.0 * p_i))
    if kind_in is NoiseKind.PHASE_FLIP:
        return _tan_setting(2.0 * (1.0 - 2.0 * p_i) * math.sqrt(1.0 - p_b), p_b)
    if kind_in is NoiseKind.DEPOLARIZING:
        return _tan_setting(2.0 * math.sqrt(1.0 - p_b), p_b)
    # amplitude damping on the input as well
    return _tan_setting(2.0 * math.sqrt((1.0 - p_b) * (1.0 - p_i)),
                        p_b * (1.0 - p_i))


def f_opt_input_bob(kind_in: NoiseKind, kind_bob: NoiseKind,
                    p_i: float, p_b: float) -> tuple[float, OptimalSetting]:
    """Optimal averaged fidelity, noise on the input and on Bob's qubit.

    kind_in NONE reduces to noise on Bob only (all input kinds coincide
    at p_i = 0); kind_bob NONE reduces to the input-only optimum.
    """
    if kind_in is NoiseKind.NONE:
        kind_in, p_i = NoiseKind.BIT_FLIP, 0.0
    if kind_bob is NoiseKind.NONE:
        _check_p("p_b", p_b)
        return f_opt_input_only(kind_in, p_i)
    p_i = _check_p("p_i", p_i)
    p_b = _check_p("p_b", p_b)
    q_i = 1.0 - p_i

    if kind_bob is NoiseKind.AMPLITUDE_DAMPING:
        setting = _ad_bob_setting(kind_in, p_i, p_b)
        return f_theta_input_bob(kind_in, p_i, p_b, setting.theta_star), setting

    if kind_in is NoiseKind.BIT_FLIP:
        if kind_bob is NoiseKind.BIT_FLIP:
            return (1.0 - (2.0 / 3.0) * (p_i + p_b - 2.0 * p_i * p_b),
                    _sign_setting(SAME_SIGN))
        if kind_bob is NoiseKind.PHASE_FLIP:
            value = 2.0 / 3.0 - (p_i - q_i * abs(1.0 - 2.0 * p_b)) / 3.0
            return value, _sign_setting(_regime(1.0 - 2.0 * p_b))
        if kind_bob is NoiseKind.DEPOLARIZING:
            return (1.0 - p_b / 2.0 - (2.0 / 3.0) * p_i * (1.0 - p_b),
                    _sign_setting(SAME_SIGN))
    if kind_in is NoiseKind.PHASE_FLIP:
        if kind_bob is NoiseKind.PHASE_FLIP:
            value = (2.0 / 3.0) * (1.0 + abs((1.0 - 2.0 * p_i) * (1.0 - 2.0 * p_b)) / 2.0)
            return value, _sign_setting(_regime((1.0 - 2.0 * p_i) * (1.0 - 2.0 * p_b)))
        if kind_bob is NoiseKind.BIT_FLIP:
            value = (2.0 / 3.0) * (1.0 - p_b / 2.0 + abs(1.0 - 2.0 * p_i) * (1.0 - p_b) / 2.0)
            return value, _sign_setting(_regime(1.0 - 2.0 * p_i))
        if kind_bob is NoiseKind.DEPOLARIZING:
            value = (2.0 / 3.0) * (1.0 - p_b / 4.0 + abs(1.0 - 2.0 * p_i) * (1.0 - p_b) / 2.0)
            return value, _sign_setting(_regime(1.0 - 2.0 * p_i))
    if kind_in is NoiseKind.DEPOLARIZING:
        if kind_bob is NoiseKind.DEPOLARIZING:
            return (1.0 - p_i / 2.0 - p_b * q_i / 2.0, _sign_setting(SAME_SIGN))
        if kind_bob is NoiseKind.BIT_FLIP:
            return (1.0 - p_i / 2.0 - 2.0 * p_b * q_i / 3.0, _sign_setting(SAME_SIGN))
        if kind_bob is NoiseKind.PHASE_FLIP:
            value = 2.0 / 3.0 - p_i / 6.0 + q_i * abs(1.0 - 2.0 * p_b) / 3.0
            return value, _sign_setting(_regime(1.0 - 2.0 * p_b))
    if kind_in is NoiseKind.AMPLITUDE_DAMPING:
        if kind_bob is NoiseKind.BIT_FLIP:
            value = (2.0 / 3.0 - p_i / 6.0 - q_i * p_b / 3.0
                     + math.sqrt(q_i) * (1.0 - p_b) / 3.0)
            return value, _sign_setting(SAME_SIGN)
        if kind_bob is NoiseKind.PHASE_FLIP:
            value = 2.0 / 3.0 - p_i / 6.0 + math.sqrt(q_i) * abs(1.0 - 2.0 * p_b) / 3.0
            return value, _sign_setting(_regime(1.0 - 2.0 * p_b))
        if kind_bob is NoiseKind.DEPOLARIZING:
            value = (2.0 / 3.0 - p_b / 6.0
                     + (1.0 - p_b) / 3.0 * (math.sqrt(q_i) - p_i / 2.0))
            return value, _sign_setting(SAME_SIGN)
    raise ValueError(f"no printed optimum for kinds ({kind_in}, {kind_bob})")


# ----------------------------------------------- Alice pair and channel pair

def f_theta_alice_pair_ad(p: float, p_b: float, theta: float) -> float:
    """Bit flip on input and Alice (both at p), amplitude damping on Bob."""
    p = _check_p("p", p)
    p_b = _check_p("p_b", p_b)
    c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    pq = p * (1.0 - p)
    return (2.0 / 3.0 - p_b / 6.0 - 2.0 * pq * (1.0 - p_b) / 3.0
            + (1.0 - 2.0 * p) ** 2 * p_b * c2 / 6.0
            + (1.0 - 2.0 * pq) * math.sqrt(1.0 - p_b) * s2 / 3.0)


def f_opt_alice_pair(kind_bob: NoiseKind, p: float,
                     p_b: float = 0.0) -> tuple[float, OptimalSetting]:
    """Bit flip on input and Alice at equal strength p, kind_bob on Bob."""
    p = _check_p("p", p)
    p_b = _check_p("p_b", p_b)
    pq = p * (1.0 - p)
    if kind_bob is NoiseKind.NONE:
        return 1.0 - 4.0 * pq / 3.0, _sign_setting(SAME_SIGN)
    if kind_bob is NoiseKind.BIT_FLIP:
        return (1.0 - 2.0 * p_b / 3.0 - 4.0 * pq * (1.0 - 2.0 * p_b) / 3.0,
                _sign_setting(SAME_SIGN))
    if kind_bob is NoiseKind.PHASE_FLIP:
        value = (2.0 / 3.0 - 2.0 * pq / 3.0
                 + (1.0 - 2.0 * pq) * abs(1.0 - 2.0 * p_b) / 3.0)
        return value, _sign_setting(_regime(1.0 - 2.0 * p_b))
    if kind_bob is NoiseKind.DEPOLARIZING:
        return (1.0 - p_b / 2.0 - 4.0 * pq * (1.0 - p_b) / 3.0,
                _sign_setting(SAME_SIGN))
    if kind_bob is NoiseKind.AMPLITUDE_DAMPING:
        setting = _tan_setting(2.0 * (1.0 - 2.0 * pq) * math.sqrt(1.0 - p_b),
                               (1.0 - 2.0 * p) ** 2 * p_b)
        return f_theta_alice_pair_ad(p, p_b, setting.theta_star), setting
    raise ValueError(f"no Alice-pair optimum for Bob kind {kind_bob}")


def f_opt_channel_pair(kind_in: NoiseKind, p_i: float,
                       p: float) -> tuple[float, OptimalSetting]:
    """Bit flip on both channel qubits at equal strength p, kind_in on the input."""
    p_i = _check_p("p_i", p_i)
    p = _check_p("p", p)
    pq = p * (1.0 - p)
    q_i = 1.0 - p_i
    if kind_in is NoiseKind.NONE:
        return 1.0 - 4.0 * pq / 3.0, _sign_setting(SAME_SIGN)
    if kind_in is NoiseKind.BIT_FLIP:
        return (1.0 - 2.0 * p_i / 3.0 - 4.0 * (1.0 - 2.0 * p_i) * pq / 3.0,
                _sign_setting(SAME_SIGN))
    if kind_in is NoiseKind.PHASE_FLIP:
        value = (2.0 / 3.0 - 2.0 * pq / 3.0
                 + abs(1.0 - 2.0 * p_i) * (1.0 - 2.0 * pq) / 3.0)
        return value, _sign_setting(_regime(1.0 - 2.0 * p_i))
    if kind_in is NoiseKind.DEPOLARIZING:
        return (1.0 - p_i / 2.0 - 4.0 * q_i * pq / 3.0, _sign_setting(SAME_SIGN))
    if kind_in is NoiseKind.AMPLITUDE_DAMPING:
        value = (2.0 / 3.0 - p_i / 6.0 - 2.0 * q_i * pq / 3.0
                 + math.sqrt(q_i) * (1.0 - 2.0 * pq) / 3.0)
        return value, _sign_setting(SAME_SIGN)
    raise ValueError(f"no channel-pair optimum for input kind {kind_in}")


# ------------------------------------------------------------ channel choice

def f_channel_choice_ad(channel: ChannelKind, p: float) -> tuple[float, OptimalSetting]:
    """Amplitude damping on both channel qubits; PHI vs PSI resource."""
    p = _check_p("p", p)
    if channel is ChannelKind.PHI:
        value = 2.0 / 3.0 + (1.0 - p) * (math.sqrt(1.0 + p * p) - p) / 3.0
        return value, _tan_setting(1.0, p)
    value = 1.0 - 2.0 * p / 3.0
    return value, _sign_setting(SAME_SIGN)


# ---------------------------------------------------------- family matching

@dataclass(frozen=True)
class PrintedFamily:
    """A configuration matching one cataloged closed form."""

    label: str
    value: float
    setting: OptimalSetting


def printed_optimum(config: NoiseConfig,
                    channel: ChannelKind = ChannelKind.PHI) -> PrintedFamily | None:
    """Match a noise configuration against the catalog, None if absent."""
    ki, ka, kb = config.input.kind, config.alice.kind, config.bob.kind
    pi, pa, pb = config.input.p, config.alice.p, config.bob.p
    none = NoiseKind.NONE

    if ki is none and ka is none and kb is none:
        return PrintedFamily("noiseless", 1.0, _sign_setting(SAME_SIGN))

    if channel is ChannelKind.PSI:
        if ki is none and ka is kb and pa == pb:
            if ka is NoiseKind.AMPLITUDE_DAMPING:
                value, setting = f_channel_choice_ad(channel, pa)
                return PrintedFamily("-,ad,ad (psi)", value, setting)
            if ka is NoiseKind.BIT_FLIP:
                # equal to the PHI resource value for a bit-flip pair
                value, setting = f_opt_channel_pair(none, 0.0, pa)
                return PrintedFamily("-,bf,bf (psi)", value, setting)
        return None

    if ka is NoiseKind.BIT_FLIP and ki is NoiseKind.BIT_FLIP and pi == pa:
        value, setting = f_opt_alice_pair(kb, pi, pb)
        return PrintedFamily(f"bf,bf,{kb.value}", value, setting)
    if ka is NoiseKind.BIT_FLIP and kb is NoiseKind.BIT_FLIP and pa == pb:
        value, setting = f_opt_channel_pair(ki, pi, pa)
        return PrintedFamily(f"{ki.value},bf,bf", value, setting)
    if ka is NoiseKind.AMPLITUDE_DAMPING and kb is NoiseKind.AMPLITUDE_DAMPING \
            and pa == pb and ki is none:
        value, setting = f_channel_choice_ad(channel, pa)
        return PrintedFamily("-,ad,ad (phi)", value, setting)
    if ka is none:
        if ki is not none and kb is none:
            value, setting = f_opt_input_only(ki, pi)
            return PrintedFamily(f"{ki.value},-,-", value, setting)
        if kb is not none:
            value, setting = f_opt_input_bob(ki, kb, pi, pb)
            label_in = ki.value if ki is not none else "-"
            return PrintedFamily(f"{label_in},-,{kb.value}", value, setting)
    return None


def printed_sign_rule(config: NoiseConfig,
                      channel: ChannelKind = ChannelKind.PHI) -> str | None:
    """The cataloged sign regime for a configuration, None if uncataloged."""
    family = printed_optimum(config, channel)
    if family is None:
        return None
    note = family.setting.branch_note
    if note.startswith("degenerate"):
        return DEGENERATE
    if note.startswith("theta = -phi"):
        return OPPOSITE_SIGN
    if note.startswith("phi = pi/4"):
        # damped-Bob families: regime follows the sign of theta_star
        if family.setting.theta_star > 1e-12:
            return SAME_SIGN
        if family.setting.theta_star < -1e-12:
            return OPPOSITE_SIGN
        return DEGENERATE
    return SAME_SIGN


# ------------------------------------------------------------ symmetry suite

@dataclass(frozen=True)
class SymmetryEntry:
    label: str
    max_abs_difference: float
    symmetric: bool


@dataclass(frozen=True)
class SymmetryReport:
    entries: tuple[SymmetryEntry, ...]
    ad_asymmetry: float
    ok: bool


def symmetry_check_families(p_values=(0.0, 0.2, 0.4, 0.6, 0.8, 1.0),
                            tol: float = 1e-9, quad=None) -> SymmetryReport:
    """Check pair/input exchange symmetry through the quadrature oracle.

    For pair kind K in {BF, PhF, D} and third kind X, swapping
    (K on input+Alice, X on Bob) with (X on input, K on both channel
    qubits) leaves <Fbar> unchanged at theta = phi = pi/4 when the
    swapped strengths match. The amplitude-damping pair breaks this;
    the report records the violation magnitude at p = 0.4, X = BF.
    """
    from .average import haar_average  # local import to avoid a cycle
    from .noise import NoiseSpec
    from .states import ProtocolParams

    params = ProtocolParams(QUARTER_PI, QUARTER_PI)
    third_kinds = (NoiseKind.NONE, NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP,
                   NoiseKind.DEPOLARIZING, NoiseKind.AMPLITUDE_DAMPING)

    def both_orderings(pair_kind, third_kind, p, p_x):
        pair = NoiseSpec(pair_kind, p)
        third = NoiseSpec(third_kind, p_x)
        first = haar_average(params, NoiseConfig(pair, pair, third), quad)
        second = haar_average(params, NoiseConfig(third, pair, pair), quad)
        return abs(first - second)

    entries = []
    for pair_kind in (NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP, NoiseKind.DEPOLARIZING):
        for third_kind in third_kinds:
            worst = max(both_orderings(pair_kind, third_kind, p, p_x)
                        for p in p_values for p_x in p_values)
            entries.append(SymmetryEntry(
                f"{pair_kind.value} pair vs {third_kind.value} third",
                worst, worst <= tol))

    ad_gap = both_orderings(NoiseKind.AMPLITUDE_DAMPING, NoiseKind.BIT_FLIP, 0.4, 0.4)
    ok = all(e.symmetric for e in entries) and ad_gap > 1e-6
    return SymmetryReport(tuple(entries), ad_gap, ok)
