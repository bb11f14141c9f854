"""Teleportation of a single qubit through a noisy protocol.

Density-matrix simulation of the generalized protocol (partially
entangled resource, rotated Bell measurement, per-branch corrections)
under bit-flip, phase-flip, depolarizing and amplitude-damping noise on
any register slot, with exact input-state averaging, closed-form
cross-checks and protocol-angle optimization.
"""

from ._backend import backend_name, compiled_available, set_backend
from .average import (DEFAULT_QUADRATURE, QuadratureSpec, gauss_legendre_nodes,
                      haar_average, haar_average_grid, trig_coefficients)
from .cli import main, p_of_time
from .closedform import (OptimalSetting, PrintedFamily, printed_optimum,
                         printed_sign_rule, symmetry_check_families)
from .noise import NO_NOISE, NOISELESS, NoiseConfig, NoiseKind, NoiseSpec, apply_noise, kraus_ops
from .optimize import OptimizeReport, optimize_angles, sign_regime
from .states import ChannelKind, InputQubit, ProtocolParams, concurrence
from .teleport import BranchOutcome, TeleportResult, avg_fidelity, run
from .verification import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "BranchOutcome",
    "ChannelKind",
    "CheckResult",
    "DEFAULT_QUADRATURE",
    "InputQubit",
    "NO_NOISE",
    "NOISELESS",
    "NoiseConfig",
    "NoiseKind",
    "NoiseSpec",
    "OptimalSetting",
    "OptimizeReport",
    "PrintedFamily",
    "ProtocolParams",
    "QuadratureSpec",
    "TeleportResult",
    "apply_noise",
    "avg_fidelity",
    "backend_name",
    "compiled_available",
    "concurrence",
    "gauss_legendre_nodes",
    "haar_average",
    "haar_average_grid",
    "kraus_ops",
    "main",
    "optimize_angles",
    "p_of_time",
    "printed_optimum",
    "printed_sign_rule",
    "run",
    "run_checks",
    "set_backend",
    "sign_regime",
    "symmetry_check_families",
    "trig_coefficients",
]
