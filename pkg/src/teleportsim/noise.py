"""Single-qubit Kraus channels and their action on the protocol register.

Each register slot (1 = input, 2 = Alice's channel half, 3 = Bob's) may
carry one channel; the composite map applies Bob's first, then Alice's,
then the input's. All maps are trace preserving for p in [0, 1].

Kraus operators, with q = 1 - p:

    bit flip            sqrt(q) 1,  sqrt(p) X
    phase flip          sqrt(q) 1,  sqrt(p) Z
    depolarizing        sqrt(1-3p/4) 1,  sqrt(p/4) X, Y, Z
    amplitude damping   [[1, 0], [0, sqrt(q)]],  [[0, sqrt(p)], [0, 0]]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import assert_density_matrix, kron
from .states import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z


class NoiseKind(Enum):
    NONE = "none"
    BIT_FLIP = "bf"
    PHASE_FLIP = "phf"
    DEPOLARIZING = "d"
    AMPLITUDE_DAMPING = "ad"


@dataclass(frozen=True)
class NoiseSpec:
    """One channel on one slot; kind NONE forces p = 0."""

    kind: NoiseKind = NoiseKind.NONE
    p: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0) or not math.isfinite(self.p):
            raise ValueError(f"noise probability must lie in [0, 1], got {self.p}")
        if self.kind is NoiseKind.NONE:
            object.__setattr__(self, "p", 0.0)


NOISELESS = NoiseSpec()


@dataclass(frozen=True)
class NoiseConfig:
    """Noise assignment for the three register slots."""

    input: NoiseSpec = NOISELESS
    alice: NoiseSpec = NOISELESS
    bob: NoiseSpec = NOISELESS


NO_NOISE = NoiseConfig()


def kraus_ops(spec: NoiseSpec) -> list[np.ndarray]:
    p = spec.p
    q = 1.0 - p
    if spec.kind is NoiseKind.NONE:
        return [IDENTITY_2.copy()]
    if spec.kind is NoiseKind.BIT_FLIP:
        return [math.sqrt(q) * IDENTITY_2, math.sqrt(p) * SIGMA_X]
    if spec.kind is NoiseKind.PHASE_FLIP:
        return [math.sqrt(q) * IDENTITY_2, math.sqrt(p) * SIGMA_Z]
    if spec.kind is NoiseKind.DEPOLARIZING:
        return [math.sqrt(1.0 - 0.75 * p) * IDENTITY_2,
                math.sqrt(0.25 * p) * SIGMA_X,
                math.sqrt(0.25 * p) * SIGMA_Y,
                math.sqrt(0.25 * p) * SIGMA_Z]
    if spec.kind is NoiseKind.AMPLITUDE_DAMPING:
        return [np.array([[1.0, 0.0], [0.0, math.sqrt(q)]], dtype=np.complex128),
                np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=np.complex128)]
    raise ValueError(f"unknown noise kind: {spec.kind}")


def check_trace_preserving(ops, tol: float = 1e-12) -> bool:
    """True when sum_k K_k^dag K_k = 1."""
    acc = sum(op.conj().T @ op for op in ops)
    return bool(np.max(np.abs(acc - np.eye(acc.shape[0]))) <= tol)


def lift(op, slot: int) -> np.ndarray:
    """Embed a 2x2 operator into the 8-dimensional register at a slot."""
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != (2, 2):
        raise ValueError(f"lift expects a 2x2 operator, got {op.shape}")
    eye4 = np.eye(4, dtype=np.complex128)
    if slot == 1:
        return kron(op, eye4)
    if slot == 2:
        return kron(IDENTITY_2, kron(op, IDENTITY_2))
    if slot == 3:
        return kron(eye4, op)
    raise ValueError(f"slot must be 1, 2 or 3, got {slot}")


def _apply_slot(rho: np.ndarray, spec: NoiseSpec, slot: int) -> np.ndarray:
    if spec.kind is NoiseKind.NONE:
        return rho
    out = np.zeros_like(rho)
    for op in kraus_ops(spec):
        lifted = lift(op, slot)
        out += lifted @ rho @ lifted.conj().T
    return out


def apply_noise(rho, config: NoiseConfig) -> np.ndarray:
    """Composite channel on a valid 8x8 register density matrix."""
    rho = assert_density_matrix(rho)
    if rho.shape != (8, 8):
        raise ValueError(f"apply_noise needs the 8x8 register, got {rho.shape}")
    rho = _apply_slot(rho, config.bob, 3)
    rho = _apply_slot(rho, config.alice, 2)
    rho = _apply_slot(rho, config.input, 1)
    return rho
