"""Input qubits, the generalized Bell family, resource channels, corrections.

The input qubit a|0> + b|1> is parameterized by prob0 = |a|^2 and the
relative phase c of b, so its density matrix is

    [[ prob0,                sqrt(prob0(1-prob0)) e^{-ic} ],
     [ sqrt(prob0(1-prob0)) e^{+ic},  1-prob0             ]]

The partially entangled measurement/channel family, indexed j = 1..4:

    B1 = cos(x)|00> + sin(x)|11>      B2 = sin(x)|00> - cos(x)|11>
    B3 = cos(x)|01> + sin(x)|10>      B4 = sin(x)|01> - cos(x)|10>

A PHI channel shares B1(theta), a PSI channel shares B3(theta); Alice
measures in the B_j(phi) basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_ZX = SIGMA_Z @ SIGMA_X  # [[0, 1], [-1, 0]]


class ChannelKind(Enum):
    """Which Bell family member carries the entanglement resource."""

    PHI = "phi"
    PSI = "psi"


@dataclass(frozen=True)
class InputQubit:
    """State to teleport: prob0 in [0, 1], phase canonicalized to [0, 2pi)."""

    prob0: float
    phase: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.prob0 <= 1.0) or not math.isfinite(self.prob0):
            raise ValueError(f"prob0 must lie in [0, 1], got {self.prob0}")
        if not math.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase}")
        object.__setattr__(self, "phase", self.phase % TWO_PI)


@dataclass(frozen=True)
class ProtocolParams:
    """Protocol angles in radians; arbitrary reals are accepted as-is."""

    theta: float
    phi: float
    channel: ChannelKind = ChannelKind.PHI


def input_density(q: InputQubit) -> np.ndarray:
    off = math.sqrt(q.prob0 * (1.0 - q.prob0))
    e = complex(math.cos(q.phase), math.sin(q.phase))
    return np.array([[q.prob0, off * e.conjugate()],
                     [off * e, 1.0 - q.prob0]], dtype=np.complex128)


def bell_vector(j: int, angle: float) -> np.ndarray:
    """Column vector of B_j(angle) in the |00>,|01>,|10>,|11> basis."""
    c, s = math.cos(angle), math.sin(angle)
    if j == 1:
        v = (c, 0.0, 0.0, s)
    elif j == 2:
        v = (s, 0.0, 0.0, -c)
    elif j == 3:
        v = (0.0, c, s, 0.0)
    elif j == 4:
        v = (0.0, s, -c, 0.0)
    else:
        raise ValueError(f"Bell index must be 1..4, got {j}")
    return np.array(v, dtype=np.complex128)


def projector(j: int, phi: float) -> np.ndarray:
    """Rank-1 projector |B_j(phi)><B_j(phi)| on the measured qubit pair."""
    v = bell_vector(j, phi)
    return np.outer(v, v.conj())


def channel_density(params: ProtocolParams) -> np.ndarray:
    """Density matrix of the shared two-qubit resource state."""
    j = 1 if params.channel is ChannelKind.PHI else 3
    v = bell_vector(j, params.theta)
    return np.outer(v, v.conj())


_CORRECTIONS = {
    ChannelKind.PHI: (IDENTITY_2, SIGMA_Z, SIGMA_X, SIGMA_ZX),
    ChannelKind.PSI: (SIGMA_X, SIGMA_ZX, IDENTITY_2, SIGMA_Z),
}


def correction_unitary(j: int, channel: ChannelKind) -> np.ndarray:
    """Bob's recovery operation for measurement outcome j."""
    if j not in (1, 2, 3, 4):
        raise ValueError(f"Bell index must be 1..4, got {j}")
    return _CORRECTIONS[channel][j - 1].copy()


def concurrence(theta: float) -> float:
    """Entanglement of the resource state: |sin(2 theta)|."""
    return abs(math.sin(2.0 * theta))
