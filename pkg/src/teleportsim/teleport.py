"""One full protocol run in the density-matrix picture.

Pipeline for input state rho_in and resource rho_ch(theta):

    rho   = rho_in (x) rho_ch                  8x8 register
    rho'  = composite noise applied to rho
    for each Bell outcome j (projector P_j(phi) on input+Alice):
        W_j = U_j Tr_12[(P_j (x) 1) rho' (P_j (x) 1)] U_j^dag
        Q_j = Tr W_j            outcome probability
        F_j = Tr[rho_in W_j] / Q_j     branch fidelity

    Fbar = sum_j Q_j F_j = sum_j Tr[rho_in W_j]

The last form needs no division, so branches with Q_j ~ 0 contribute
nothing instead of 0/0; such branches are reported with bob_state and
fidelity set to None.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import kron, partial_trace_12
from .noise import NO_NOISE, NoiseConfig, apply_noise
from .states import (
    IDENTITY_2,
    InputQubit,
    ProtocolParams,
    channel_density,
    correction_unitary,
    input_density,
    projector,
)

DEGENERATE_PROB = 1e-12


@dataclass(frozen=True)
class BranchOutcome:
    j: int
    probability: float
    bob_state: np.ndarray | None
    fidelity: float | None


@dataclass(frozen=True)
class TeleportResult:
    branches: tuple[BranchOutcome, ...]
    avg_fidelity: float


def run(q: InputQubit, params: ProtocolParams,
        config: NoiseConfig = NO_NOISE) -> TeleportResult:
    rho_in = input_density(q)
    rho = kron(rho_in, channel_density(params))
    rho = apply_noise(rho, config)

    branches = []
    fbar = 0.0
    for j in (1, 2, 3, 4):
        p_full = kron(projector(j, params.phi), IDENTITY_2)
        sub = partial_trace_12(p_full @ rho @ p_full)
        u = correction_unitary(j, params.channel)
        w = u @ sub @ u.conj().T
        prob = float(np.trace(w).real)
        overlap = float(np.trace(rho_in @ w).real)
        fbar += overlap
        if prob < DEGENERATE_PROB:
            branches.append(BranchOutcome(j, prob, None, None))
        else:
            branches.append(BranchOutcome(j, prob, w / prob, overlap / prob))
    return TeleportResult(tuple(branches), fbar)


def avg_fidelity(q: InputQubit, params: ProtocolParams,
                 config: NoiseConfig = NO_NOISE) -> float:
    """Outcome-averaged fidelity of one run."""
    return run(q, params, config).avg_fidelity
