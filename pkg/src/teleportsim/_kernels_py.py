"""Pure numpy protocol kernels (fallback backend).

For fixed angles, channel kind and Kraus operators the protocol output
is linear in the input density matrix, so each measurement branch j
defines a 4x4 superoperator L_j acting on row-major vec(rho_in):

    vec(U_j Tr_12[(P_j (x) 1) N(rho_in (x) rho_ch) (P_j (x) 1)] U_j^dag)
        = L_j vec(rho_in)

Computing the four L_j once per configuration turns input-state sweeps,
quadrature averages and angle scans into tiny tensor contractions. The
compiled backend (_kernels_cy) implements the same two entry points.
"""

from __future__ import annotations

import math

import numpy as np

CHANNEL_PHI = 0
CHANNEL_PSI = 1

_ID = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_ZX = _Z @ _X

# Bob's corrections per branch, by channel code
_CORR = {
    CHANNEL_PHI: np.stack([_ID, _Z, _X, _ZX]),
    CHANNEL_PSI: np.stack([_X, _ZX, _ID, _Z]),
}


def _bell_matrix(angle: float) -> np.ndarray:
    """Rows are B_1..B_4(angle) in the two-qubit computational basis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, 0.0, s],
                     [s, 0.0, 0.0, -c],
                     [0.0, c, s, 0.0],
                     [0.0, s, -c, 0.0]])


def _channel_vector(theta: float, channel_code: int) -> np.ndarray:
    row = 0 if channel_code == CHANNEL_PHI else 2
    return _bell_matrix(theta)[row]


def superops(theta: float, phi: float, channel_code: int,
             kraus_in: np.ndarray, kraus_alice: np.ndarray,
             kraus_bob: np.ndarray) -> np.ndarray:
    """Branch superoperators, shape (4, 4, 4): lams[j, 2r+c, 2s+t].

    Column 2s+t holds the branch-j output (row-major) for the basis
    input |s><t|. Kraus stacks have shape (n, 2, 2).
    """
    ch = _channel_vector(theta, channel_code)
    rho_ch = np.outer(ch, ch).astype(np.complex128)

    # one 8x8 register per vec-basis input |s><t|, stacked along axis 0
    stack = np.zeros((4, 8, 8), dtype=np.complex128)
    for s in (0, 1):
        for t in (0, 1):
            stack[2 * s + t, 4 * s:4 * s + 4, 4 * t:4 * t + 4] = rho_ch

    eye2 = np.eye(2, dtype=np.complex128)
    eye4 = np.eye(4, dtype=np.complex128)
    for ops, left, right in ((kraus_bob, eye4, None),
                             (kraus_alice, eye2, eye2),
                             (kraus_in, None, eye4)):
        lifted = []
        for op in np.asarray(ops, dtype=np.complex128):
            if left is None:
                lifted.append(np.kron(op, right))
            elif right is None:
                lifted.append(np.kron(left, op))
            else:
                lifted.append(np.kron(left, np.kron(op, right)))
        lifted = np.stack(lifted)
        stack = np.einsum("kij,bjl,kml->bim", lifted, stack, lifted.conj())

    bell = _bell_matrix(phi)
    # contract the measured pair: M[j,b,a,c] = B_j . rho(pair,Bob) . B_j
    pair = stack.reshape(4, 4, 2, 4, 2)
    m = np.einsum("jm,bmanc,jn->jbac", bell, pair, bell)

    corr = _CORR[channel_code]
    out = np.einsum("jra,jbac,jsc->jbrs", corr, m, corr.conj())
    # lams[j, 2r+s, col=b]
    return np.ascontiguousarray(out.reshape(4, 4, 4).transpose(0, 2, 1))


def fbar_nodes(lams: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """Outcome-averaged fidelity for a stack of input densities (n, 2, 2)."""
    l5 = lams.reshape(4, 2, 2, 2, 2)  # [j, r, c, s, t]
    return np.einsum("nrc,jcrst,nst->n", rhos, l5, rhos).real
