"""Dense complex linear algebra for 2-, 4- and 8-dimensional operators.

Matrices are numpy ``complex128`` arrays throughout. The three-qubit
register orders its tensor factors as (input, Alice, Bob), input qubit
most significant, so register index ``i`` spells the bit string
``q_in q_alice q_bob``.
"""

from __future__ import annotations

import numpy as np

# shared validation tolerances for density-matrix checks
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    """Matrix product of two equally sized square matrices."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product with a's indices most significant."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def partial_trace_12(a) -> np.ndarray:
    """Trace out the input and Alice qubits of an 8x8 register matrix.

    Returns Bob's 2x2 reduced matrix: out[a,b] = sum_k M[2k+a, 2k+b].
    """
    m = as_matrix(a)
    if m.shape != (8, 8):
        raise ValueError(f"partial_trace_12 needs an 8x8 matrix, got {m.shape}")
    return np.einsum("kakb->ab", m.reshape(4, 2, 4, 2))


def is_hermitian(a, tol: float = TOL_HERM) -> bool:
    m = as_matrix(a)
    return bool(np.all(np.isfinite(m.view(np.float64))) and np.max(np.abs(m - m.conj().T)) <= tol)


def assert_density_matrix(a, tol_herm: float = TOL_HERM,
                          tol_trace: float = TOL_TRACE,
                          tol_psd: float = TOL_PSD) -> np.ndarray:
    """Validate Hermiticity, unit trace and positive semidefiniteness.

    Returns the coerced matrix; raises ValueError naming the violated
    property otherwise.
    """
    m = as_matrix(a)
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("density matrix contains non-finite entries")
    if np.max(np.abs(m - m.conj().T)) > tol_herm:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1.0) > tol_trace:
        raise ValueError(f"density matrix trace is {np.trace(m):.6g}, expected 1")
    if np.min(np.linalg.eigvalsh(m)) < -tol_psd:
        raise ValueError("density matrix has a negative eigenvalue")
    return m


def is_density_matrix(a, tol_herm: float = TOL_HERM,
                      tol_trace: float = TOL_TRACE,
                      tol_psd: float = TOL_PSD) -> bool:
    try:
        assert_density_matrix(a, tol_herm, tol_trace, tol_psd)
    except ValueError:
        return False
    return True
