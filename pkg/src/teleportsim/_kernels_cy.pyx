# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled protocol kernels; mirrors _kernels_py exactly.

Same contract: superops() returns the four branch superoperators
lams[j, 2r+c, 2s+t] for row-major vec of the input density matrix, and
fbar_nodes() contracts them with a stack of input densities. All loops
run over fixed 8x8 / 2x2 shapes, so everything stays in C.
"""

from libc.math cimport cos, sin

import numpy as np

CHANNEL_PHI = 0
CHANNEL_PSI = 1


cdef void _bell_rows(double angle, double b[4][4]) noexcept:
    cdef double c = cos(angle)
    cdef double s = sin(angle)
    cdef int i, k
    for i in range(4):
        for k in range(4):
            b[i][k] = 0.0
    b[0][0] = c; b[0][3] = s
    b[1][0] = s; b[1][3] = -c
    b[2][1] = c; b[2][2] = s
    b[3][1] = s; b[3][2] = -c


cdef void _corrections(int channel_code, double u[4][2][2]) noexcept:
    # PHI: 1, Z, X, ZX   PSI: X, ZX, 1, Z   with ZX = [[0,1],[-1,0]]
    cdef int j, r, s
    for j in range(4):
        for r in range(2):
            for s in range(2):
                u[j][r][s] = 0.0
    if channel_code == CHANNEL_PHI:
        u[0][0][0] = 1.0; u[0][1][1] = 1.0
        u[1][0][0] = 1.0; u[1][1][1] = -1.0
        u[2][0][1] = 1.0; u[2][1][0] = 1.0
        u[3][0][1] = 1.0; u[3][1][0] = -1.0
    else:
        u[0][0][1] = 1.0; u[0][1][0] = 1.0
        u[1][0][1] = 1.0; u[1][1][0] = -1.0
        u[2][0][0] = 1.0; u[2][1][1] = 1.0
        u[3][0][0] = 1.0; u[3][1][1] = -1.0


cdef void _apply_slot(double complex rho[8][8], double complex[:, :, ::1] ops,
                      int bit) noexcept:
    """rho <- sum_k L_k rho L_k^dag with L_k the op lifted at a bit position."""
    cdef double complex out[8][8]
    cdef double complex acc
    cdef int n_ops = ops.shape[0]
    cdef int k, i, j, m, n, ib, jb, im, jn
    for i in range(8):
        for j in range(8):
            out[i][j] = 0.0
    for k in range(n_ops):
        for i in range(8):
            ib = (i >> bit) & 1
            for j in range(8):
                jb = (j >> bit) & 1
                acc = 0.0
                for m in range(2):
                    im = (i & ~(1 << bit)) | (m << bit)
                    for n in range(2):
                        jn = (j & ~(1 << bit)) | (n << bit)
                        acc = acc + ops[k, ib, m] * rho[im][jn] * ops[k, jb, n].conjugate()
                out[i][j] = out[i][j] + acc
    for i in range(8):
        for j in range(8):
            rho[i][j] = out[i][j]


def superops(double theta, double phi, int channel_code,
             double complex[:, :, ::1] kraus_in,
             double complex[:, :, ::1] kraus_alice,
             double complex[:, :, ::1] kraus_bob):
    """Branch superoperators, shape (4, 4, 4): lams[j, 2r+c, 2s+t]."""
    cdef double bell[4][4]
    cdef double chvec[4]
    cdef double u[4][2][2]
    cdef double complex rho[8][8]
    cdef double complex mt[2][2]
    cdef double complex w[2][2]
    cdef double complex acc
    cdef int s, t, col, i, j, m, n, a, b, r, q

    _bell_rows(phi, bell)
    cdef double brow[4][4]
    _bell_rows(theta, brow)
    cdef int chrow = 0 if channel_code == CHANNEL_PHI else 2
    for i in range(4):
        chvec[i] = brow[chrow][i]
    _corrections(channel_code, u)

    out = np.empty((4, 4, 4), dtype=np.complex128)
    cdef double complex[:, :, ::1] lams = out

    for s in range(2):
        for t in range(2):
            col = 2 * s + t
            for i in range(8):
                for j in range(8):
                    rho[i][j] = 0.0
            # rho_in = |s><t| tensored with the resource state
            for m in range(4):
                for n in range(4):
                    rho[4 * s + m][4 * t + n] = chvec[m] * chvec[n]
            _apply_slot(rho, kraus_bob, 0)
            _apply_slot(rho, kraus_alice, 1)
            _apply_slot(rho, kraus_in, 2)
            for j in range(4):
                # mt[a][b] = B_j . rho(pair, Bob) . B_j
                for a in range(2):
                    for b in range(2):
                        acc = 0.0
                        for m in range(4):
                            if bell[j][m] == 0.0:
                                continue
                            for n in range(4):
                                if bell[j][n] == 0.0:
                                    continue
                                acc = acc + bell[j][m] * rho[2 * m + a][2 * n + b] * bell[j][n]
                        mt[a][b] = acc
                # w = U_j mt U_j^T (corrections are real)
                for r in range(2):
                    for q in range(2):
                        acc = 0.0
                        for a in range(2):
                            for b in range(2):
                                acc = acc + u[j][r][a] * mt[a][b] * u[j][q][b]
                        w[r][q] = acc
                for r in range(2):
                    for q in range(2):
                        lams[j, 2 * r + q, col] = w[r][q]
    return out


def fbar_nodes(lams_in, rhos_in):
    """Outcome-averaged fidelity for a stack of input densities (n, 2, 2)."""
    cdef double complex[:, :, ::1] lams = np.ascontiguousarray(lams_in, dtype=np.complex128)
    cdef double complex[:, :, ::1] rhos = np.ascontiguousarray(rhos_in, dtype=np.complex128)
    cdef Py_ssize_t n_nodes = rhos.shape[0]
    out = np.empty(n_nodes, dtype=np.float64)
    cdef double[::1] res = out
    cdef double complex acc
    cdef Py_ssize_t k
    cdef int j, r, c, s, t
    for k in range(n_nodes):
        acc = 0.0
        for j in range(4):
            for r in range(2):
                for c in range(2):
                    for s in range(2):
                        for t in range(2):
                            acc = acc + rhos[k, r, c] * lams[j, 2 * c + r, 2 * s + t] * rhos[k, s, t]
        res[k] = acc.real
    return out
