import numpy as np
import pytest

from teleportsim.linalg import (
    as_matrix,
    assert_density_matrix,
    dagger,
    is_density_matrix,
    is_hermitian,
    kron,
    matmul,
    partial_trace_12,
    trace,
)

from helpers import random_density, rng


def test_as_matrix_rejects_non_square():
    with pytest.raises(ValueError):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        as_matrix([1.0, 2.0])


def test_matmul_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        matmul(np.eye(2), np.eye(4))


def test_kron_first_factor_most_significant():
    # |1> (x) |0> must land on register index 2 = binary 10
    v1 = np.outer([0, 1], [0, 1])
    v0 = np.outer([1, 0], [1, 0])
    out = kron(v1, v0)
    assert out[2, 2] == 1.0
    assert np.sum(np.abs(out)) == 1.0


def test_dagger_and_trace():
    m = np.array([[1.0, 2.0 + 1j], [0.0, 3.0]])
    assert np.array_equal(dagger(m), m.conj().T)
    assert trace(m) == pytest.approx(4.0)


def test_partial_trace_of_product_returns_third_factor():
    gen = rng(7)
    for _ in range(25):
        a = random_density(gen, 2)
        b = random_density(gen, 2)
        c = random_density(gen, 2)
        full = kron(kron(a, b), c)
        assert np.max(np.abs(partial_trace_12(full) - c)) < 1e-13


def test_partial_trace_shape_check():
    with pytest.raises(ValueError):
        partial_trace_12(np.eye(4))


def test_is_hermitian():
    assert is_hermitian(np.array([[1.0, 1j], [-1j, 2.0]]))
    assert not is_hermitian(np.array([[1.0, 1.0], [0.0, 2.0]]))
    assert not is_hermitian(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_assert_density_matrix_accepts_random_densities():
    gen = rng(11)
    for dim in (2, 4, 8):
        m = random_density(gen, dim)
        assert np.array_equal(assert_density_matrix(m), m)


@pytest.mark.parametrize("bad,message", [
    (np.array([[1.0, 1.0], [0.0, 0.0]]), "Hermitian"),
    (np.eye(2), "trace"),
    (np.diag([1.5, -0.5]), "negative eigenvalue"),
    (np.diag([np.inf, 0.0]), "non-finite"),
])
def test_assert_density_matrix_names_the_violation(bad, message):
    with pytest.raises(ValueError, match=message):
        assert_density_matrix(bad)
    assert not is_density_matrix(bad)
