import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cpdiagram.linalg import (SIGMA_X, SIGMA_Y, SIGMA_Z, dagger, hermitian_eigen, kron,
                              multiply, sqrt_psd)

from oracles import eigvals_desc

I2 = np.eye(2)
I4 = np.eye(4)


def test_multiply_identity():
    m = np.arange(16).reshape(4, 4) + 1j
    assert np.array_equal(multiply(I4, m), m)


def test_multiply_pauli_algebra():
    yy = kron(SIGMA_Y, SIGMA_Y)
    assert np.allclose(multiply(yy, yy), I4, atol=0)
    assert np.allclose(multiply(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z, atol=0)


def test_multiply_dimension_mismatch():
    with pytest.raises(ValueError):
        multiply(I2, I4)


def test_kron_examples():
    assert np.array_equal(kron(I2, I2), I4)
    assert np.array_equal(kron(SIGMA_Z, I2), np.diag([1, 1, -1, -1]))
    anti = np.fliplr(np.diag([-1, 1, 1, -1]))
    assert np.array_equal(kron(SIGMA_Y, SIGMA_Y), anti)


def test_kron_matches_numpy_and_rejects_4x4():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert np.allclose(kron(a, b), np.kron(a, b), atol=1e-15)
    with pytest.raises(ValueError):
        kron(I4, I2)


def test_kron_bilinear():
    rng = np.random.default_rng(1)
    a, b, c = (rng.normal(size=(2, 2)) for _ in range(3))
    assert np.allclose(kron(a + b, c), kron(a, c) + kron(b, c), atol=1e-14)


def test_eigen_diagonal():
    evals, _ = hermitian_eigen(np.diag([1.0, 2, 3, 4]))
    assert np.array_equal(evals, [4, 3, 2, 1])


def test_eigen_singlet_projector():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    evals, vecs = hermitian_eigen(np.outer(psi, psi))
    assert np.allclose(evals, [1, 0, 0, 0], atol=1e-15)
    assert abs(abs(vecs[:, 0] @ psi) - 1) < 1e-14


def test_eigen_bell_diagonal_omega():
    # lam = (1/2, 1/2, 1/2): A = 1/8, B = 3/8, C = -1/4, D = 0
    A, B, C, D = 1 / 8, 3 / 8, -1 / 4, 0.0
    omega = np.array([[A, 0, 0, D], [0, B, C, 0], [0, C, B, 0], [D, 0, 0, A]])
    evals, _ = hermitian_eigen(omega)
    assert np.allclose(evals, [5 / 8, 1 / 8, 1 / 8, 1 / 8], atol=1e-15)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def _random_hermitian(seed, n=4):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + dagger(x)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_eigen_reconstruction(seed):
    m = _random_hermitian(seed)
    evals, vecs = hermitian_eigen(m)
    assert np.all(np.diff(evals) <= 0)
    assert np.max(np.abs((vecs * evals) @ dagger(vecs) - m)) <= 1e-9
    assert np.max(np.abs(dagger(vecs) @ vecs - I4)) <= 1e-10
    assert np.max(np.abs(m @ vecs - vecs * evals)) <= 1e-9
    assert np.allclose(evals, eigvals_desc(m), atol=1e-12)


def test_eigen_batched_matches_single():
    stack = np.array([_random_hermitian(s) for s in range(50)])
    evals, vecs = hermitian_eigen(stack)
    for k in range(50):
        single, _ = hermitian_eigen(stack[k])
        assert np.allclose(single, evals[k], atol=1e-13)
    assert evals.shape == (50, 4) and vecs.shape == (50, 4, 4)


def test_eigen_degenerate_and_2x2():
    evals, vecs = hermitian_eigen(np.eye(4))
    assert np.array_equal(evals, np.ones(4))
    evals, _ = hermitian_eigen(SIGMA_Y)
    assert np.allclose(evals, [1, -1], atol=1e-15)


def test_sqrt_psd_examples():
    assert np.allclose(sqrt_psd(I4), I4, atol=1e-15)
    assert np.allclose(sqrt_psd(np.diag([4.0, 1, 0, 0])), np.diag([2.0, 1, 0, 0]), atol=1e-15)
    assert np.allclose(sqrt_psd(I4 / 4), I4 / 2, atol=1e-15)


def test_sqrt_psd_rejects_negative_and_clamps_noise():
    with pytest.raises(ValueError, match="positive semidefinite"):
        sqrt_psd(np.diag([1.0, -1e-6, 0, 0]))
    root = sqrt_psd(np.diag([1.0, -1e-12, 0, 0]))
    assert np.allclose(root, np.diag([1.0, 0, 0, 0]), atol=0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_sqrt_psd_squares_back(seed, rank):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = w @ dagger(w)
    m /= np.trace(m).real
    root = sqrt_psd(m)
    assert np.max(np.abs(root - dagger(root))) <= 1e-12
    assert np.min(np.linalg.eigvalsh(root)) >= -1e-12
    assert np.max(np.abs(root @ root - m)) <= 1e-5  # sqrt(tol)
