import numpy as np
import pytest
import scipy.linalg

from ptsignal.linalg import (
    dagger,
    expm_reference,
    hermitian_eigenvalues,
    partial_trace,
    tensor,
    trace_norm,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def test_dagger():
    a = np.array([[1, 2j], [3, 4]])
    assert np.array_equal(dagger(a), np.array([[1, 3], [-2j, 4]]))


def test_tensor_pauli():
    expected = np.kron(SX, SZ)
    assert np.array_equal(tensor(SX, SZ), expected)
    assert np.array_equal(tensor(SX), SX)
    three = tensor(SX, SY, SZ)
    assert three.shape == (8, 8)
    assert np.array_equal(three, np.kron(SX, np.kron(SY, SZ)))


def test_tensor_empty_raises():
    with pytest.raises(ValueError):
        tensor()


def test_partial_trace_product_state():
    rng = np.random.default_rng(1)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 2)
    a = a / np.trace(a)
    b = b / np.trace(b)
    rho = np.kron(a, b)
    assert np.allclose(partial_trace(rho, [2, 2], {0}), a)
    assert np.allclose(partial_trace(rho, [2, 2], {1}), b)


def test_partial_trace_three_qubits():
    # GHZ-like: tracing Alice out leaves a classical mixture
    th = 0.7
    v = np.zeros(8, dtype=complex)
    v[0] = np.cos(th)
    v[7] = np.sin(th)
    rho = np.outer(v, v.conj())
    bc = partial_trace(rho, [2, 2, 2], {1, 2})
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = np.cos(th) ** 2
    expected[3, 3] = np.sin(th) ** 2
    assert np.allclose(bc, expected)
    a = partial_trace(rho, [2, 2, 2], {0})
    assert np.allclose(a, np.diag([np.cos(th) ** 2, np.sin(th) ** 2]))


def test_partial_trace_keep_order_and_trace():
    rng = np.random.default_rng(2)
    rho = random_hermitian(rng, 8)
    rho = rho / np.trace(rho)
    for keep in ({0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}):
        out = partial_trace(rho, [2, 2, 2], keep)
        assert out.shape == (2 ** len(keep),) * 2
        assert np.isclose(np.trace(out), 1.0)


def test_partial_trace_validation():
    rho = np.eye(4) / 4
    with pytest.raises(ValueError):
        partial_trace(rho, [2, 2], set())
    with pytest.raises(ValueError):
        partial_trace(rho, [2, 2], {2})
    with pytest.raises(ValueError):
        partial_trace(rho, [2, 3], {0})  # dims do not match the matrix


def test_hermitian_eigenvalues_known():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1, 2, 3])
    vals = hermitian_eigenvalues(SX)
    assert np.allclose(vals, [-1, 1])
    assert np.allclose(hermitian_eigenvalues(np.zeros((3, 3))), [0, 0, 0])


def test_hermitian_eigenvalues_degenerate():
    h = np.diag([2.0, 2.0, 2.0, -1.0])
    assert np.allclose(hermitian_eigenvalues(h), [-1, 2, 2, 2])


def test_hermitian_eigenvalues_random_matches_lapack():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = rng.integers(2, 9)
        h = random_hermitian(rng, n)
        ours = hermitian_eigenvalues(h)
        ref = np.linalg.eigvalsh(h)
        scale = max(1.0, np.abs(ref).max())
        assert np.abs(ours - ref).max() <= 1e-12 * scale


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_trace_norm_known():
    assert np.isclose(trace_norm(np.diag([3.0, -4.0])), 7.0)
    # difference of pure states: 2 sqrt(1 - |<a|b>|^2)
    a = np.array([1, 0], dtype=complex)
    b = np.array([np.cos(0.4), np.sin(0.4)], dtype=complex)
    d = np.outer(a, a.conj()) - np.outer(b, b.conj())
    assert np.isclose(trace_norm(d), 2 * np.sin(0.4))


def test_expm_reference_identity_and_nilpotent():
    assert np.allclose(expm_reference(np.zeros((3, 3))), np.eye(3))
    n = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.allclose(expm_reference(n), np.eye(2) + n)


def test_expm_reference_random_matches_scipy():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = rng.integers(2, 7)
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ours = expm_reference(a)
        ref = scipy.linalg.expm(a)
        assert np.abs(ours - ref).max() <= 1e-10 * max(1.0, np.abs(ref).max())


def test_expm_reference_rejects_non_finite():
    with pytest.raises(ValueError):
        expm_reference(np.array([[np.nan, 0.0], [0.0, 0.0]]))
