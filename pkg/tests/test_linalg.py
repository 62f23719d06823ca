import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noonsim.errors import DimensionMismatch, NoConvergence, NonHermitianInput
from noonsim.linalg import frobenius_distance, hermitian_eigenvalues


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (g + g.conj().T)


def test_off_diagonal_pair():
    c = 0.3 + 0.4j
    s = hermitian_eigenvalues([[0, c], [np.conj(c), 0]])
    np.testing.assert_allclose(s.eigenvalues, [-0.5, 0.5], atol=1e-15)


def test_identity():
    s = hermitian_eigenvalues(np.eye(4))
    assert list(s.eigenvalues) == [1.0, 1.0, 1.0, 1.0]
    assert s.residual == 0.0


def test_tridiagonal_3x3_closed_form():
    # characteristic roots 2 - sqrt(2), 2, 2 + sqrt(2), solved by hand
    m = np.array([[2, 1j, 0], [-1j, 2, 1j], [0, -1j, 2]])
    s = hermitian_eigenvalues(m)
    expected = [2 - math.sqrt(2), 2.0, 2 + math.sqrt(2)]
    np.testing.assert_allclose(s.eigenvalues, expected, atol=1e-14)


def test_real_diagonal_is_sorted_diagonal():
    d = np.array([3.5, -1.25, 0.0, 2.0, -7.0])
    s = hermitian_eigenvalues(np.diag(d))
    assert list(s.eigenvalues) == sorted(d)


def test_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        hermitian_eigenvalues([[1, 2], [0, 1]])


def test_sweep_cap():
    rng = np.random.default_rng(1)
    with pytest.raises(NoConvergence):
        hermitian_eigenvalues(random_hermitian(rng, 6), max_sweeps=1)


@pytest.mark.parametrize("n", [1, 2, 5, 16, 40, 81])
def test_trace_and_residual(rng, n):
    m = random_hermitian(rng, n)
    s = hermitian_eigenvalues(m)
    assert len(s) == n
    assert abs(s.eigenvalues.sum() - np.trace(m).real) <= 1e-10 * n
    assert s.residual <= 1e-14 * np.linalg.norm(m)
    assert np.all(np.diff(s.eigenvalues) >= 0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_rayleigh_quotient_sandwich(n, seed):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, n)
    s = hermitian_eigenvalues(m)
    for _ in range(5):
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        x /= np.linalg.norm(x)
        rq = (x.conj() @ m @ x).real
        assert s.eigenvalues[0] - 1e-10 <= rq <= s.eigenvalues[-1] + 1e-10


def test_frobenius_distance():
    eye = np.eye(2)
    assert frobenius_distance(eye, eye) == 0.0
    assert frobenius_distance(np.zeros((2, 2)), eye) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert frobenius_distance([[1, 0], [0, 0]], [[0, 0], [0, 1]]) == pytest.approx(math.sqrt(2))
    with pytest.raises(DimensionMismatch):
        frobenius_distance(np.eye(2), np.eye(3))
