"""Pauli-basis algebra: decomposition, reconstruction, normalization, purity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twolevel.errors import NumericsError
from twolevel.pauli import (
    IDENTITY2,
    PAULI_BASIS,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    bloch_norm_sq,
    decompose,
    normalize,
    reconstruct,
)

finite_reals = st.floats(
    min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False
)


def random_hermitian(values):
    """Build a Hermitian 2x2 matrix from six real degrees of freedom."""
    a, d, re, im = values[:4]
    return np.array([[a, re + 1j * im], [re - 1j * im, d]], dtype=complex)


def test_basis_matrices():
    assert np.array_equal(SIGMA1, [[0, 1], [1, 0]])
    assert np.array_equal(SIGMA2, [[0, -1j], [1j, 0]])
    assert np.array_equal(SIGMA3, [[1, 0], [0, -1]])
    assert np.array_equal(IDENTITY2, np.eye(2))
    assert len(PAULI_BASIS) == 4


def test_decompose_excited_projector():
    assert np.allclose(decompose([[1, 0], [0, 0]]), [0, 0, 1, 1], atol=1e-15)


def test_decompose_sigma1_eigenstate():
    rho = [[0.5, 0.5], [0.5, 0.5]]
    assert np.allclose(decompose(rho), [1, 0, 0, 1], atol=1e-15)


def test_decompose_general_state():
    rho = [[0.6, 0.1 - 0.2j], [0.1 + 0.2j, 0.4]]
    assert np.allclose(decompose(rho), [0.2, 0.4, 0.2, 1.0], atol=1e-15)


def test_decompose_rejects_non_hermitian():
    with pytest.raises(ValueError, match="hermiticity violated"):
        decompose([[0.0, 1.0], [0.0, 0.0]])


def test_decompose_rejects_wrong_shape():
    with pytest.raises(ValueError, match="2x2"):
        decompose(np.eye(3))


def test_reconstruct_examples():
    assert np.allclose(reconstruct([0, 0, 1, 1]), [[1, 0], [0, 0]])
    assert np.allclose(reconstruct([0, 0, 0, 1]), [[0.5, 0], [0, 0.5]])
    assert np.allclose(
        reconstruct([0.2, 0.4, 0.2, 1.0]),
        [[0.6, 0.1 - 0.2j], [0.1 + 0.2j, 0.4]],
    )


def test_normalize_examples():
    assert np.allclose(normalize([0.2, 0.4, 0.2, 2.0]), [0.1, 0.2, 0.1])
    assert np.allclose(normalize([0, 0, 1, 1]), [0, 0, 1])
    assert np.allclose(
        normalize([0, -2.0 / 3.0, -2.0 / 3.0, 1]), [0, -2.0 / 3.0, -2.0 / 3.0]
    )


def test_normalize_trace_collapse():
    with pytest.raises(NumericsError, match="trace collapse"):
        normalize([0.0, 0.0, 0.0, 0.0])
    with pytest.raises(NumericsError, match="trace collapse"):
        normalize([0.1, 0.0, 0.0, -1.0])


def test_bloch_norm_sq_examples():
    assert bloch_norm_sq([0, 0, 1]) == 1.0
    assert bloch_norm_sq([0, 0, 0]) == 0.0
    assert bloch_norm_sq([0.6, 0, 0.8]) == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite_reals, min_size=4, max_size=4))
def test_round_trip(values):
    rho = random_hermitian(values)
    assert np.allclose(reconstruct(decompose(rho)), rho, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite_reals, min_size=4, max_size=4))
def test_purity_identity(values):
    """bloch_norm_sq equals 1 - 4 det of the trace-normalized matrix."""
    rho = random_hermitian(values)
    tr = rho[0, 0].real + rho[1, 1].real
    if abs(tr) < 1e-6:
        return
    rho = rho / tr if tr > 0 else -rho / -tr
    b = decompose(rho)
    if b[3] <= 0:
        return
    expected = 1.0 - 4.0 * np.linalg.det(rho / b[3]).real
    assert bloch_norm_sq(normalize(b)) == pytest.approx(expected, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(finite_reals, min_size=4, max_size=4),
    st.lists(finite_reals, min_size=4, max_size=4),
    finite_reals,
    finite_reals,
)
def test_decompose_linear(values1, values2, a, b):
    rho1 = random_hermitian(values1)
    rho2 = random_hermitian(values2)
    lhs = decompose(a * rho1 + b * rho2)
    rhs = a * decompose(rho1) + b * decompose(rho2)
    assert np.allclose(lhs, rhs, atol=1e-9)
