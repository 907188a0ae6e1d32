"""Pauli-basis algebra for 2x2 density matrices.

Conventions used throughout the package:

* basis order is (sigma_1, sigma_2, sigma_3, I),
* matrix index 1 is the excited state ``|e>`` and index 2 the ground state
  ``|g>``, so a Bloch z component of +1 means a fully excited system,
* a "Bloch 4-vector" is the real vector (<sigma_1>, <sigma_2>, <sigma_3>, tr rho)
  of a possibly non-normalized density matrix,
* a "normalized Bloch vector" is the 3-vector (x, y, z) = (s1, s2, s3) / tr.

All functions are pure and operate on plain numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericsError

__all__ = [
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "IDENTITY2",
    "PAULI_BASIS",
    "HERMITICITY_TOL",
    "TRACE_FLOOR",
    "decompose",
    "reconstruct",
    "normalize",
    "bloch_norm_sq",
]

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

#: Basis order fixed package-wide: (sigma_1, sigma_2, sigma_3, I).
PAULI_BASIS = (SIGMA1, SIGMA2, SIGMA3, IDENTITY2)

#: Tolerance for Hermiticity checks on user-supplied matrices.
HERMITICITY_TOL = 1e-9

#: Below this trace the state is considered collapsed and cannot be normalized.
TRACE_FLOOR = 1e-300


def decompose(rho: np.ndarray) -> np.ndarray:
    """Decompose a Hermitian 2x2 matrix into its Bloch 4-vector.

    Parameters
    ----------
    rho : (2, 2) array_like
        Density matrix (not necessarily unit trace).  Must be Hermitian
        within ``HERMITICITY_TOL``.

    Returns
    -------
    (4,) ndarray of float
        ``(s1, s2, s3, tr)`` with ``s_i = tr(sigma_i rho)`` and ``tr = tr(rho)``.

    Raises
    ------
    ValueError
        If ``rho`` is not Hermitian within tolerance ("hermiticity violated").
        Input errors must surface; re-symmetrization is never applied here.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ValueError("hermiticity violated")
    s1 = rho[0, 1] + rho[1, 0]
    s2 = 1.0j * (rho[0, 1] - rho[1, 0])
    s3 = rho[0, 0] - rho[1, 1]
    tr = rho[0, 0] + rho[1, 1]
    return np.array([s1.real, s2.real, s3.real, tr.real])


def reconstruct(b: np.ndarray) -> np.ndarray:
    """Rebuild the density matrix from a Bloch 4-vector.

    Exact inverse of :func:`decompose`:
    ``rho = (tr * I + s1 sigma_1 + s2 sigma_2 + s3 sigma_3) / 2``.

    Parameters
    ----------
    b : (4,) array_like
        ``(s1, s2, s3, tr)``.

    Returns
    -------
    (2, 2) ndarray of complex
    """
    s1, s2, s3, tr = np.asarray(b, dtype=float)
    return 0.5 * np.array(
        [[tr + s3, s1 - 1.0j * s2], [s1 + 1.0j * s2, tr - s3]], dtype=complex
    )


def normalize(b: np.ndarray) -> np.ndarray:
    """Normalized Bloch vector ``(x, y, z) = (s1, s2, s3) / tr``.

    Raises
    ------
    NumericsError
        If the trace is at or below ``TRACE_FLOOR`` ("trace collapse").
    """
    b = np.asarray(b, dtype=float)
    tr = b[3]
    if tr <= TRACE_FLOOR:
        raise NumericsError("trace collapse")
    return b[:3] / tr


def bloch_norm_sq(nb: np.ndarray) -> float:
    """Squared length x^2 + y^2 + z^2 of a normalized Bloch vector.

    Equals ``1 - 4 det(rho / tr rho)`` for the corresponding state: 1 for pure
    states, 0 for the maximally mixed state.
    """
    nb = np.asarray(nb, dtype=float)
    return float(nb @ nb)
