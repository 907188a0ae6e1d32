"""Model parameters and every right-hand side of the hybrid dynamics.

The model couples a resonantly driven two-level system to its environment in
two ways at once: a Lindblad dissipator (spontaneous emission rate ``gamma0``,
thermal occupation ``N``) and an anti-Hermitian part of the Hamiltonian with
free rates ``alpha`` and ``gamma_cap``, plus an imaginary gauge shift
``gauge_t`` that rescales the raw trace without touching any observable.

Everything downstream works in time rescaled by the Rabi frequency,
``tau = Omega t``, with the dimensionless rates

    g0t = gamma0 / (4 Omega),   at = alpha / Omega,
    gt  = gamma_cap / Omega,    tt = gauge_t / Omega.

Three equivalent right-hand sides are provided:

* :func:`master_rhs` - the density-matrix equation d(rho)/d(tau) in the
  interaction picture, assembled term by term (supports thermal N > 0);
* :func:`build_m` - the real 4x4 matrix M acting on the Bloch 4-vector
  (zero temperature only; this is the linear, unnormalized form);
* :func:`normalized_rhs` - the nonlinear equation for the normalized Bloch
  vector, which is exactly gauge invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .pauli import PAULI_BASIS, SIGMA1, SIGMA3, decompose

__all__ = [
    "PhysicalParams",
    "ReducedParams",
    "reduce",
    "build_m",
    "master_rhs",
    "normalized_rhs",
    "bloch_generator",
]

_SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |e><g|
_SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensionful model parameters.

    Attributes
    ----------
    omega : float
        Rabi frequency Omega > 0 (rad/time); sets the time scale.
    omega0 : float
        Transition frequency (rad/time); only enters picture transformations.
    gamma0 : float
        Spontaneous emission rate, >= 0 (1/time).
    n_thermal : float
        Planck occupation at the transition frequency, >= 0.
    alpha : float
        Anti-Hermitian drive rate (1/time); real, any sign.
    gamma_cap : float
        Anti-Hermitian population-imbalance rate (1/time); real, any sign.
    gauge_t : float
        Imaginary gauge shift (1/time); drops out of all observables.
    """

    omega: float
    omega0: float = 0.0
    gamma0: float = 0.0
    n_thermal: float = 0.0
    alpha: float = 0.0
    gamma_cap: float = 0.0
    gauge_t: float = 0.0


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless rates in units of the Rabi frequency (see module docs)."""

    g0t: float = 0.0
    at: float = 0.0
    gt: float = 0.0
    tt: float = 0.0
    n_thermal: float = 0.0

    def __post_init__(self) -> None:
        for name in ("g0t", "at", "gt", "tt", "n_thermal"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.g0t < 0:
            raise ValueError("g0t must be >= 0")
        if self.n_thermal < 0:
            raise ValueError("n_thermal must be >= 0")


def reduce(p: PhysicalParams) -> ReducedParams:
    """Rescale dimensionful parameters by the Rabi frequency.

    Raises
    ------
    ValueError
        If ``p.omega <= 0`` ("Rabi frequency must be positive").
    """
    if p.omega <= 0:
        raise ValueError("Rabi frequency must be positive")
    return ReducedParams(
        g0t=p.gamma0 / (4.0 * p.omega),
        at=p.alpha / p.omega,
        gt=p.gamma_cap / p.omega,
        tt=p.gauge_t / p.omega,
        n_thermal=p.n_thermal,
    )


def build_m(rp: ReducedParams) -> np.ndarray:
    """The real 4x4 generator of the unnormalized Bloch 4-vector.

    Acts on ``(s1, s2, s3, tr)``; rows in the same order.  Valid only at zero
    temperature (the finite-N relation between the vector-level damping rate
    and ``gamma0`` is not fixed by the model, so N > 0 is numeric-only via
    :func:`master_rhs`).

    Raises
    ------
    DomainError
        If ``rp.n_thermal != 0`` ("analytic matrix valid only at N=0").
    """
    if rp.n_thermal != 0:
        raise DomainError("analytic matrix valid only at N=0")
    g, a, c, t = rp.g0t, rp.at, rp.gt, rp.tt
    m = np.array(
        [
            [-2.0 * g, 0.0, 0.0, -a],
            [0.0, -2.0 * g, 1.0, 0.0],
            [0.0, -1.0, -4.0 * g, c - 4.0 * g],
            [-a, 0.0, c, 0.0],
        ]
    )
    if t != 0.0:
        m -= t * np.eye(4)
    return m


def master_rhs(rho: np.ndarray, rp: ReducedParams) -> np.ndarray:
    """d(rho)/d(tau) of the hybrid master equation in the interaction picture.

    Five terms, kept separate so each can be unit-tested in isolation::

        (i/2) [sigma_1, rho]                     resonant drive
        -(at/2) {sigma_1, rho}                   anti-Hermitian drive
        4 g0t (N+1) D[sigma_-] rho               emission (Lindblad)
        4 g0t N     D[sigma_+] rho               absorption (Lindblad)
        (gt/2) {sigma_3, rho} - tt rho           imbalance rate + gauge shift

    with ``D[L] rho = L rho L^dag - {L^dag L, rho}/2``.  The output is exactly
    Hermitian for Hermitian input (each term is assembled conjugate-symmetric).

    Parameters
    ----------
    rho : (2, 2) array_like, Hermitian
    rp : ReducedParams

    Returns
    -------
    (2, 2) ndarray of complex
    """
    rho = np.asarray(rho, dtype=complex)
    drive = 0.5j * (SIGMA1 @ rho - rho @ SIGMA1)
    ah_drive = -0.5 * rp.at * (SIGMA1 @ rho + rho @ SIGMA1)
    emission = 4.0 * rp.g0t * (rp.n_thermal + 1.0) * _dissipator(_SIGMA_MINUS, rho)
    absorption = 4.0 * rp.g0t * rp.n_thermal * _dissipator(_SIGMA_PLUS, rho)
    imbalance = 0.5 * rp.gt * (SIGMA3 @ rho + rho @ SIGMA3)
    gauge = -rp.tt * rho
    return drive + ah_drive + emission + absorption + imbalance + gauge


def _dissipator(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Lindblad dissipator L rho L^dag - {L^dag L, rho}/2 for one jump operator."""
    ldag = jump.conj().T
    ldl = ldag @ jump
    return jump @ rho @ ldag - 0.5 * (ldl @ rho + rho @ ldl)


def normalized_rhs(nb: np.ndarray, rp: ReducedParams) -> np.ndarray:
    """d(x, y, z)/d(tau) for the normalized Bloch vector.

    The nonlinear form: with ``A`` the upper-left 3x3 block of the gauge-free
    generator, ``b = (-at, 0, gt - 4 g0t)`` its trace-coupling column and
    ``F = at*x - gt*z`` the instantaneous trace rate, the derivative is
    ``(A + F I) nb + b``.  The gauge parameter ``tt`` cancels identically.

    Raises
    ------
    DomainError
        If ``rp.n_thermal != 0`` (analytic vector path is zero-temperature).
    """
    nb = np.asarray(nb, dtype=float)
    m = build_m(ReducedParams(rp.g0t, rp.at, rp.gt, 0.0, rp.n_thermal))
    f = rp.at * nb[0] - rp.gt * nb[2]
    return (m[:3, :3] + f * np.eye(3)) @ nb + m[:3, 3]


def bloch_generator(rp: ReducedParams) -> np.ndarray:
    """Real 4x4 generator of :func:`master_rhs` in the Bloch representation.

    Column j is ``decompose(master_rhs(reconstruct(e_j), rp))`` for the basis
    vectors e_j of (s1, s2, s3, tr) space, i.e. the matrix through which
    ``master_rhs`` acts on Bloch 4-vectors.  Unlike :func:`build_m` this is
    valid at any thermal occupation; at N=0 the two agree to round-off.
    """
    cols = []
    for basis_matrix in PAULI_BASIS:
        # decompose(sigma_i) = 2 e_i, so halve to feed unit basis vectors.
        cols.append(decompose(master_rhs(0.5 * basis_matrix, rp)))
    return np.array(cols).T
