"""Closed-form solutions of the 4x4 Bloch system, branch by branch.

Three parameter regimes admit explicit solutions:

* **Damped-rotation branch** (``at = gt = 0``): damped Rabi rotation with
  frequency ``kappa = sqrt(1 - g0t^2)`` and a trace that is exactly conserved.
* **Trace-non-conserving branch** (``g0t = 0``): hyperbolic/trigonometric
  mixture controlled by the eigenvalue pair ``lambda_2`` (always imaginary)
  and ``lambda_4`` (real); splits into an exponentially damped sub-branch
  (``lambda_4 != 0``) and an undamped anharmonic oscillation
  (``at = 0, gt^2 < 1``).
* **Strong-driving expansion**: all rates small against the Rabi frequency,
  leading-order solution built from three sparse matrix blocks.

Every function here is contract-tested against matrix-exponential propagation
of the same generator; the exponential is the ground truth wherever a printed
coefficient could be read two ways.  Trigonometric/hyperbolic helpers are
evaluated in complex arithmetic and the result's imaginary residue is checked
against a magnitude-scaled tolerance before being discarded, which avoids
real-branch bookkeeping for imaginary eigenvalues.

`tau` arguments broadcast: scalars return single vectors, arrays of shape
(n,) return (n, 4) or (n, 3) stacks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericsError

__all__ = [
    "LindbladAux",
    "AHAux",
    "SDAux",
    "lindblad_aux",
    "lindblad_eigenvalues",
    "lindblad_solution",
    "lindblad_steady",
    "ah_aux",
    "ah_eigenvalues",
    "ah_solution",
    "ah_normalized",
    "ah_steady",
    "ah_oscillatory",
    "oscillation_period",
    "sd_aux",
    "sd_eigenvalues",
    "sd_solution",
    "sd_steady",
]

#: Below this |kappa| the damped-rotation closed form is numerically degenerate.
KAPPA_TOL = 1e-12
#: Below this |lambda_4| the exponentially damped branch gives way to the
#: oscillatory one.
LAMBDA4_TOL = 1e-10
#: Below this |at| the damped-branch matrix entries (which carry 1/at) blow up.
ALPHA_TOL = 1e-12


def _as_real(values: np.ndarray, what: str) -> np.ndarray:
    """Strip an imaginary residue after checking it is pure round-off.

    The tolerance is scaled by the magnitude of the result: branch entries can
    legitimately reach ~1e34 (growing exponentials), where an absolute check
    would reject healthy round-off.
    """
    values = np.asarray(values)
    scale = max(1.0, float(np.max(np.abs(values.real))))
    residue = float(np.max(np.abs(values.imag)))
    if residue > 1e-10 * scale:
        raise AssertionError(
            f"{what}: imaginary residue {residue:.3e} exceeds tolerance"
        )
    return values.real


# ---------------------------------------------------------------------------
# Damped rotation (Lindblad-only) branch: at = gt = 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LindbladAux:
    """Auxiliaries of the damped-rotation branch.

    ``kappa = sqrt(1 - g0t^2)`` (imaginary above critical damping) and
    ``nu_sq = 1 + 1/(2 g0t^2)`` (infinite in the undamped limit).
    """

    kappa: complex
    nu_sq: float


def lindblad_aux(g0t: float) -> LindbladAux:
    if g0t < 0:
        raise ValueError("g0t must be >= 0")
    kappa = complex(np.sqrt(complex(1.0 - g0t * g0t)))
    nu_sq = 1.0 + 1.0 / (2.0 * g0t * g0t) if g0t > 0 else math.inf
    return LindbladAux(kappa=kappa, nu_sq=nu_sq)


def lindblad_eigenvalues(g0t: float) -> np.ndarray:
    """Eigenvalues ``(-2 g0t, -3 g0t - i kappa, -3 g0t + i kappa, 0)``.

    Above critical damping (g0t > 1) kappa is imaginary and all four values
    are real.
    """
    kappa = lindblad_aux(g0t).kappa
    return np.array(
        [
            -2.0 * g0t,
            -3.0 * g0t - 1.0j * kappa,
            -3.0 * g0t + 1.0j * kappa,
            0.0,
        ]
    )


def lindblad_solution(g0t: float, b0: np.ndarray, tau) -> np.ndarray:
    """Bloch 4-vector at time(s) tau for the damped-rotation branch.

    The solution matrix mixes (s2, s3) through the damped oscillators
    ``f_k(tau) = cos(kappa tau) + k (g0t/kappa) sin(kappa tau)`` and leaves the
    trace untouched.  The trace-coupling entry of the s3 row is evaluated in
    the expanded polynomial form ``(8 g^2 cos - (8 g^3 + 4 g) sin/kappa)``,
    which stays finite in the undamped limit where the textbook grouping is a
    0 * inf product.

    Raises
    ------
    DomainError
        At critical damping, |kappa| < 1e-12: the closed form has a removable
        singularity there ("degenerate kappa; use expm4 path").
    """
    aux = lindblad_aux(g0t)
    kappa = aux.kappa
    if abs(kappa) < KAPPA_TOL:
        raise DomainError("degenerate kappa; use expm4 path")
    g = float(g0t)
    b0 = np.asarray(b0, dtype=float)
    tau = np.asarray(tau, dtype=float)

    e2 = np.exp(-2.0 * g * tau)
    e3 = np.exp(-3.0 * g * tau)
    cos_k = np.cos(kappa * tau)
    sin_over_k = np.sin(kappa * tau) / kappa
    f_p1 = cos_k + g * sin_over_k
    f_m1 = cos_k - g * sin_over_k
    f_p3 = cos_k + 3.0 * g * sin_over_k
    denom = 8.0 * g * g + 1.0

    s24 = (4.0 * g / denom) * (f_p3 * e3 - 1.0)
    s34 = ((8.0 * g * g) * cos_k - (8.0 * g**3 + 4.0 * g) * sin_over_k) * e3 / denom
    s34 = s34 - 8.0 * g * g / denom

    out1 = e2 * b0[0] + 0.0j
    out2 = f_p1 * e3 * b0[1] + sin_over_k * e3 * b0[2] + s24 * b0[3]
    out3 = -sin_over_k * e3 * b0[1] + f_m1 * e3 * b0[2] + s34 * b0[3]
    out4 = np.broadcast_to(b0[3] + 0.0j, tau.shape) if tau.shape else b0[3] + 0.0j
    stacked = np.stack(np.broadcast_arrays(out1, out2, out3, out4), axis=-1)
    return _as_real(stacked, "damped-rotation solution")


def lindblad_steady(g0t: float) -> np.ndarray:
    """Normalized steady state ``-(4 g / (8 g^2 + 1)) (0, 1, 2 g)``.

    Raises
    ------
    DomainError
        If g0t = 0 ("no unique steady state (undamped)").
    """
    if g0t < 0:
        raise ValueError("g0t must be >= 0")
    if g0t == 0:
        raise DomainError("no unique steady state (undamped)")
    g = float(g0t)
    return -(4.0 * g / (8.0 * g * g + 1.0)) * np.array([0.0, 1.0, 2.0 * g])


# ---------------------------------------------------------------------------
# Trace-non-conserving branch: g0t = 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AHAux:
    """Auxiliaries of the trace-non-conserving branch.

    ``r_plus/r_minus = at^2 +/- (gt^2 - 1)``, ``r1 = sqrt(r_plus^2 + 4 at^2)``,
    ``k_pm = r1 +/- r_minus``; eigenvalues ``(-l2, l2, -l4, l4)`` with
    ``l2 = sqrt((r_plus - r1)/2)`` always imaginary and
    ``l4 = sqrt((r_plus + r1)/2)`` real; ``lambda_bars = (l2 + 1/l2,
    l4 + 1/l4)`` (infinite where the eigenvalue vanishes).
    """

    r_plus: float
    r_minus: float
    r1: float
    k_plus: float
    k_minus: float
    lambdas: tuple[complex, complex, complex, complex]
    lambda_bars: tuple[complex, complex]


def ah_aux(at: float, gt: float) -> AHAux:
    at = float(at)
    gt = float(gt)
    r_plus = at * at + (gt * gt - 1.0)
    r_minus = at * at - (gt * gt - 1.0)
    r1 = math.hypot(r_plus, 2.0 * at)
    lam2 = complex(np.sqrt(complex((r_plus - r1) / 2.0)))
    lam4 = complex(np.sqrt(complex((r_plus + r1) / 2.0)))
    bar2 = lam2 + 1.0 / lam2 if lam2 != 0 else complex(math.inf)
    bar4 = lam4 + 1.0 / lam4 if lam4 != 0 else complex(math.inf)
    return AHAux(
        r_plus=r_plus,
        r_minus=r_minus,
        r1=r1,
        k_plus=r1 + r_minus,
        k_minus=r1 - r_minus,
        lambdas=(-lam2, lam2, -lam4, lam4),
        lambda_bars=(bar2, bar4),
    )


def ah_eigenvalues(at: float, gt: float) -> AHAux:
    """Populated auxiliaries; the spectrum itself is ``aux.lambdas``."""
    return ah_aux(at, gt)


def _ah_rows(aux: AHAux, at: float, gt: float, b0: np.ndarray, tau: np.ndarray):
    """The four rows of the solution matrix applied to b0, without the 1/r1.

    Helper combinations: ``C_{k1,k2} = k1 cosh(l2 t) + k2 cosh(l4 t)`` and
    ``S_{k1,k2} = k1 sinh(l2 t) + k2 sinh(l4 t)``; with l2 imaginary these mix
    circular and hyperbolic terms, handled uniformly in complex arithmetic.
    """
    lam2 = aux.lambdas[1]
    lam4 = aux.lambdas[3]
    bar2, bar4 = aux.lambda_bars
    ch2 = np.cosh(lam2 * tau)
    ch4 = np.cosh(lam4 * tau)
    sh2 = np.sinh(lam2 * tau)
    sh4 = np.sinh(lam4 * tau)

    def comb_c(k1: complex, k2: complex):
        return k1 * ch2 + k2 * ch4

    def comb_s(k1: complex, k2: complex):
        return k1 * sh2 + k2 * sh4

    c_1m1 = comb_c(1.0, -1.0)
    s_bar42 = comb_s(bar4, -bar2)

    row1 = (
        0.5 * comb_c(aux.k_minus, aux.k_plus) * b0[0]
        + at * gt * comb_s(-1.0 / lam2, 1.0 / lam4) * b0[1]
        + at * gt * c_1m1 * b0[2]
        + at * comb_s(bar2, -bar4) * b0[3]
    )
    row2 = (
        (lam2 * lam4 * gt / at) * comb_s(-lam4, lam2) * b0[0]
        + comb_c(lam4 * bar4, -lam2 * bar2) * b0[1]
        - lam2 * lam4 * s_bar42 * b0[2]
        - gt * c_1m1 * b0[3]
    )
    row3 = (
        at * gt * c_1m1 * b0[0]
        + lam2 * lam4 * s_bar42 * b0[1]
        + 0.5 * comb_c(aux.k_plus, aux.k_minus) * b0[2]
        + gt * comb_s(-lam2, lam4) * b0[3]
    )
    row4 = (
        -(0.5 / at) * comb_s(lam2 * aux.k_minus, lam4 * aux.k_plus) * b0[0]
        + gt * c_1m1 * b0[1]
        + gt * comb_s(-lam2, lam4) * b0[2]
        + comb_c(-lam2 * bar2, lam4 * bar4) * b0[3]
    )
    return row1, row2, row3, row4


def _ah_guard(aux: AHAux, at: float) -> None:
    if abs(aux.lambdas[3]) < LAMBDA4_TOL:
        raise DomainError("oscillatory regime; use ah_oscillatory")
    if abs(at) < ALPHA_TOL:
        raise DomainError("alpha=0 entries singular; use expm4 path")


def ah_solution(at: float, gt: float, b0: np.ndarray, tau) -> np.ndarray:
    """Bloch 4-vector at time(s) tau for the exponentially damped sub-branch.

    Raises
    ------
    DomainError
        If |lambda_4| < 1e-10 ("oscillatory regime; use ah_oscillatory") or
        |at| < 1e-12 ("alpha=0 entries singular; use expm4 path"): several
        matrix entries carry 1/at and 1/lambda_4 factors.
    """
    aux = ah_aux(at, gt)
    _ah_guard(aux, at)
    b0 = np.asarray(b0, dtype=float)
    tau = np.asarray(tau, dtype=float)
    rows = _ah_rows(aux, float(at), float(gt), b0, tau)
    stacked = np.stack(np.broadcast_arrays(*rows), axis=-1) / aux.r1
    return _as_real(stacked, "trace-non-conserving solution")


def ah_normalized(at: float, gt: float, b0: np.ndarray, tau) -> np.ndarray:
    """Normalized Bloch vector: rows 1-3 over the trace row.

    Algebraically identical to ``normalize(ah_solution(...))``; the common
    1/r1 factor cancels between numerator and denominator.

    Raises
    ------
    NumericsError
        If the trace combination falls to or below 1e-300 ("trace collapse").
    """
    aux = ah_aux(at, gt)
    _ah_guard(aux, at)
    b0 = np.asarray(b0, dtype=float)
    tau = np.asarray(tau, dtype=float)
    row1, row2, row3, row4 = _ah_rows(aux, float(at), float(gt), b0, tau)
    trace = _as_real(row4, "trace combination")
    if np.any(trace <= 1e-300):
        raise NumericsError("trace collapse")
    stacked = np.stack(np.broadcast_arrays(row1, row2, row3), axis=-1)
    return _as_real(stacked, "normalized solution") / trace[..., np.newaxis]


def ah_steady(at: float, gt: float) -> np.ndarray:
    """Normalized steady state ``(1/(l4 lbar4)) (-at lbar4, gt, l4 gt)``.

    Initial-state independent whenever the damped sub-branch applies.

    Raises
    ------
    DomainError
        If lambda_4 vanishes ("oscillatory regime").
    """
    aux = ah_aux(at, gt)
    lam4 = aux.lambdas[3].real
    if abs(lam4) < LAMBDA4_TOL:
        raise DomainError("oscillatory regime")
    bar4 = lam4 + 1.0 / lam4
    return np.array([-at * bar4, gt, lam4 * gt]) / (lam4 * bar4)


def oscillation_period(gt: float) -> float:
    """Period ``2 pi / sqrt(1 - gt^2)`` of the anharmonic branch."""
    if abs(gt) >= 1.0:
        raise DomainError("not oscillatory")
    return 2.0 * math.pi / math.sqrt(1.0 - gt * gt)


def _oscillatory_states(gt: float, b0: np.ndarray, tau) -> np.ndarray:
    """Raw 4-vector solution on the undamped anharmonic branch (at = 0).

    Solves the (s2, s3, tr) system exactly for general initial trace; with
    ``w = sqrt(1 - gt^2)`` and ``q = gt tr0 - s2(0)``::

        w^2 s2  = gt tr0 - gt^2 s2(0) - q cos(w tau) + w s3(0) sin(w tau)
        w^2 s3  = w^2 s3(0) cos(w tau) + w q sin(w tau)
        w^2 tr  = tr0 - gt s2(0) - gt q cos(w tau) + gt w s3(0) sin(w tau)

    (The textbook-style grouping misprints two factors - the w on the s3 sine
    term and the gt on the trace sine term; the forms above are pinned
    against matrix-exponential propagation in the tests.)  s1 is constant.
    """
    if abs(gt) >= 1.0:
        raise DomainError("not oscillatory")
    gt = float(gt)
    b0 = np.asarray(b0, dtype=float)
    tau = np.asarray(tau, dtype=float)
    s1_0, s2_0, s3_0, tr_0 = b0
    w_sq = 1.0 - gt * gt
    w = math.sqrt(w_sq)
    q = gt * tr_0 - s2_0
    cos_w = np.cos(w * tau)
    sin_w = np.sin(w * tau)

    out1 = np.broadcast_to(s1_0, tau.shape) if tau.shape else np.float64(s1_0)
    out2 = (gt * tr_0 - gt * gt * s2_0 - q * cos_w + w * s3_0 * sin_w) / w_sq
    out3 = s3_0 * cos_w + (q / w) * sin_w
    out4 = (tr_0 - gt * s2_0 - gt * q * cos_w + gt * w * s3_0 * sin_w) / w_sq
    return np.stack(np.broadcast_arrays(out1, out2, out3, out4), axis=-1)


def ah_oscillatory(gt: float, b0: np.ndarray, tau) -> np.ndarray:
    """Normalized Bloch vector on the undamped anharmonic branch (at = 0).

    The underlying raw solution mixes (s2, s3, tr) through circular functions
    of ``w tau`` with ``w = sqrt(1 - gt^2)``, so the output is periodic with
    period ``2 pi / w`` rather than relaxing to a steady state.

    Raises
    ------
    DomainError
        If |gt| >= 1 ("not oscillatory").
    NumericsError
        If the trace combination falls to or below 1e-300 ("trace collapse").
    """
    states = _oscillatory_states(gt, b0, tau)
    trace = states[..., 3]
    if np.any(trace <= 1e-300):
        raise NumericsError("trace collapse")
    return states[..., :3] / trace[..., np.newaxis]


# ---------------------------------------------------------------------------
# Strong-driving expansion: all rates small against the Rabi frequency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SDAux:
    """Auxiliaries of the strong-driving expansion.

    ``chi1 = 1 + (8 gamma_bar - 1/2) g0t^2`` (shifted oscillation frequency)
    and ``chi2 = 4 alpha_bar^2`` (trace growth rate unit); ``alpha_bar`` and
    ``gamma_bar`` are the anti-Hermitian rates in units of the emission rate.
    The expansion series is organised in the rate ratios ``at/g0t`` and
    ``gt/g0t``, which equal ``4 alpha_bar`` and ``4 gamma_bar``; that factor
    4 is why it appears in both formulas.
    """

    chi1: float
    chi2: float
    alpha_bar: float
    gamma_bar: float


def _sd_warn(g0t: float, alpha_bar: float, gamma_bar: float) -> None:
    at = 4.0 * g0t * alpha_bar
    gt = 4.0 * g0t * gamma_bar
    checks = {
        "g0t": g0t,
        "at": at,
        "gt": gt,
        "alpha_bar": alpha_bar,
        "gamma_bar": gamma_bar,
    }
    stretched = [name for name, value in checks.items() if abs(value) > 0.3]
    if stretched:
        warnings.warn(
            "strong-driving expansion stretched: "
            + ", ".join(f"{name} > 0.3" for name in stretched),
            stacklevel=3,
        )


def sd_aux(g0t: float, alpha_bar: float, gamma_bar: float) -> SDAux:
    return SDAux(
        chi1=1.0 + (8.0 * gamma_bar - 0.5) * g0t * g0t,
        chi2=4.0 * alpha_bar * alpha_bar,
        alpha_bar=float(alpha_bar),
        gamma_bar=float(gamma_bar),
    )


def sd_eigenvalues(g0t: float, alpha_bar: float, gamma_bar: float) -> np.ndarray:
    """Leading-order spectrum; warns (never fails) outside the small regime."""
    _sd_warn(g0t, alpha_bar, gamma_bar)
    aux = sd_aux(g0t, alpha_bar, gamma_bar)
    return np.array(
        [
            -2.0 * g0t * (1.0 + aux.chi2),
            -3.0 * g0t - 1.0j * aux.chi1,
            -3.0 * g0t + 1.0j * aux.chi1,
            2.0 * g0t * aux.chi2,
        ]
    )


def sd_solution(
    g0t: float, alpha_bar: float, gamma_bar: float, b0: np.ndarray, tau
) -> tuple[np.ndarray, np.ndarray]:
    """Leading-order solution: (Bloch 4-vector, normalized 3-vector).

    Assembled from the three sparse blocks (free, alpha-linear, gt-linear)
    with the shared transients ``h1 = (exp(-2 g (1+chi2) t) - exp(2 g chi2 t))/2``,
    ``h2 = cos(chi1 t) exp(-3 g t) - exp(2 g chi2 t)`` and
    ``h_pm = cos(chi1 t) +/- g sin(chi1 t)``.

    Raises
    ------
    NumericsError
        If the trace combination is <= 0 ("trace collapse").
    """
    _sd_warn(g0t, alpha_bar, gamma_bar)
    aux = sd_aux(g0t, alpha_bar, gamma_bar)
    g = float(g0t)
    abar = 4.0 * float(alpha_bar)
    at = g * abar
    gt = 4.0 * g * float(gamma_bar)
    b0 = np.asarray(b0, dtype=float)
    tau = np.asarray(tau, dtype=float)

    e_a = np.exp(-2.0 * g * (1.0 + aux.chi2) * tau)
    e_b = np.exp(2.0 * g * aux.chi2 * tau)
    e3 = np.exp(-3.0 * g * tau)
    cos_c = np.cos(aux.chi1 * tau)
    sin_c = np.sin(aux.chi1 * tau)
    h1 = 0.5 * (e_a - e_b)
    h2 = cos_c * e3 - e_b
    h_p = cos_c + g * sin_c
    h_m = cos_c - g * sin_c

    out1 = (
        e_a * b0[0]
        - gt * abar * h1 * b0[1]
        + gt * at * h2 * b0[2]
        + abar * h1 * b0[3]
    )
    out2 = (
        (-4.0 * g * abar * h1 + gt * abar * h1) * b0[0]
        + h_p * e3 * b0[1]
        + sin_c * e3 * b0[2]
        + (4.0 * g * h2 - gt * h2) * b0[3]
    )
    out3 = (
        (-4.0 * g * g * abar * h2 + gt * at * h2) * b0[0]
        - sin_c * e3 * b0[1]
        + h_m * e3 * b0[2]
        + (-4.0 * g + gt) * sin_c * e3 * b0[3]
    )
    out4 = abar * h1 * b0[0] + gt * h2 * b0[1] + gt * sin_c * e3 * b0[2] + e_b * b0[3]

    states = np.stack(np.broadcast_arrays(out1, out2, out3, out4), axis=-1)
    trace = np.asarray(np.broadcast_arrays(out4)[0])
    if np.any(trace <= 0):
        raise NumericsError("trace collapse")
    normalized = states[..., :3] / trace[..., np.newaxis]
    return states, normalized


def sd_steady(g0t: float, alpha_bar: float, gamma_bar: float) -> np.ndarray:
    """Leading-order steady state
    ``(-2 alpha_bar - 2 at gt, gt - 4 g0t, 2 g0t (gt - 4 g0t))``.
    """
    _sd_warn(g0t, alpha_bar, gamma_bar)
    g = float(g0t)
    at = 4.0 * g * alpha_bar
    gt = 4.0 * g * gamma_bar
    return np.array(
        [
            -2.0 * alpha_bar - 2.0 * at * gt,
            gt - 4.0 * g,
            2.0 * g * (gt - 4.0 * g),
        ]
    )
