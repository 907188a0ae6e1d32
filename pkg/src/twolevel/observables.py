"""Measured quantities from normalized Bloch vectors.

Populations and coherence are read directly off the vector components:
``p_e = (1 + z)/2``, ``<sigma_+> = (x + i y)/2``.  The interaction picture
used throughout the dynamics modules differs from the laboratory frame by a
rotation about the z axis; the ``sigma_+ -> exp(+i w0 t) sigma_+`` phase rule
carries coherences back, while populations and z are frame-invariant.  All
functions broadcast over leading axes, so a trajectory's (n, 3) stack maps to
(n,) population or coherence series in one call.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "upper_population",
    "lower_population",
    "coherence_interaction",
    "to_schrodinger_coherence",
]


def upper_population(nb: np.ndarray) -> np.ndarray | float:
    """Excited-level population ``(1 + z)/2`` of a normalized Bloch vector.

    Accepts a single vector of shape (3,) or a stack of shape (..., 3).
    """
    nb = np.asarray(nb, dtype=float)
    out = 0.5 * (1.0 + nb[..., 2])
    return float(out) if out.ndim == 0 else out


def lower_population(nb: np.ndarray) -> np.ndarray | float:
    """Ground-level population, the exact complement ``1 - p_e``."""
    nb = np.asarray(nb, dtype=float)
    out = 0.5 * (1.0 - nb[..., 2])
    return float(out) if out.ndim == 0 else out


def coherence_interaction(nb: np.ndarray) -> np.ndarray | complex:
    """Raising-operator average ``(x + i y)/2`` in the rotating frame.

    Its modulus is bounded by 1/2 for any physical state.
    """
    nb = np.asarray(nb, dtype=float)
    out = 0.5 * (nb[..., 0] + 1.0j * nb[..., 1])
    return complex(out) if out.ndim == 0 else out


def to_schrodinger_coherence(nb: np.ndarray, phase) -> np.ndarray | complex:
    """Laboratory-frame coherence ``exp(i phase) (x + i y)/2``.

    ``phase`` is the accumulated splitting angle ``w0 t`` in radians; it
    broadcasts against a stacked ``nb``.  The modulus is phase-independent,
    so spectra of |coherence| may be computed in either frame.
    """
    value = coherence_interaction(nb)
    out = np.exp(1.0j * np.asarray(phase, dtype=float)) * value
    return complex(out) if np.ndim(out) == 0 else out
