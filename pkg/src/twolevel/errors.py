"""Exception types shared across the package.

The split mirrors the command-line contract: configuration mistakes raise a
plain ``ValueError``, requests that fall outside a solution branch's domain
raise :class:`DomainError`, and runtime numerical breakdowns raise
:class:`NumericsError`.  The CLI maps these onto exit codes 2, 3 and 4.
"""

from __future__ import annotations


class DomainError(ValueError):
    """A closed-form branch or analytic path was asked for outside its domain.

    Examples: the damped-rotation closed form at the critically damped point,
    the exponentially damped branch in the oscillatory regime, or any analytic
    4x4 path at nonzero thermal occupation.
    """


class NumericsError(RuntimeError):
    """A numerical procedure failed: overflow, divergence, trace collapse,
    non-convergence of the steady-state search, or a signal that never decays.
    """
