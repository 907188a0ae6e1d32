"""
Tour of the closed-form solution branches
=========================================

The generator of the Bloch 4-vector has three analytically solvable
families, each with its own spectrum and long-time behavior:

* pure emission (damped rotation): complex-conjugate eigenvalue pair,
  trace conserved, unique stationary state;
* pure level-shift asymmetry with optional decay imbalance: real growing
  mode, trace grows, normalized state freezes onto the dominant mode;
* pure decay imbalance below threshold: undamped anharmonic oscillation
  with a known period.

This script prints the eigenvalues, checks each branch against the matrix
exponential, and shows the routing report the command line prints for the
same parameters.
"""

import numpy as np

from twolevel.cli import validate_report
from twolevel.closed_form import (
    ah_eigenvalues,
    ah_normalized,
    ah_oscillatory,
    lindblad_eigenvalues,
    lindblad_solution,
    oscillation_period,
)
from twolevel.model import ReducedParams, build_m
from twolevel.propagate import expm4

GROUND = np.array([0.0, 0.0, -1.0, 1.0])
taus = np.linspace(0.0, 15.0, 151)


def against_expm(rp, states):
    truth = np.stack([expm4(build_m(rp), tau) @ GROUND for tau in taus])
    scale = np.maximum(1.0, np.abs(truth))
    return np.max(np.abs(states - truth) / scale)


print("damped rotation, g0t = 0.25")
print(f"  eigenvalues: {np.round(lindblad_eigenvalues(0.25), 6)}")
dev = against_expm(ReducedParams(g0t=0.25), lindblad_solution(0.25, GROUND, taus))
print(f"  closed form vs expm: {dev:.2e}")
for line in validate_report(ReducedParams(g0t=0.25)):
    print(f"  report: {line}")

print()
print("growing branch, at = 1, gt = 0")
aux = ah_eigenvalues(1.0, 0.0)
print(f"  eigenvalues: {np.round(np.array(aux.lambdas), 6)}")
nb = ah_normalized(1.0, 0.0, GROUND, taus)
print(f"  normalized state at tau = 15: {np.round(nb[-1], 6)}")
print("  (the normalized state locks onto the dominant mode, a pure state)")
for line in validate_report(ReducedParams(at=1.0)):
    print(f"  report: {line}")

print()
print("anharmonic oscillation, gt = 0.5")
period = oscillation_period(0.5)
print(f"  period: {period:.4f}")
one = ah_oscillatory(0.5, GROUND, taus)
again = ah_oscillatory(0.5, GROUND, taus + period)
print(f"  periodicity check |nb(tau) - nb(tau + T)|: {np.max(np.abs(one - again)):.2e}")
for line in validate_report(ReducedParams(gt=0.5)):
    print(f"  report: {line}")
