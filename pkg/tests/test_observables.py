"""Populations and coherences extracted from normalized Bloch components."""

import math

import numpy as np
import pytest

from twolevel.closed_form import lindblad_solution
from twolevel.observables import (
    coherence_interaction,
    lower_population,
    to_schrodinger_coherence,
    upper_population,
)


def test_upper_population_examples():
    assert upper_population(np.array([0.0, 0.0, 1.0])) == pytest.approx(1.0)
    assert upper_population(np.array([0.0, 0.0, -1.0])) == pytest.approx(0.0)
    assert upper_population(np.array([0.6, 0.0, 0.2])) == pytest.approx(0.6)


def test_lower_population_examples():
    assert lower_population(np.array([0.0, 0.0, 1.0])) == pytest.approx(0.0)
    assert lower_population(np.array([0.0, 0.0, -1.0])) == pytest.approx(1.0)
    assert lower_population(np.array([0.6, 0.0, 0.2])) == pytest.approx(0.4)


def test_populations_sum_to_one_exactly():
    rng = np.random.default_rng(17)
    for _ in range(50):
        nb = rng.uniform(-1.0, 1.0, size=3)
        assert upper_population(nb) + lower_population(nb) == 1.0


def test_coherence_examples():
    assert coherence_interaction(np.array([1.0, 0.0, 0.0])) == pytest.approx(0.5)
    assert coherence_interaction(np.array([0.0, 1.0, 0.0])) == pytest.approx(0.5j)
    assert coherence_interaction(np.array([0.6, -0.8, 0.1])) == pytest.approx(
        0.3 - 0.4j
    )


def test_schrodinger_rotation_examples():
    x_state = np.array([1.0, 0.0, 0.0])
    assert to_schrodinger_coherence(x_state, 0.0) == pytest.approx(0.5)
    assert to_schrodinger_coherence(x_state, math.pi) == pytest.approx(-0.5)
    assert to_schrodinger_coherence(x_state, math.pi / 2.0) == pytest.approx(0.5j)


def test_schrodinger_rotation_preserves_modulus():
    rng = np.random.default_rng(23)
    for _ in range(50):
        nb = rng.uniform(-1.0, 1.0, size=3)
        phase = rng.uniform(-50.0, 50.0)
        rotated = to_schrodinger_coherence(nb, phase)
        assert abs(rotated) == pytest.approx(abs(coherence_interaction(nb)), abs=1e-15)


def test_broadcasting_over_trajectories():
    nb = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.6, -0.8, 0.1]])
    pe = upper_population(nb)
    coh = coherence_interaction(nb)
    assert pe.shape == (3,)
    assert coh.shape == (3,)
    assert np.allclose(pe, [1.0, 0.5, 0.55])
    assert np.allclose(coh, [0.0, 0.5, 0.3 - 0.4j])


def test_coherence_tracks_trajectory_components():
    taus = np.linspace(0.0, 12.0, 120)
    states = lindblad_solution(0.25, np.array([0.0, 0.0, -1.0, 1.0]), taus)
    nb = states[:, :3] / states[:, 3:4]
    coh = coherence_interaction(nb)
    assert np.allclose(coh.imag, 0.5 * nb[:, 1], atol=1e-15)
    assert np.allclose(coh.real, 0.5 * nb[:, 0], atol=1e-15)
