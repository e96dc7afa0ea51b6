import math

import numpy as np
import pytest

from stirap import (
    DegeneratePulse,
    FrozenPulses,
    IntegrationConfig,
    PulseSample,
    SystemParams,
    linear_cpt_state,
    linear_eigensystem,
    linear_rhs,
    r_lin,
    simulate,
)
from stirap.linear import hamiltonian

from .conftest import random_sample


def test_rhs_columns():
    s = PulseSample(3.0, 4.0)
    np.testing.assert_allclose(linear_rhs(np.array([1, 0, 0], complex), s), [0, -1.5j, 0])
    np.testing.assert_allclose(linear_rhs(np.array([0, 1, 0], complex), s), [-1.5j, 0, -2j])


def test_rhs_vanishes_on_dark_state():
    s = PulseSample(3.0, 4.0)
    np.testing.assert_allclose(linear_rhs(linear_cpt_state(s), s, SystemParams(1.3)), 0, atol=1e-15)


def test_cpt_state_values():
    np.testing.assert_allclose(linear_cpt_state(PulseSample(0.0, 2.0)), [1, 0, 0])
    np.testing.assert_allclose(linear_cpt_state(PulseSample(3.0, 4.0)), [0.8, 0, -0.6], atol=1e-15)
    np.testing.assert_allclose(linear_cpt_state(PulseSample(1.0, 1e-9)), [0, 0, -1], atol=1e-8)
    with pytest.raises(DegeneratePulse):
        linear_cpt_state(PulseSample(0.0, 0.0))


def test_dark_state_decoupled_from_excited(rng):
    for _ in range(200):
        s = random_sample(rng)
        assert abs((hamiltonian(s) @ linear_cpt_state(s))[1]) < 1e-14


def test_eigensystem_resonant():
    es = linear_eigensystem(PulseSample(3.0, 4.0))
    np.testing.assert_allclose(es.frequencies, [0.0, 2.5, -2.5], atol=1e-15)
    np.testing.assert_array_equal(es.dark, linear_cpt_state(PulseSample(3.0, 4.0)))


def test_eigensystem_detuned_matches_characteristic_polynomial():
    # roots of w^3 + 2 w^2 - 25/4 w, i.e. det(w - H) with the -Delta|e><e| term
    expected = [0.0, 1.69258240356725201562535524577, -3.69258240356725201562535524577]
    es = linear_eigensystem(PulseSample(3.0, 4.0), SystemParams(2.0))
    np.testing.assert_allclose(es.frequencies, expected, atol=1e-14)
    h = hamiltonian(PulseSample(3.0, 4.0), SystemParams(2.0))
    np.testing.assert_allclose(sorted(es.frequencies), np.linalg.eigvalsh(h), atol=1e-12)


def test_eigenpairs_residual_norm_and_phase(rng):
    for _ in range(200):
        s = random_sample(rng)
        p = SystemParams(rng.uniform(-5, 5))
        h = hamiltonian(s, p)
        es = linear_eigensystem(s, p)
        for w, v in es:
            assert np.linalg.norm(h @ v - w * v) < 1e-10
            assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-14)
            first = v[np.argmax(np.abs(v) > 1e-15)]
            assert first.imag == 0 and first.real > 0
        assert es.states[0][1] == 0
        np.testing.assert_allclose(np.abs(es.states.conj() @ es.states.T), np.eye(3), atol=1e-12)


def test_bright_frequencies_on_resonance(rng):
    for _ in range(100):
        s = random_sample(rng)
        om = math.hypot(s.omega_p, s.omega_d)
        f = linear_eigensystem(s).frequencies
        assert abs(f[1] - om / 2) < 1e-12 and abs(f[2] + om / 2) < 1e-12


def test_r_lin_examples(fig2):
    assert r_lin(PulseSample(3.0, 4.0)) == 0.0
    assert r_lin(PulseSample(0.0, 2.0, 0.6, 0.0)) == pytest.approx(0.6 / 4.0, rel=1e-15)
    # chi = 1 at t = 3.4: both algebraic forms evaluated at 30 digits
    assert r_lin(fig2.sample(3.4)) == pytest.approx(0.132767599147910521678058304139, rel=1e-13)


def test_r_lin_forms_agree(rng):
    from stirap import mixing_ratio

    for _ in range(500):
        s = random_sample(rng)
        chi, chi_dot = mixing_ratio(s)
        chi_form = abs(chi_dot) / (1 + chi * chi) / math.hypot(s.omega_p, s.omega_d)
        assert r_lin(s) == pytest.approx(chi_form, rel=1e-12)


def test_norm_conservation(fig2):
    traj = simulate("linear", fig2, config=IntegrationConfig(0.0, 8.0, 1e-3))
    norms = (np.abs(traj.states) ** 2).sum(axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-8


def test_bright_state_returns_after_one_period():
    s = PulseSample(3.0, 4.0)
    es = linear_eigensystem(s)
    w, v = es.frequencies[1], es.states[1]
    traj = simulate("linear", FrozenPulses(3.0, 4.0), initial=v,
                    config=IntegrationConfig(0.0, 2 * math.pi / w, 1e-3))
    assert np.max(np.abs(traj.final - v)) < 1e-8
    mid = len(traj) // 2
    np.testing.assert_allclose(traj.states[mid], np.exp(-1j * w * traj.t[mid]) * v, atol=1e-8)
