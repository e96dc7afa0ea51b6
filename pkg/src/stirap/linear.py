"""
The linear three-level Lambda system.

``H/hbar = -Delta |e><e| + (Omega_p |a><e| + Omega_d |g><e| + h.c.) / 2``
in the basis ``(a, e, g)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DegeneratePulse, PulseSample, SystemParams, effective_rabi_linear


@dataclass(frozen=True)
class LinearEigenSet:
    """Eigenfrequencies and unit eigenvectors, ordered (dark, upper bright, lower bright)."""

    frequencies: np.ndarray
    states: np.ndarray  # rows are eigenvectors

    def __iter__(self):
        return iter(zip(self.frequencies, self.states))

    @property
    def dark(self) -> np.ndarray:
        return self.states[0]


def hamiltonian(sample: PulseSample, params: SystemParams = SystemParams()) -> np.ndarray:
    """Real symmetric ``H_lin / hbar``."""
    hp = 0.5 * sample.omega_p
    hd = 0.5 * sample.omega_d
    return np.array([[0.0, hp, 0.0], [hp, -params.delta, hd], [0.0, hd, 0.0]])


def linear_rhs(state: np.ndarray, sample: PulseSample, params: SystemParams = SystemParams()) -> np.ndarray:
    a, e, g = state
    hp = 0.5 * sample.omega_p
    hd = 0.5 * sample.omega_d
    return -1j * np.array([hp * e, -params.delta * e + hp * a + hd * g, hd * e])


def fix_phase(v: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """Rotate ``v`` so its first non-negligible component is real and positive."""
    v = np.asarray(v, dtype=complex)
    for x in v:
        if abs(x) > tol:
            return v * (abs(x) / x)
    return v


def _check_eff(sample: PulseSample) -> float:
    om = effective_rabi_linear(sample)
    if not om > sample.guard:
        raise DegeneratePulse(f"effective Rabi frequency {om:.3e} is below the guard")
    return om


def linear_cpt_state(sample: PulseSample) -> np.ndarray:
    """Dark state ``(Omega_d, 0, -Omega_p) / Omega_eff``."""
    om = _check_eff(sample)
    return np.array([sample.omega_d / om, 0.0, -sample.omega_p / om], dtype=complex)


def linear_eigensystem(sample: PulseSample, params: SystemParams = SystemParams()) -> LinearEigenSet:
    """
    Diagonalize ``H_lin`` in closed form.

    The bright frequencies solve ``w**2 + Delta*w - Omega_eff**2/4 = 0`` and
    reduce to ``+-Omega_eff/2`` on one-photon resonance. The bright state for
    frequency ``w`` is proportional to ``(Omega_p/2, w, Omega_d/2)``.
    """
    om = _check_eff(sample)
    d = params.delta
    root = math.sqrt(d * d + om * om)
    freqs = [0.0, 0.5 * (-d + root), 0.5 * (-d - root)]
    states = [linear_cpt_state(sample)]
    for w in freqs[1:]:
        v = np.array([0.5 * sample.omega_p, w, 0.5 * sample.omega_d], dtype=complex)
        states.append(fix_phase(v / np.linalg.norm(v)))
    return LinearEigenSet(np.array(freqs), np.array(states))


def r_lin(sample: PulseSample) -> float:
    """
    Linear adiabaticity parameter ``|dOp/dt Od - dOd/dt Op| / Omega_eff**3``.

    Equal to ``|chi_dot| / (1 + chi**2) / Omega_eff`` with ``chi = Op/Od``.
    """
    om = _check_eff(sample)
    num = sample.omega_p_dot * sample.omega_d - sample.omega_d_dot * sample.omega_p
    return abs(num) / om**3
