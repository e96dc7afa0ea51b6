"""
Mean-field atom-molecule Lambda system.

Equations of motion (hbar = 1)::

    i dpsi_a/dt = Omega_p conj(psi_a) psi_e
    i dpsi_e/dt = Delta psi_e + Omega_p/2 psi_a**2 + Omega_d/2 psi_g
    i dpsi_g/dt = Omega_d/2 psi_e

with atom-number normalization ``|psi_a|^2 + 2(|psi_e|^2 + |psi_g|^2) = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DegeneratePulse,
    PulseSample,
    SystemParams,
    UnsupportedDetuning,
    check_dump,
    effective_rabi_nonlinear,
)


class Family(str, enum.Enum):
    CPT = "cpt"
    MOLECULAR_PAIR = "molecular_pair"
    MIXED_PAIR = "mixed_pair"


@dataclass(frozen=True)
class CptPoint:
    """The zero-frequency CPT fixed point, its time derivative, and Omega_eff^nl."""

    state: np.ndarray
    state_dot: np.ndarray
    omega_eff_nl: float


@dataclass(frozen=True)
class FixedPoint:
    frequency: float
    state: np.ndarray
    family: Family


def meanfield_rhs(state: np.ndarray, sample: PulseSample, params: SystemParams = SystemParams()) -> np.ndarray:
    a, e, g = state
    op = sample.omega_p
    od = sample.omega_d
    return -1j * np.array(
        [
            op * a.conjugate() * e,
            params.delta * e + 0.5 * op * a * a + 0.5 * od * g,
            0.5 * od * e,
        ]
    )


def stationary_residual(state: np.ndarray, frequency: float, sample: PulseSample,
                        params: SystemParams = SystemParams()) -> float:
    """Max-norm residual of the eigen-equations obtained by replacing ``i d/dt`` with ``frequency``."""
    rhs = 1j * meanfield_rhs(np.asarray(state, dtype=complex), sample, params)
    return float(np.max(np.abs(frequency * np.asarray(state) - rhs)))


def atom_number(state) -> float:
    s = np.asarray(state)
    return float(abs(s[0]) ** 2 + 2.0 * (abs(s[1]) ** 2 + abs(s[2]) ** 2))


def meanfield_energy(state: np.ndarray, sample: PulseSample, params: SystemParams = SystemParams()) -> float:
    """
    Energy functional generating the mean-field equations.

    ``E = Delta |psi_e|^2 + Re[Omega_p conj(psi_e) psi_a^2] + Re[Omega_d conj(psi_e) psi_g]``.
    Conserved when the pulses are frozen.
    """
    a, e, g = state
    ec = np.conjugate(e)
    return float(
        params.delta * abs(e) ** 2
        + (sample.omega_p * ec * a * a).real
        + (sample.omega_d * ec * g).real
    )


def nonlinear_cpt(sample: PulseSample) -> CptPoint:
    """
    Nonlinear CPT state and its time derivative along the schedule.

    ``psi_a = sqrt(2 Od / (Od + Oeff))``, ``psi_e = 0``,
    ``psi_g = -2 Op / (Od + Oeff)`` with ``Oeff = sqrt(Od^2 + 8 Op^2)``.
    The derivative comes from the chain rule in ``(dOp/dt, dOd/dt)``.

    Raises
    ------
    DegeneratePulse
        If ``omega_d`` is below the underflow guard.
    """
    check_dump(sample)
    op, od = sample.omega_p, sample.omega_d
    opd, odd = sample.omega_p_dot, sample.omega_d_dot
    eff = effective_rabi_nonlinear(sample)
    s = od + eff
    s_dot = odd + (od * odd + 8.0 * op * opd) / eff
    a = math.sqrt(2.0 * od / s)
    g = -2.0 * op / s
    a_dot = (odd * s - od * s_dot) / (a * s * s)
    g_dot = -2.0 * (opd * s - op * s_dot) / (s * s)
    return CptPoint(
        state=np.array([a, 0.0, g], dtype=complex),
        state_dot=np.array([a_dot, 0.0, g_dot], dtype=complex),
        omega_eff_nl=eff,
    )


def gauge_fix(state: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """
    Pick the representative of the U(1) orbit ``(e^{it}a, e^{2it}e, e^{2it}g)``.

    ``psi_a`` is made real and non-negative; if it vanishes, ``psi_g`` is.
    """
    s = np.asarray(state, dtype=complex)
    a, e, g = s
    if abs(a) > tol:
        ph = abs(a) / a
        return np.array([a * ph, e * ph * ph, g * ph * ph])
    if abs(g) > tol:
        ph2 = abs(g) / g
        return np.array([a, e * ph2, g * ph2])
    return s


def enumerate_fixed_points(sample: PulseSample, params: SystemParams = SystemParams()) -> list[FixedPoint]:
    """
    All gauge-fixed stationary states at zero one-photon detuning.

    Always the CPT point (frequency 0) and the molecular pair
    ``(0, +-1/2, 1/2)`` at ``+-Omega_d/2``; when ``Omega_d < Omega_p`` also the
    mixed pair at ``+-Omega_p/2``. Every state has atom number 1.
    """
    if params.delta != 0:
        raise UnsupportedDetuning("fixed points are only enumerated for delta = 0")
    check_dump(sample)
    op, od = sample.omega_p, sample.omega_d
    if not op > sample.guard:
        raise DegeneratePulse(f"omega_p={op:.3e} is below the underflow guard")
    points = [FixedPoint(0.0, nonlinear_cpt(sample).state, Family.CPT)]
    for sign in (1.0, -1.0):
        st = gauge_fix(np.array([0.0, 0.5 * sign, 0.5], dtype=complex))
        points.append(FixedPoint(0.5 * sign * od, st, Family.MOLECULAR_PAIR))
    if od < op:
        ratio = od / op
        amp_a = math.sqrt(0.5 * (1.0 - ratio * ratio))
        for sign in (1.0, -1.0):
            st = gauge_fix(np.array([amp_a, 0.5 * sign, 0.5 * ratio], dtype=complex))
            points.append(FixedPoint(0.5 * sign * op, st, Family.MIXED_PAIR))
    return points
