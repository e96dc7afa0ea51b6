"""
Shared domain types and pulse arithmetic.

Time is measured in units of the Gaussian pulse width and Rabi frequencies
in inverse pulse widths (hbar = 1). States are plain complex numpy arrays of
shape ``(3,)`` ordered ``(psi_a, psi_e, psi_g)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np

#: Relative underflow guard: omega_d below ``GUARD * omega0`` is degenerate.
GUARD = 1e-12


class StirapError(Exception):
    """Base class for errors raised by this package."""


class DegeneratePulse(StirapError, ValueError):
    """The dump Rabi frequency is too small for the CPT branch to be defined."""


class UnsupportedDetuning(StirapError, ValueError):
    """A closed-form result that only exists at zero one-photon detuning was requested."""


class DynamicalInstability(StirapError, ArithmeticError):
    """The linearization around the CPT branch has complex eigenfrequencies."""


class NonFiniteState(StirapError, ArithmeticError):
    """The integrated state picked up a NaN or Inf component."""


@dataclass(frozen=True)
class SystemParams:
    """One-photon detuning; the two-photon detuning is fixed to zero."""

    delta: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise ValueError(f"delta must be finite, got {self.delta!r}")


@dataclass(frozen=True)
class PulseSample:
    """Rabi frequencies and their time derivatives at one instant."""

    omega_p: float
    omega_d: float
    omega_p_dot: float = 0.0
    omega_d_dot: float = 0.0
    #: reference scale for the underflow guard (peak Rabi frequency)
    scale: float | None = None

    @property
    def guard(self) -> float:
        ref = self.scale if self.scale is not None else max(self.omega_p, self.omega_d)
        return GUARD * ref


class PulseSchedule(Protocol):
    """Anything mapping a time to a :class:`PulseSample`."""

    def sample(self, t: float) -> PulseSample: ...


@dataclass(frozen=True)
class GaussianPulsePair:
    """
    Equal-amplitude, unit-width Gaussian pump and dump pulses.

    ``Omega_{p,d}(t) = omega0 * exp(-(t - t_{p,d})**2)``. A counter-intuitive
    sequence has ``t_d < t_p``.
    """

    omega0: float = 5.0
    t_p: float = 3.8
    t_d: float = 3.0

    def __post_init__(self):
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be positive and finite, got {self.omega0!r}")
        if not (math.isfinite(self.t_p) and math.isfinite(self.t_d)):
            raise ValueError("pulse centers must be finite")

    def sample(self, t: float) -> PulseSample:
        return sample_pulses(self, t)


@dataclass(frozen=True)
class FrozenPulses:
    """Time-independent Rabi frequencies (all derivatives vanish)."""

    omega_p: float
    omega_d: float

    def sample(self, t: float) -> PulseSample:
        scale = max(self.omega_p, self.omega_d)
        return PulseSample(self.omega_p, self.omega_d, 0.0, 0.0, scale)


def sample_pulses(pulses: GaussianPulsePair, t: float) -> PulseSample:
    """Evaluate both Gaussians and their exact derivatives at ``t``."""
    xp = t - pulses.t_p
    xd = t - pulses.t_d
    op = pulses.omega0 * math.exp(-xp * xp)
    od = pulses.omega0 * math.exp(-xd * xd)
    return PulseSample(op, od, -2.0 * xp * op, -2.0 * xd * od, pulses.omega0)


def check_dump(sample: PulseSample) -> None:
    """Raise :class:`DegeneratePulse` if omega_d is at or below the guard."""
    if not sample.omega_d > sample.guard:
        raise DegeneratePulse(
            f"omega_d={sample.omega_d:.3e} is below the underflow guard {sample.guard:.3e}"
        )


def mixing_ratio(sample: PulseSample) -> tuple[float, float]:
    """
    Return ``(chi, chi_dot)`` with ``chi = omega_p / omega_d``.

    Raises
    ------
    DegeneratePulse
        If ``omega_d`` is below the underflow guard.
    """
    check_dump(sample)
    od = sample.omega_d
    chi = sample.omega_p / od
    chi_dot = (sample.omega_p_dot * od - sample.omega_p * sample.omega_d_dot) / (od * od)
    return chi, chi_dot


def effective_rabi_linear(sample: PulseSample) -> float:
    return math.hypot(sample.omega_p, sample.omega_d)


def effective_rabi_nonlinear(sample: PulseSample) -> float:
    """``sqrt(omega_d**2 + 8 omega_p**2)``, the nonlinear effective Rabi frequency."""
    return math.sqrt(sample.omega_d**2 + 8.0 * sample.omega_p**2)


def state_vector(psi_a: complex, psi_e: complex, psi_g: complex) -> np.ndarray:
    return np.array([psi_a, psi_e, psi_g], dtype=complex)


def populations(state: np.ndarray) -> np.ndarray:
    """``|psi_i|**2`` for each level; works on a single state or a stack of states."""
    return np.abs(np.asarray(state)) ** 2
