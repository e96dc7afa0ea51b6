"""Fixed-step classical Runge-Kutta integration of complex state vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .model import NonFiniteState

Rhs = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class IntegrationConfig:
    """
    Time window and step for :func:`integrate`.

    The number of steps is ``round((t1 - t0) / step)``; the step actually
    taken is the window divided by that count, so ``t1`` is always hit.
    """

    t0: float = 0.0
    t1: float = 8.0
    step: float = 1e-3
    record_every: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)) or self.t1 <= self.t0:
            raise ValueError(f"need finite t0 < t1, got [{self.t0}, {self.t1}]")
        if not self.step > 0 or self.step > self.t1 - self.t0:
            raise ValueError(f"step must lie in (0, t1 - t0], got {self.step}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError(f"record_every must be a positive integer, got {self.record_every}")

    @property
    def n_steps(self) -> int:
        return max(1, round((self.t1 - self.t0) / self.step))

    @property
    def h(self) -> float:
        return (self.t1 - self.t0) / self.n_steps

    def grid(self) -> np.ndarray:
        """All step boundaries ``t0, t0 + h, ..., t1``."""
        return self.t0 + self.h * np.arange(self.n_steps + 1)


@dataclass
class Trajectory:
    """Recorded samples of an integration run."""

    t: np.ndarray
    states: np.ndarray  # shape (n, 3), complex
    nonlinear: bool = False
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2

    @property
    def transfer(self) -> np.ndarray:
        """Population delivered to ``|g>``: ``2|psi_g|^2`` (nonlinear) or ``|psi_g|^2``."""
        pg = np.abs(self.states[:, 2]) ** 2
        return 2.0 * pg if self.nonlinear else pg

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def rk4_step(rhs: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(rhs: Rhs, initial, config: IntegrationConfig, nonlinear: bool = False) -> Trajectory:
    """
    Integrate ``dy/dt = rhs(t, y)`` with classical RK4 on a uniform grid.

    Parameters
    ----------
    rhs : callable
        ``rhs(t, y)`` returning the time derivative of ``y``.
    initial : array_like
        Initial complex state at ``config.t0``.
    config : IntegrationConfig
        Window, step and recording stride. The final time is always recorded.
    nonlinear : bool
        Only tags the trajectory so ``transfer`` uses atom-number counting.

    Raises
    ------
    NonFiniteState
        As soon as a NaN or Inf shows up in the state.
    """
    y = np.array(initial, dtype=complex)
    if not np.all(np.isfinite(y)):
        raise NonFiniteState("initial state is not finite")
    n, h, t0 = config.n_steps, config.h, config.t0
    every = int(config.record_every)
    ts = [t0]
    ys = [y.copy()]
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n):
            t = t0 + i * h
            y = rk4_step(rhs, t, y, h)
            if not np.all(np.isfinite(y)):
                raise NonFiniteState(f"state became non-finite at t={t + h:.6g}")
            if (i + 1) % every == 0 or i + 1 == n:
                ts.append(t0 + (i + 1) * h)
                ys.append(y.copy())
    return Trajectory(np.array(ts), np.array(ys), nonlinear=nonlinear)
