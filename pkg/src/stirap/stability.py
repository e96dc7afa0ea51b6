"""
Linear stability analysis around the nonlinear CPT branch.

Writing ``psi = Psi0 + dpsi`` and linearizing the mean-field equations gives
``i d(dpsi)/dt = M dpsi - i dPsi0/dt`` with the real symmetric matrix::

    M = [[0,          Op*a0, 0   ],
         [Op*a0,      Delta, Od/2],
         [0,          Od/2,  0   ]]

Projecting on the instantaneous normal modes ``w_alpha`` of ``M`` gives
``i dc_alpha/dt = omega_alpha c_alpha - i w_alpha . dPsi0/dt``. The zero mode
has no source, so only ``c_+`` and ``c_-`` build up, and
``r_nl = sqrt(|c_+|^2 + |c_-|^2) / 2`` measures the departure from the
instantaneous CPT state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .integrator import IntegrationConfig, integrate
from .linear import r_lin
from .model import (
    DynamicalInstability,
    PulseSample,
    PulseSchedule,
    SystemParams,
    UnsupportedDetuning,
    mixing_ratio,
)
from .nonlinear import CptPoint, nonlinear_cpt

KERNELS = ("accumulated", "frozen")


@dataclass(frozen=True)
class NormalModeSet:
    """
    Eigenfrequencies and unit-norm real eigenvectors of ``M``, ordered (0, +, -).

    ``n_plus``/``n_minus`` normalize ``(Op*a0, omega_pm, Od/2)``; ``n_zero``
    normalizes ``(-Od/2, 0, Op*a0)``.
    """

    omega_plus: float
    omega_minus: float
    w0: np.ndarray
    w_plus: np.ndarray
    w_minus: np.ndarray
    n_zero: float
    n_plus: float
    n_minus: float
    omega0: float = 0.0

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([self.omega0, self.omega_plus, self.omega_minus])

    @property
    def vectors(self) -> np.ndarray:
        """Modes as rows, so ``vectors @ v`` projects ``v`` on (w0, w+, w-)."""
        return np.array([self.w0, self.w_plus, self.w_minus])


def build_stability_matrix(sample: PulseSample, params: SystemParams = SystemParams(),
                           cpt: CptPoint | None = None) -> np.ndarray:
    if cpt is None:
        cpt = nonlinear_cpt(sample)
    k = sample.omega_p * cpt.state[0].real
    hd = 0.5 * sample.omega_d
    return np.array([[0.0, k, 0.0], [k, params.delta, hd], [0.0, hd, 0.0]])


def normal_modes(sample: PulseSample, params: SystemParams = SystemParams(),
                 cpt: CptPoint | None = None) -> NormalModeSet:
    """
    Closed-form normal modes: ``omega_pm = (Delta +- sqrt(Delta^2 + Od*Oeff_nl)) / 2``.

    Raises
    ------
    DegeneratePulse
        If the CPT branch is undefined.
    DynamicalInstability
        If the discriminant is negative (cannot happen for positive pulses).
    """
    if cpt is None:
        cpt = nonlinear_cpt(sample)
    delta = params.delta
    disc = delta * delta + sample.omega_d * cpt.omega_eff_nl
    if disc < 0:
        raise DynamicalInstability(f"negative discriminant {disc:.3e}: complex eigenfrequencies")
    root = math.sqrt(disc)
    w_p = 0.5 * (delta + root)
    w_m = 0.5 * (delta - root)
    k = sample.omega_p * cpt.state[0].real
    hd = 0.5 * sample.omega_d

    v0 = np.array([-hd, 0.0, k])
    vp = np.array([k, w_p, hd])
    vm = np.array([k, w_m, hd])
    n0 = 1.0 / math.sqrt(hd * hd + k * k)
    n_p = 1.0 / math.sqrt(k * k + w_p * w_p + hd * hd)
    n_m = 1.0 / math.sqrt(k * k + w_m * w_m + hd * hd)
    return NormalModeSet(w_p, w_m, n0 * v0, n_p * vp, n_m * vm, n0, n_p, n_m)


def zero_mode_source(cpt: CptPoint, modes: NormalModeSet) -> float:
    """``w0 . dPsi0/dt``; identically zero on the CPT branch."""
    return float(np.dot(modes.w0, cpt.state_dot.real))


def mode_sources(sample: PulseSample, params: SystemParams = SystemParams()) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(frequencies, w_alpha . dPsi0/dt)`` for alpha = 0, +, -."""
    cpt = nonlinear_cpt(sample)
    modes = normal_modes(sample, params, cpt)
    return modes.frequencies, modes.vectors @ cpt.state_dot.real


@dataclass
class ModeAmplitudes:
    t: np.ndarray
    c: np.ndarray  # (n, k) complex; columns (+, -) or (0, +, -)

    @property
    def c_plus(self) -> np.ndarray:
        return self.c[:, -2]

    @property
    def c_minus(self) -> np.ndarray:
        return self.c[:, -1]

    @property
    def r_nl(self) -> np.ndarray:
        return r_nl_exact(self.c_plus, self.c_minus)


def _uniform_step(t_grid: np.ndarray) -> float:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or len(t) < 2:
        raise ValueError("t_grid needs at least two points")
    dt = np.diff(t)
    h = (t[-1] - t[0]) / (len(t) - 1)
    if h <= 0 or np.max(np.abs(dt - h)) > 1e-9 * max(1.0, abs(h)):
        raise ValueError("t_grid must be uniform and increasing")
    return h


def _sources_on_grid(schedule: PulseSchedule, params: SystemParams, t_grid) -> tuple[np.ndarray, np.ndarray]:
    om = np.empty((len(t_grid), 2))
    src = np.empty((len(t_grid), 2))
    for i, t in enumerate(t_grid):
        f, s = mode_sources(schedule.sample(float(t)), params)
        om[i] = f[1:]
        src[i] = s[1:]
    return om, src


def mode_amplitudes_quadrature(schedule: PulseSchedule, params: SystemParams, t_grid,
                               kernel: str = "accumulated") -> ModeAmplitudes:
    """
    Evaluate ``c_pm(t) = -int_{t_0}^{t} K(t, t') w_pm(t') . dPsi0(t') dt'`` by trapezoidal quadrature.

    ``c_pm`` vanish at the first grid point. With ``kernel="accumulated"`` the
    phase in ``K`` is ``exp(-i int_{t'}^{t} omega_pm)``, built up step by step
    with the mean frequency of each interval. With ``kernel="frozen"`` it is
    ``exp(i omega_pm(t) (t' - t))``, the frequency taken at the output time.
    """
    if kernel not in KERNELS:
        raise ValueError(f"kernel must be one of {KERNELS}, got {kernel!r}")
    t = np.asarray(t_grid, dtype=float)
    h = _uniform_step(t)
    om, src = _sources_on_grid(schedule, params, t)
    n = len(t)
    c = np.zeros((n, 2), dtype=complex)
    if kernel == "accumulated":
        for i in range(n - 1):
            rot = np.exp(-0.5j * h * (om[i] + om[i + 1]))
            c[i + 1] = rot * c[i] - 0.5 * h * (rot * src[i] + src[i + 1])
    else:
        for i in range(1, n):
            lag = t[: i + 1] - t[i]
            for j in range(2):
                f = np.exp(1j * om[i, j] * lag) * src[: i + 1, j]
                c[i, j] = -h * (f.sum() - 0.5 * (f[0] + f[-1]))
    return ModeAmplitudes(t, c)


def mode_amplitudes_ode(schedule: PulseSchedule, params: SystemParams, t_grid) -> ModeAmplitudes:
    """
    Integrate the projected equations ``i dc/dt = omega c - i w . dPsi0/dt`` with RK4.

    All three modes are carried, so ``c[:, 0]`` is the zero-mode amplitude;
    every amplitude starts at zero on the first grid point.
    """
    t = np.asarray(t_grid, dtype=float)
    h = _uniform_step(t)

    def rhs(tt, c):
        f, s = mode_sources(schedule.sample(tt), params)
        return -1j * f * c - s

    cfg = IntegrationConfig(t[0], t[-1], h)
    traj = integrate(rhs, np.zeros(3, dtype=complex), cfg)
    return ModeAmplitudes(traj.t, traj.states)


def linearized_deviation(schedule: PulseSchedule, params: SystemParams, t_grid) -> ModeAmplitudes:
    """
    Integrate the full linearized deviation ``dpsi`` and project it on the moving modes.

    Unlike :func:`mode_amplitudes_ode` this keeps the coupling generated by
    the rotation of the modes themselves; the difference between the two is a
    measure of that non-adiabatic mode mixing.
    """
    t = np.asarray(t_grid, dtype=float)
    h = _uniform_step(t)

    def rhs(tt, x):
        sample = schedule.sample(tt)
        cpt = nonlinear_cpt(sample)
        m = build_stability_matrix(sample, params, cpt)
        return -1j * (m @ x) - cpt.state_dot.real

    traj = integrate(rhs, np.zeros(3, dtype=complex), IntegrationConfig(t[0], t[-1], h))
    c = np.array([normal_modes(schedule.sample(tt), params).vectors @ x
                  for tt, x in zip(traj.t, traj.states)])
    return ModeAmplitudes(traj.t, c)


def r_nl_exact(c_plus, c_minus):
    """``sqrt(|c_+|^2 + |c_-|^2) / 2``; accepts scalars or arrays."""
    return 0.5 * np.sqrt(np.abs(c_plus) ** 2 + np.abs(c_minus) ** 2)


def r_nl_closed(sample: PulseSample, params: SystemParams = SystemParams()) -> float:
    """
    Closed-form nonlinear adiabaticity parameter at zero one-photon detuning.

    ``r_nl = |chi_dot| / (1 + sqrt(1 + 8 chi^2)) / (Oeff_nl / 2)``.
    """
    if params.delta != 0:
        raise UnsupportedDetuning("the closed form of r_nl requires delta = 0")
    chi, chi_dot = mixing_ratio(sample)
    eff = math.sqrt(sample.omega_d**2 + 8.0 * sample.omega_p**2)
    return abs(chi_dot) / (1.0 + math.sqrt(1.0 + 8.0 * chi * chi)) / (0.5 * eff)


def r_nl_stationary_phase(sample: PulseSample, params: SystemParams = SystemParams()) -> float:
    """
    ``r_nl`` assembled from the normal-mode constants, valid at any detuning.

    ``0.5 * sqrt(N_+^2/w_+^2 + N_-^2/w_-^2) * |dOp Od - Op dOd| / (Od + Oeff_nl)``.
    Reduces to :func:`r_nl_closed` when ``delta == 0``.
    """
    cpt = nonlinear_cpt(sample)
    m = normal_modes(sample, params, cpt)
    num = abs(sample.omega_p_dot * sample.omega_d - sample.omega_p * sample.omega_d_dot)
    pref = math.sqrt((m.n_plus / m.omega_plus) ** 2 + (m.n_minus / m.omega_minus) ** 2)
    return 0.5 * pref * num / (sample.omega_d + cpt.omega_eff_nl)


def stationary_phase_amplitude(sample: PulseSample, modes: NormalModeSet, t: float) -> tuple[complex, complex]:
    """
    Approximate ``(c_+, c_-)`` by pulling the source out of the integral.

    ``c_pm = -(w_pm . dPsi0/dt) (1 - exp(-i omega_pm t)) / (i omega_pm)`` where
    ``t`` is the time elapsed since the amplitudes were zero.
    """
    cpt = nonlinear_cpt(sample)
    out = []
    for w, om in ((modes.w_plus, modes.omega_plus), (modes.w_minus, modes.omega_minus)):
        s = float(np.dot(w, cpt.state_dot.real))
        out.append(-s * (1.0 - np.exp(-1j * om * t)) / (1j * om))
    return out[0], out[1]


@dataclass
class AdiabaticityTrace:
    t: np.ndarray
    chi: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray
    r_nl_exact: np.ndarray
    r_nl_ode: np.ndarray
    r_nl_closed: np.ndarray | None
    r_lin: np.ndarray


def adiabaticity_trace(schedule: PulseSchedule, params: SystemParams, t_grid,
                       kernel: str = "accumulated", closed: bool = True) -> AdiabaticityTrace:
    """
    Sample every adiabaticity measure on ``t_grid``.

    ``r_nl_exact`` comes from quadrature, ``r_nl_ode`` from the projected mode
    equations. ``r_nl_closed`` is only available at zero detuning.

    Raises
    ------
    UnsupportedDetuning
        If ``closed`` is requested with nonzero detuning.
    """
    if closed and params.delta != 0:
        raise UnsupportedDetuning("the closed form of r_nl requires delta = 0")
    t = np.asarray(t_grid, dtype=float)
    quad = mode_amplitudes_quadrature(schedule, params, t, kernel)
    ode = mode_amplitudes_ode(schedule, params, t)
    samples = [schedule.sample(float(tt)) for tt in t]
    chi = np.array([mixing_ratio(s)[0] for s in samples])
    rl = np.array([r_lin(s) for s in samples])
    rc = np.array([r_nl_closed(s, params) for s in samples]) if closed else None
    return AdiabaticityTrace(t, chi, quad.c_plus, quad.c_minus, quad.r_nl, ode.r_nl, rc, rl)
