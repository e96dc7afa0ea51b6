"""Stimulated Raman adiabatic passage in linear and nonlinear (atom-molecule) Lambda systems."""

__version__ = "0.1.0"

from .integrator import IntegrationConfig, Trajectory, integrate
from .linear import LinearEigenSet, linear_cpt_state, linear_eigensystem, linear_rhs, r_lin
from .model import (
    DegeneratePulse,
    DynamicalInstability,
    FrozenPulses,
    GaussianPulsePair,
    NonFiniteState,
    PulseSample,
    StirapError,
    SystemParams,
    UnsupportedDetuning,
    effective_rabi_linear,
    effective_rabi_nonlinear,
    mixing_ratio,
    sample_pulses,
)
from .nonlinear import (
    CptPoint,
    Family,
    FixedPoint,
    atom_number,
    enumerate_fixed_points,
    meanfield_energy,
    meanfield_rhs,
    nonlinear_cpt,
)
from .simulate import simulate, summarize
from .stability import (
    NormalModeSet,
    adiabaticity_trace,
    build_stability_matrix,
    mode_amplitudes_ode,
    mode_amplitudes_quadrature,
    normal_modes,
    r_nl_closed,
    r_nl_exact,
    stationary_phase_amplitude,
    zero_mode_source,
)
