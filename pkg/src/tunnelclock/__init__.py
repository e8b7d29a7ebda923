"""Tunneling times for piecewise-constant potentials.

Clock times from coupling derivatives of scattering phases, dwell-time
integrals, exact symmetric double-barrier expressions with opaque and
wide-barrier asymptotics, and a discrete N-level clock whose pointer
records the transit through a region.
"""

from .checks import (
    InstanceResult,
    RandomInstance,
    SuiteResult,
    decomposition_suite,
    random_scattering_instance,
)
from .clocktimes import (
    PROB_FLOOR,
    ClockTimes,
    DerivativeSettings,
    ProfilePoint,
    clock_times,
    dwell_decomposition_check,
    time_vs_energy_profile,
)
from .closedform import (
    NEAR_RESONANCE_CUTOFF,
    RESONANCE_DENOMINATOR_CUTOFF,
    AuxiliaryValues,
    DoubleBarrierParams,
    DoubleBarrierTimes,
    asymptotic_agreement,
    auxiliaries,
    near_resonance,
    opaque_limit_gap,
    perturbed_alpha_beta,
    perturbed_amplitude,
    perturbed_phase,
    resonance_proximity,
    times,
)
from .errors import (
    CouplingTooStrongError,
    CouplingWarning,
    DegenerateEnergyError,
    DerivativeFailureError,
    InvalidParameterError,
    InvalidPerturbationError,
    OpaqueUnderflowError,
    ResonanceError,
    TunnelClockError,
    UndefinedPhaseError,
    UndefinedReadingError,
)
from .potentials import (
    NATURAL_UNITS,
    ClockRegion,
    PiecewiseConstantPotential,
    UnitsConfig,
    double_barrier,
    evaluate,
    free_potential,
    perturb,
    reflected,
)
from .rotor import (
    COUPLING_WARNING_FRACTION,
    ClockRotor,
    ClockState,
    MeasurementResult,
    PointerReading,
    basis_state,
    evolve,
    measurement_simulation,
    read_pointer,
    time_expectation,
)
from .scattering import (
    PhasePair,
    RegionWave,
    ScatteringSolution,
    dwell_time,
    phases,
    reflection_phase,
    solve,
    transmission_phase,
    wavefunction_at,
    wavefunction_derivative_at,
)

__version__ = "0.1.0"

__all__ = [
    "InstanceResult",
    "RandomInstance",
    "SuiteResult",
    "decomposition_suite",
    "random_scattering_instance",
    "PROB_FLOOR",
    "ClockTimes",
    "DerivativeSettings",
    "ProfilePoint",
    "clock_times",
    "dwell_decomposition_check",
    "time_vs_energy_profile",
    "NEAR_RESONANCE_CUTOFF",
    "RESONANCE_DENOMINATOR_CUTOFF",
    "AuxiliaryValues",
    "DoubleBarrierParams",
    "DoubleBarrierTimes",
    "asymptotic_agreement",
    "auxiliaries",
    "near_resonance",
    "opaque_limit_gap",
    "perturbed_alpha_beta",
    "perturbed_amplitude",
    "perturbed_phase",
    "resonance_proximity",
    "times",
    "CouplingTooStrongError",
    "CouplingWarning",
    "DegenerateEnergyError",
    "DerivativeFailureError",
    "InvalidParameterError",
    "InvalidPerturbationError",
    "OpaqueUnderflowError",
    "ResonanceError",
    "TunnelClockError",
    "UndefinedPhaseError",
    "UndefinedReadingError",
    "NATURAL_UNITS",
    "ClockRegion",
    "PiecewiseConstantPotential",
    "UnitsConfig",
    "double_barrier",
    "evaluate",
    "free_potential",
    "perturb",
    "reflected",
    "COUPLING_WARNING_FRACTION",
    "ClockRotor",
    "ClockState",
    "MeasurementResult",
    "PointerReading",
    "basis_state",
    "evolve",
    "measurement_simulation",
    "read_pointer",
    "time_expectation",
    "PhasePair",
    "RegionWave",
    "ScatteringSolution",
    "dwell_time",
    "phases",
    "reflection_phase",
    "solve",
    "transmission_phase",
    "wavefunction_at",
    "wavefunction_derivative_at",
    "__version__",
]
