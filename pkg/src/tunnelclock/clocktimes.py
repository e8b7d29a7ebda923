"""Clock times from the coupling derivative of scattering phases.

The time a running clock accumulates while the particle occupies a region
equals minus hbar times the derivative of the scattered-wave phase with
respect to the strength of a constant potential shift applied over that
region, evaluated at zero shift. Transmission and reflection channels give
two such times; the dwell time comes from the independent density integral
so the weighted-average identity

    t_dwell = |T|^2 t_transmitted + |R|^2 t_reflected

is a genuine cross-check between two computations, never circular.

Derivatives are central differences in the shift strength with phase
differences mapped to the nearest branch, refined by Richardson
extrapolation over halved steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import scattering
from .errors import (
    DerivativeFailureError,
    InvalidParameterError,
    ResonanceError,
    TunnelClockError,
    UndefinedPhaseError,
)
from .potentials import (
    NATURAL_UNITS,
    ClockRegion,
    PiecewiseConstantPotential,
    UnitsConfig,
    perturb,
)

__all__ = [
    "PROB_FLOOR",
    "DerivativeSettings",
    "ClockTimes",
    "ProfilePoint",
    "clock_times",
    "dwell_decomposition_check",
    "time_vs_energy_profile",
]

# Channels with probability below this are reported as undefined instead of
# differentiating the phase of a vanishing amplitude.
PROB_FLOOR = 1e-12

# Wrapped phase differences must stay below this for unambiguous branch
# selection; the step is shrunk until they do.
_MAX_PHASE_DIFF = math.pi / 2


@dataclass(frozen=True)
class DerivativeSettings:
    """Step-size control for the phase derivative.

    base_step None means: 1e-4 times the smallest energy margin, i.e.
    min(E, min over region heights |E - V_r|), so the probe shift never
    drags the energy across a band edge. The factor balances roundoff
    against truncation: phase values carry ~1e-16 of noise, so a step of
    s puts ~1e-16/s of noise on the derivative, while the extrapolation
    removes the truncation a larger step costs. 1e-4 keeps the noise
    below 1e-9 even for margins of a few 1e-3.
    """

    base_step: float | None = None
    levels: int = 3
    rel_target: float = 1e-8

    def __post_init__(self) -> None:
        if self.base_step is not None:
            if not (math.isfinite(self.base_step) and self.base_step > 0):
                raise InvalidParameterError(
                    f"base_step must be positive and finite, got {self.base_step}"
                )
        if self.levels < 1:
            raise InvalidParameterError(f"levels must be >= 1, got {self.levels}")
        if not (math.isfinite(self.rel_target) and self.rel_target > 0):
            raise InvalidParameterError(
                f"rel_target must be positive and finite, got {self.rel_target}"
            )


@dataclass(frozen=True)
class ClockTimes:
    """Channel clock times plus the independently integrated dwell time.

    transmitted/reflected are None when the channel probability is below
    PROB_FLOOR (the phase of a vanishing amplitude carries no time).
    """

    transmitted: float | None
    reflected: float | None
    dwell: float
    transmission_prob: float
    reflection_prob: float


@dataclass(frozen=True)
class ProfilePoint:
    """One energy sample of a profile; error is set when times is None."""

    energy: float
    times: ClockTimes | None = None
    error: TunnelClockError | None = None


def _energy_margin(potential: PiecewiseConstantPotential, energy: float) -> float:
    margin = energy
    for height in potential.heights:
        gap = abs(energy - height)
        if gap < margin:
            margin = gap
    return margin


def _wrap(angle: float) -> float:
    # Nearest-branch representative in (-pi, pi].
    wrapped = math.remainder(angle, math.tau)
    if wrapped == -math.pi:
        wrapped = math.pi
    return wrapped


def _phase_derivative(
    phase_at: "callable",
    base_step: float,
    levels: int,
    rel_target: float,
) -> float:
    """Central-difference derivative of a phase with Richardson refinement.

    phase_at(s) must return the phase (any branch) at shift strength s.
    """
    step = base_step
    # Shrink until the coarsest wrapped difference is safely within one
    # branch; differences at halved steps can only be smaller.
    for _ in range(60):
        diff = _wrap(phase_at(step) - phase_at(-step))
        if abs(diff) < _MAX_PHASE_DIFF:
            break
        step /= 2.0
    else:
        raise DerivativeFailureError(
            "could not find a step with an unambiguous phase difference",
            diagnostics={"base_step": base_step, "final_step": step},
        )

    steps = [step / 2.0**i for i in range(levels)]
    table: list[list[float]] = []
    diagonal: list[float] = []
    for i, eps in enumerate(steps):
        if i == 0:
            row = [diff / (2.0 * eps)]
        else:
            row = [_wrap(phase_at(eps) - phase_at(-eps)) / (2.0 * eps)]
        for j in range(1, i + 1):
            weight = 4.0**j
            row.append((weight * row[j - 1] - table[i - 1][j - 1]) / (weight - 1.0))
        table.append(row)
        diagonal.append(row[-1])
        if i >= 1:
            scale = max(abs(diagonal[-1]), abs(diagonal[-2]), 1e-300)
            if abs(diagonal[-1] - diagonal[-2]) <= rel_target * scale:
                return diagonal[-1]

    if len(diagonal) >= 3:
        last = abs(diagonal[-1] - diagonal[-2])
        prev = abs(diagonal[-2] - diagonal[-3])
        scale = max(abs(diagonal[-1]), 1e-300)
        # Diverging corrections that leave the answer without even two
        # stable digits mean the expansion in the step is not converging;
        # smaller growing jitter near the rounding floor is tolerated.
        if last > prev and last > 1e-2 * scale:
            raise DerivativeFailureError(
                "Richardson corrections grow instead of shrinking",
                diagnostics={
                    "steps": steps,
                    "diagonal": diagonal,
                    "last_diff": last,
                    "prev_diff": prev,
                },
            )
    return diagonal[-1]


def clock_times(
    potential: PiecewiseConstantPotential,
    region: ClockRegion,
    energy: float,
    units: UnitsConfig = NATURAL_UNITS,
    settings: DerivativeSettings = DerivativeSettings(),
) -> ClockTimes:
    """Transmission/reflection clock times and the dwell time over region."""
    base = scattering.solve(potential, energy, units)
    trans_prob = abs(base.transmission) ** 2
    refl_prob = abs(base.reflection) ** 2
    dwell = scattering.dwell_time(base, region)

    if settings.base_step is None:
        margin = _energy_margin(potential, energy)
        base_step = 1e-4 * margin
    else:
        base_step = settings.base_step

    solutions: dict[float, scattering.ScatteringSolution] = {}

    def solution_at(shift: float) -> scattering.ScatteringSolution:
        if shift not in solutions:
            shifted = perturb(potential, region, shift)
            solutions[shift] = scattering.solve(shifted, energy, units)
        return solutions[shift]

    def channel_time(which: str) -> float:
        def phase_at(shift: float) -> float:
            sol = solution_at(shift)
            try:
                if which == "transmission":
                    return scattering.transmission_phase(sol)
                return scattering.reflection_phase(sol)
            except UndefinedPhaseError as exc:
                raise ResonanceError(
                    which,
                    f"{which} amplitude vanished at shift {shift}; "
                    "clock time undefined at this energy",
                ) from exc

        derivative = _phase_derivative(
            phase_at, base_step, settings.levels, settings.rel_target
        )
        return -units.hbar * derivative

    transmitted = channel_time("transmission") if trans_prob >= PROB_FLOOR else None
    reflected = channel_time("reflection") if refl_prob >= PROB_FLOOR else None

    return ClockTimes(
        transmitted=transmitted,
        reflected=reflected,
        dwell=dwell,
        transmission_prob=trans_prob,
        reflection_prob=refl_prob,
    )


def dwell_decomposition_check(
    potential: PiecewiseConstantPotential,
    region: ClockRegion,
    energy: float,
    units: UnitsConfig = NATURAL_UNITS,
    settings: DerivativeSettings = DerivativeSettings(),
) -> float:
    """Relative residual of the probability-weighted decomposition.

    Channels below PROB_FLOOR contribute at most prob * time ~ 1e-12 * t
    and are dropped along with their undefined times.
    """
    result = clock_times(potential, region, energy, units, settings)
    weighted = 0.0
    if result.transmitted is not None:
        weighted += result.transmission_prob * result.transmitted
    if result.reflected is not None:
        weighted += result.reflection_prob * result.reflected
    return abs(result.dwell - weighted) / result.dwell


def time_vs_energy_profile(
    potential: PiecewiseConstantPotential,
    region: ClockRegion,
    energies: "list[float]",
    units: UnitsConfig = NATURAL_UNITS,
    settings: DerivativeSettings = DerivativeSettings(),
) -> list[ProfilePoint]:
    """clock_times over an energy grid; per-point failures are recorded,
    not raised, so one resonant or degenerate energy cannot kill a sweep.
    Points come back sorted by energy."""
    points: list[ProfilePoint] = []
    for energy in sorted(energies):
        try:
            times = clock_times(potential, region, energy, units, settings)
        except TunnelClockError as exc:
            points.append(ProfilePoint(energy=energy, error=exc))
        else:
            points.append(ProfilePoint(energy=energy, times=times))
    return points
