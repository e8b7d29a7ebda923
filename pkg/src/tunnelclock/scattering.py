"""Stationary scattering on piecewise-constant potentials.

Fixed-energy solutions are built by matching plane/evanescent-wave
expansions region by region. The sweep runs from the transmitted side
toward the incident side so that every coefficient is obtained
multiplicatively; a forward substitution would reconstruct the small
coefficient of the growing exponential inside a barrier by cancellation
and lose it for opaque stacks. Each region's expansion is anchored at its
own left edge, so exponentials are bounded by region widths rather than
absolute positions, and an explicit log-scale guard covers extremely
opaque stacks (products of barrier growth factors beyond float range).

Conventions: unit amplitude incident from the left, purely outgoing wave
on the right. Far to the left psi = e^{ikz} + R e^{-ikz}, far to the
right psi = T e^{ikz}.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass

from .errors import (
    DegenerateEnergyError,
    InvalidParameterError,
    UndefinedPhaseError,
)
from .potentials import (
    NATURAL_UNITS,
    ClockRegion,
    PiecewiseConstantPotential,
    UnitsConfig,
)

__all__ = [
    "RegionWave",
    "ScatteringSolution",
    "PhasePair",
    "solve",
    "wavefunction_at",
    "wavefunction_derivative_at",
    "dwell_time",
    "phases",
    "transmission_phase",
    "reflection_phase",
]

# Rescale stored coefficients once they exceed this during the sweep.
_RESCALE_LIMIT = 1e120


def _scaled_exp(coef: complex, exponent: complex) -> complex:
    """coef * exp(exponent) without overflowing intermediate exponentials.

    Safe when coef is tiny while Re(exponent) is large, as happens for the
    growing-exponential coefficient deep inside an opaque barrier.
    """
    if coef == 0:
        return 0j
    mag = abs(coef)
    return (coef / mag) * cmath.exp(exponent + math.log(mag))


def _abs2_exp(coef: complex, exponent: float) -> float:
    """|coef|^2 * exp(exponent), safe against intermediate overflow."""
    if coef == 0:
        return 0.0
    return math.exp(2.0 * math.log(abs(coef)) + exponent)


@dataclass(frozen=True)
class RegionWave:
    """Expansion A e^{i kappa (z - anchor)} + B e^{-i kappa (z - anchor)}.

    Valid on [lo, hi); kappa is real for propagating regions and +iq for
    evanescent ones, so the A term always decays to the right and the B
    term always grows to the right inside a barrier.
    """

    lo: float
    hi: float
    anchor: float
    kappa: complex
    a: complex
    b: complex

    def value(self, z: float) -> complex:
        u = z - self.anchor
        return _scaled_exp(self.a, 1j * self.kappa * u) + _scaled_exp(
            self.b, -1j * self.kappa * u
        )

    def derivative(self, z: float) -> complex:
        u = z - self.anchor
        fwd = _scaled_exp(self.a, 1j * self.kappa * u)
        bwd = _scaled_exp(self.b, -1j * self.kappa * u)
        return 1j * self.kappa * (fwd - bwd)


@dataclass(frozen=True)
class ScatteringSolution:
    energy: float
    wavenumber: float
    transmission: complex
    reflection: complex
    regions: tuple[RegionWave, ...]
    breakpoints: tuple[float, ...]
    units: UnitsConfig


@dataclass(frozen=True)
class PhasePair:
    """Principal-branch arguments of the transmission and reflection amplitudes."""

    transmission: float
    reflection: float


def _local_kappa(energy: float, height: float, units: UnitsConfig) -> complex:
    ksq = 2.0 * units.mass * (energy - height)
    if ksq > 0.0:
        return complex(math.sqrt(ksq) / units.hbar, 0.0)
    return complex(0.0, math.sqrt(-ksq) / units.hbar)


def solve(
    potential: PiecewiseConstantPotential,
    energy: float,
    units: UnitsConfig = NATURAL_UNITS,
) -> ScatteringSolution:
    """Scatter a unit left-incident wave of the given energy.

    Raises DegenerateEnergyError when the energy exactly equals a region
    height (zero local wavenumber) and InvalidParameterError for
    non-positive energy.
    """
    if not (isinstance(energy, (int, float)) and math.isfinite(energy) and energy > 0):
        raise InvalidParameterError(f"energy must be positive and finite, got {energy}")
    for height in potential.heights:
        if energy == height:
            raise DegenerateEnergyError(
                f"energy {energy} equals a region height; local wavenumber vanishes"
            )

    bp = potential.breakpoints
    n = len(potential.heights)
    k = math.sqrt(2.0 * units.mass * energy) / units.hbar
    kappas = [complex(k)]
    kappas.extend(_local_kappa(energy, v, units) for v in potential.heights)
    kappas.append(complex(k))

    # Backward sweep: unit outgoing amplitude on the right, nothing incoming.
    stored: list[tuple[complex, complex]] = [(0j, 0j)] * (n + 2)
    logscale = [0.0] * (n + 2)
    amp_f, amp_b = 1.0 + 0j, 0j
    scale = 0.0
    stored[n + 1] = (amp_f, amp_b)
    for r in range(n, -1, -1):
        ratio = kappas[r + 1] / kappas[r]
        edge_f = 0.5 * ((1.0 + ratio) * amp_f + (1.0 - ratio) * amp_b)
        edge_b = 0.5 * ((1.0 - ratio) * amp_f + (1.0 + ratio) * amp_b)
        if r >= 1:
            width = bp[r] - bp[r - 1]
            amp_f = _scaled_exp(edge_f, -1j * kappas[r] * width)
            amp_b = _scaled_exp(edge_b, 1j * kappas[r] * width)
        else:
            amp_f, amp_b = edge_f, edge_b
        peak = max(abs(amp_f), abs(amp_b))
        if peak > _RESCALE_LIMIT:
            amp_f /= peak
            amp_b /= peak
            scale += math.log(peak)
        stored[r] = (amp_f, amp_b)
        logscale[r] = scale

    # Normalize to unit incident amplitude and to the global e^{ikz} phase
    # convention. logscale[0] is the largest scale, so the exponentials
    # below never overflow; they may underflow to zero in deep shadow.
    inc = stored[0][0]
    phase0 = cmath.exp(1j * k * bp[0])
    regions = []
    for r in range(n + 2):
        f, b = stored[r]
        factor = math.exp(logscale[r] - logscale[0]) / inc * phase0
        if r == 0:
            lo, hi, anchor = -math.inf, bp[0], bp[0]
        elif r <= n:
            lo, hi, anchor = bp[r - 1], bp[r], bp[r - 1]
        else:
            lo, hi, anchor = bp[-1], math.inf, bp[-1]
        regions.append(RegionWave(lo, hi, anchor, kappas[r], f * factor, b * factor))

    transmission = regions[-1].a * cmath.exp(-1j * k * bp[-1])
    reflection = regions[0].b * cmath.exp(1j * k * bp[0])
    return ScatteringSolution(
        energy=float(energy),
        wavenumber=k,
        transmission=transmission,
        reflection=reflection,
        regions=tuple(regions),
        breakpoints=bp,
        units=units,
    )


def _region_index(solution: ScatteringSolution, z: float) -> int:
    return bisect.bisect_right(solution.breakpoints, z)


def wavefunction_at(solution: ScatteringSolution, z: float) -> complex:
    """psi(z), using the half-open region convention at breakpoints."""
    return solution.regions[_region_index(solution, z)].value(z)


def wavefunction_derivative_at(solution: ScatteringSolution, z: float) -> complex:
    """d psi / dz at z, same region convention as wavefunction_at."""
    return solution.regions[_region_index(solution, z)].derivative(z)


def _density_integral(rw: RegionWave, u1: float, u2: float) -> float:
    """Integral of |psi|^2 over local coordinates [u1, u2] of one region."""
    a, b, kappa = rw.a, rw.b, rw.kappa
    du = u2 - u1
    if kappa.imag == 0.0:
        kr = kappa.real
        # |A|^2 + |B|^2 plus an oscillatory cross term; the half-angle form
        # of e^{2ik u2} - e^{2ik u1} avoids cancellation for small widths.
        cross = (
            2.0
            * math.sin(kr * du)
            / kr
            * (a * b.conjugate() * cmath.exp(1j * kr * (u1 + u2))).real
        )
        return (abs(a) ** 2 + abs(b) ** 2) * du + cross
    q = kappa.imag
    # Evanescent: |A|^2 e^{-2qu} + |B|^2 e^{2qu} + 2 Re(A conj(B)).
    term_a = _abs2_exp(a, -2.0 * q * u1) * (-math.expm1(-2.0 * q * du)) / (2.0 * q)
    if 2.0 * q * du < 1.0:
        term_b = _abs2_exp(b, 2.0 * q * u1) * math.expm1(2.0 * q * du) / (2.0 * q)
    else:
        term_b = (_abs2_exp(b, 2.0 * q * u2) - _abs2_exp(b, 2.0 * q * u1)) / (2.0 * q)
    cross = 2.0 * (a * b.conjugate()).real * du
    return term_a + term_b + cross


def dwell_time(solution: ScatteringSolution, region: ClockRegion) -> float:
    """Dwell time (m / (hbar k)) * integral of |psi|^2 over the region.

    Uses the exact per-region antiderivatives of the wave expansions, so
    the result is additive over adjacent regions up to rounding.
    """
    total = 0.0
    for rw in solution.regions:
        lo = max(rw.lo, region.z1)
        hi = min(rw.hi, region.z2)
        if hi <= lo:
            continue
        total += _density_integral(rw, lo - rw.anchor, hi - rw.anchor)
    u = solution.units
    return u.mass / (u.hbar * solution.wavenumber) * total


def transmission_phase(solution: ScatteringSolution) -> float:
    """Principal-branch argument of T; error if T is exactly zero."""
    if solution.transmission == 0:
        raise UndefinedPhaseError("transmission amplitude is exactly zero")
    return cmath.phase(solution.transmission)


def reflection_phase(solution: ScatteringSolution) -> float:
    """Principal-branch argument of R; error if R is exactly zero."""
    if solution.reflection == 0:
        raise UndefinedPhaseError("reflection amplitude is exactly zero")
    return cmath.phase(solution.reflection)


def phases(solution: ScatteringSolution) -> PhasePair:
    """Both principal-branch phases; error if either amplitude is exactly zero."""
    return PhasePair(transmission_phase(solution), reflection_phase(solution))
