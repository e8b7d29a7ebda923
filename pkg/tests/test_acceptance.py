"""Acceptance gate: one test per shipped correctness criterion.

Each test prints a single PASS/FAIL line (visible with pytest -s) and then
asserts, so the whole gate reads as a checklist. Criteria 4 and 6 encode
saturation targets that the bundled d=10 geometry provably cannot meet
(the nearest transmission resonance at d ~ 10.32 enhances the finite-width
correction by ~500x); they are implemented faithfully and left failing as
documentation of the measured behavior rather than weakened.
"""

import math
import warnings

import numpy as np
import pytest

from tunnelclock.checks import decomposition_suite
from tunnelclock.clocktimes import clock_times
from tunnelclock.closedform import (
    DoubleBarrierParams,
    asymptotic_agreement,
    near_resonance,
    opaque_limit_gap,
    perturbed_amplitude,
    times,
)
from tunnelclock.potentials import ClockRegion, double_barrier
from tunnelclock.rotor import (
    ClockRotor,
    basis_state,
    evolve,
    measurement_simulation,
    time_expectation,
)
from tunnelclock.scattering import solve

V0 = 0.018
GRID_E = (0.002, 0.005, 0.01, 0.015)
GRID_A = (5.0, 10.0, 30.0)
GRID_D = (1.0, 5.0, 10.0, 50.0)


def report(number, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number:>2} [{status}] {name}: {detail}")
    return ok


def grid_points():
    for E in GRID_E:
        for a in GRID_A:
            for d in GRID_D:
                yield DoubleBarrierParams(V0=V0, a=a, d=d, E=E)


def test_criterion_1_cross_route_equality():
    worst = 0.0
    compared = 0
    skipped = 0
    for params in grid_points():
        if near_resonance(params):
            skipped += 1
            continue
        closed = times(params).t_whole
        potential = double_barrier(params.V0, params.a, params.d)
        region = ClockRegion(0.0, 2.0 * params.a + params.d)
        result = clock_times(potential, region, params.E)
        dwell = result.dwell
        derivative = result.transmitted
        trio = (closed, dwell, derivative)
        for i in range(3):
            for j in range(i + 1, 3):
                rel = abs(trio[i] - trio[j]) / abs(trio[j])
                worst = max(worst, rel)
        compared += 1
    ok = worst <= 1e-6
    assert report(
        1,
        "cross-route equality",
        ok,
        f"max pairwise rel {worst:.3e} over {compared} grid points "
        f"({skipped} near-resonance points excluded), tolerance 1e-6",
    )


def test_criterion_2_dwell_decomposition():
    suite = decomposition_suite(count=500, seed=0)
    ok = suite.max_residual <= 1e-6
    assert report(
        2,
        "randomized dwell decomposition",
        ok,
        f"max residual {suite.max_residual:.3e} over 500 instances, "
        "tolerance 1e-6",
    )


def test_criterion_3_unitarity():
    suite = decomposition_suite(count=500, seed=0)
    worst = suite.max_unitarity_defect
    for params in grid_points():
        sol = solve(double_barrier(params.V0, params.a, params.d), params.E)
        defect = abs(
            abs(sol.transmission) ** 2 + abs(sol.reflection) ** 2 - 1.0
        )
        worst = max(worst, defect)
    ok = worst <= 1e-12
    assert report(
        3,
        "unitarity",
        ok,
        f"max defect {worst:.3e} over grid + 500 random instances, "
        "tolerance 1e-12",
    )


def test_criterion_4_opaque_saturation():
    params = DoubleBarrierParams(V0=V0, a=60.0, d=10.0, E=0.01)
    gap = opaque_limit_gap(params)
    ok = gap <= 1e-5
    assert report(
        4,
        "opaque saturation at a=60",
        ok,
        f"relative gap {gap:.3e}, tolerance 1e-5 "
        "(known failing: d=10 sits 0.32 below the resonance spacing, "
        "enhancing the e^{-2qa} correction ~500x; the gap only reaches "
        "1e-5 near a ~ 78)",
    )


def test_criterion_5_sum_identity():
    worst = 0.0
    for params in grid_points():
        t = times(params)
        rel = abs(t.t_whole - (t.t_between + t.t_barriers)) / abs(t.t_whole)
        worst = max(worst, rel)
    ok = worst <= 1e-12
    assert report(
        5,
        "whole = between + barriers",
        ok,
        f"max rel deviation {worst:.3e} over the criterion-1 grid, "
        "tolerance 1e-12",
    )


def test_criterion_6_preset_panels():
    ds = np.linspace(1.0, 100.0, 200)

    def t_between(a, d):
        return times(DoubleBarrierParams(V0=V0, a=a, d=d, E=0.01)).t_between

    # (i) between-gap time grows with spacing on the a=10 plateau
    grows = t_between(10.0, 80.0) > t_between(10.0, 8.0)

    # (ii) wider barriers sit below at every matched off-peak spacing
    below = True
    for d in ds:
        d = float(d)
        pa = DoubleBarrierParams(V0=V0, a=10.0, d=d, E=0.01)
        pb = DoubleBarrierParams(V0=V0, a=30.0, d=d, E=0.01)
        if near_resonance(pa) or near_resonance(pb):
            continue
        if not t_between(30.0, d) < t_between(10.0, d):
            below = False
            break

    # (iii) a=30 whole-region time within 1% of the opaque limit at every
    # off-peak spacing
    worst_gap = 0.0
    for d in ds:
        d = float(d)
        pb = DoubleBarrierParams(V0=V0, a=30.0, d=d, E=0.01)
        if near_resonance(pb):
            continue
        worst_gap = max(worst_gap, opaque_limit_gap(pb))
    saturated = worst_gap <= 1e-2

    ok = grows and below and saturated
    assert report(
        6,
        "preset panel properties",
        ok,
        f"growth {'PASS' if grows else 'FAIL'}, "
        f"wider-below {'PASS' if below else 'FAIL'}, "
        f"1% saturation {'PASS' if saturated else 'FAIL'} "
        f"(worst off-peak gap {worst_gap:.3e}; known failing: the "
        "between-gap time grows about linearly in the spacing, so the "
        "whole-region time drifts off the plateau percent-level bound "
        "for wide spacings regardless of peak exclusion)",
    )


def test_criterion_7_asymptotic_formula():
    vals = [
        asymptotic_agreement(DoubleBarrierParams(V0=V0, a=a, d=10.0, E=0.01))
        for a in (30.0, 40.0, 50.0)
    ]
    ok = vals[0] <= 1e-2 and vals[0] > vals[1] > vals[2]
    assert report(
        7,
        "wide-barrier asymptotic",
        ok,
        "deviations " + ", ".join(f"{v:.3e}" for v in vals)
        + " at a=30,40,50; need <= 1e-2 and strictly decreasing",
    )


def test_criterion_8_exponential_suppression():
    q = DoubleBarrierParams(V0=V0, a=30.0, d=10.0, E=0.01).q
    widths = np.linspace(30.0, 60.0, 31)
    logs = [
        math.log(
            times(DoubleBarrierParams(V0=V0, a=float(a), d=10.0, E=0.01)).t_between
        )
        for a in widths
    ]
    slope = float(np.polyfit(widths, logs, 1)[0])
    rel = abs(slope - (-2.0 * q)) / (2.0 * q)
    ok = rel <= 0.05
    assert report(
        8,
        "exponential suppression",
        ok,
        f"fit slope {slope:.6f} vs -2q = {-2.0 * q:.6f} "
        f"(rel {rel:.3e}), tolerance 5%",
    )


def test_criterion_9_rotor_exactness():
    rotor = ClockRotor(21, 1.0)
    vectors = np.column_stack(
        [basis_state(rotor, k).amplitudes for k in range(rotor.N)]
    )
    gram_dev = float(
        np.max(np.abs(vectors.conj().T @ vectors - np.eye(rotor.N)))
    )

    shift_dev = 0.0
    for k in range(rotor.N):
        for n in (1, 2, 7):
            stepped = evolve(rotor, basis_state(rotor, k), n * rotor.tau)
            target = basis_state(rotor, (k + n) % rotor.N)
            overlap = abs(
                np.vdot(target.amplitudes, stepped.amplitudes)
            )
            shift_dev = max(shift_dev, 1.0 - overlap)

    te_dev = 0.0
    for k in range(rotor.N):
        value = time_expectation(rotor, basis_state(rotor, k))
        te_dev = max(te_dev, abs(value - k * rotor.tau))

    ok = gram_dev <= 1e-12 and shift_dev <= 1e-12 and te_dev <= 1e-11
    assert report(
        9,
        "rotor exactness",
        ok,
        f"gram {gram_dev:.3e} (<=1e-12), rigid-shift {shift_dev:.3e} "
        f"(<=1e-12), pointer-time {te_dev:.3e} (exact to rounding)",
    )


def test_criterion_10_measurement_convergence():
    potential = double_barrier(V0, 10.0, 10.0)
    region = ClockRegion(0.0, 30.0)
    reference = clock_times(potential, region, 0.01).transmitted

    errors = []
    for step in range(4):
        tau = 25000.0 * 2.0**step
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # couplings are safely weak here
            result = measurement_simulation(
                potential, region, 0.01, ClockRotor(21, tau)
            )
        errors.append(abs(result.transmitted.t_read - reference))
    ratios = [errors[i] / errors[i + 1] for i in range(3)]
    final_rel = errors[-1] / reference
    ok = all(r >= 1.8 for r in ratios) and final_rel <= 1e-2
    assert report(
        10,
        "measurement convergence",
        ok,
        "error ratios per halving "
        + ", ".join(f"{r:.2f}" for r in ratios)
        + f" (need >= 1.8), final rel error {final_rel:.3e} (<= 1e-2)",
    )
