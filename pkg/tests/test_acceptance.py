"""Acceptance gate: one PASS/FAIL line per criterion (run with ``-s`` to see them)."""
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from gravlimit.curvature import FourVector, PathSpec, response_first_principles, riemann_mode_kernel
from gravlimit.kernels import TrackingMode, b_angular_oracle, b_closed
from gravlimit.limits import (MeasurementConfig, crossover_mass, noise_budget, sql_variance,
                              sql_variance_time, vacuum_force_spectrum, vql_spectrum)
from gravlimit.simulate import SynthesisSpec, estimate_psd, synthesize
from gravlimit.timedomain import B_time, b_time, gtf_fourier
from gravlimit.units import PhysicalConstants, derive_planck_units

pytestmark = pytest.mark.acceptance

MODES = (TrackingMode.ONE_WAY, TrackingMode.TWO_WAY)
SI = PhysicalConstants.codata2018()
NAT = PhysicalConstants.natural()


def report(name, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_c01_kernel_oracle_equivalence():
    xs = np.logspace(-2, 2, 50)
    start = time.perf_counter()
    worst = max(abs(b_angular_oracle(m, x) - float(b_closed(m, x))) for m in MODES for x in xs)
    elapsed = time.perf_counter() - start
    report("1 kernel oracle", worst <= 1e-10 and elapsed < 5.0,
           f"max |diff| = {worst:.2e} (<= 1e-10), runtime {elapsed:.2f} s (< 5 s)")


def test_c02_asymptotics():
    low = max(abs(float(b_closed(m, 1e-3)) / 1e-6 - 8 / 15) for m in MODES)
    avgs = {m: quad(lambda x: float(b_closed(m, x)), 1e3, 1e3 + math.pi, limit=200)[0] / math.pi
            for m in MODES}
    dev = max(abs(avgs[MODES[0]] - 8 / 3), abs(avgs[MODES[1]] - 1.0))
    report("2 asymptotics", low <= 1e-6 and dev <= 1e-2,
           f"|b/x^2 - 8/15| = {low:.2e} (<= 1e-6); oscillation averages "
           f"{avgs[MODES[0]]:.6f}, {avgs[MODES[1]]:.6f}, max dev {dev:.2e} (<= 1e-2)")


def test_c03_fourier_consistency():
    omegas = np.linspace(0.1, 30, 30)
    worst = 0.0
    for m in MODES:
        f = b_time(m, 1.0)
        for w in omegas:
            ref = float(b_closed(m, w))
            worst = max(worst, abs(gtf_fourier(f, w) - ref) / abs(ref))
    report("3 Fourier consistency", worst <= 1e-8, f"max rel err {worst:.2e} (<= 1e-8)")


def test_c04_commutator_step():
    one = B_time(TrackingMode.ONE_WAY, 1.0).right_limit(0.0)
    two_fn = B_time(TrackingMode.TWO_WAY, 1.0)
    two = two_fn.right_limit(0.0)
    jump = abs(two_fn.left_limit(2.0) - two_fn.right_limit(2.0))
    ok = one == 4 / 3 and two == 1 / 2 and abs(jump - 1 / 6) <= 1e-12
    report("4 commutator step", ok,
           f"B1(0+) = {one!r}, B2(0+) = {two!r}, |B2 jump at 2 tau| = {jump!r} (1/6 to 1e-12)")


def test_c05_first_principles():
    start = time.perf_counter()
    worst, worst_const = 0.0, 0.0
    direction = FourVector.null((0.3, -0.4, 0.866))
    for m in MODES:
        path = PathSpec(m, direction, 1.0)
        for x in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            value = response_first_principles(path, x)
            constant = value / (float(b_closed(m, x)) / x)
            worst_const = max(worst_const, abs(constant - 1.0))
            worst = max(worst, abs(constant - 1.0))
    elapsed = time.perf_counter() - start
    report("5 first principles", worst <= 1e-6 and elapsed < 60.0,
           f"required constant 1 +/- {worst_const:.2e} (rel err <= 1e-6), runtime {elapsed:.2f} s (< 60 s)")


def test_c06_tensor_suite():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for d, f in zip(rng.normal(size=(100, 3)), rng.uniform(0.1, 10.0, 100)):
        r = riemann_mode_kernel(FourVector.null(d, f))
        worst = max(worst, r.antisymmetry_error(), r.pair_symmetry_error(), r.cyclic_error())
    entry = float(riemann_mode_kernel(FourVector((1.0, 0.0, 0.0, 1.0))).entries[0, 1, 0, 1])
    report("6 tensor suite", worst <= 1e-12 and entry == -0.5,
           f"max symmetry error {worst:.2e} (<= 1e-12), R_0101 = {entry!r} (-1/2)")


def test_c07_planck_values():
    p = derive_planck_units(SI)
    dm, dl = abs(p.mass_p / 2.2e-8 - 1), abs(p.length_p / 1.6e-35 - 1)
    report("7 Planck values", dm <= 0.02 and dl <= 0.02,
           f"m_P = {p.mass_p:.5e} kg ({dm:.2%}), l_P = {p.length_p:.5e} m ({dl:.2%}), within 2%")


def test_c08a_crossover_value():
    mp = derive_planck_units(SI).mass_p
    rel = abs(crossover_mass(1.0, 1.0, SI) / (mp / math.sqrt(3 * math.pi)) - 1)
    report("8a crossover value", rel <= 1e-12, f"rel err {rel:.2e} (<= 1e-12)")


def test_c08b_dominance_flip():
    omegas = np.array([1e3])
    b = float(b_closed(TrackingMode.TWO_WAY, omegas[0]))
    m_star = crossover_mass(1.0, b, SI)
    below = noise_budget(MeasurementConfig(m_star * 0.99, 1.0), omegas, SI).dominant_ultimate[0]
    above = noise_budget(MeasurementConfig(m_star * 1.01, 1.0), omegas, SI).dominant_ultimate[0]
    report("8b dominance flip", (below, above) == ("VQL", "GQL"),
           f"dominant at 0.99 m* = {below}, at 1.01 m* = {above} (VQL -> GQL)")


def test_c08c_crossover_within_decade():
    mp = derive_planck_units(SI).mass_p
    grid = np.logspace(-1, 1, 9)
    ratios = np.array([[crossover_mass(phi, b, SI) / mp for b in grid] for phi in grid])
    ok = bool(np.all((ratios >= 0.1) & (ratios <= 10.0)))
    report("8c crossover within one decade of m_P", ok,
           f"m*/m_P spans [{ratios.min():.4f}, {ratios.max():.4f}] over phi, b in [0.1, 10] "
           f"(needs [0.1, 10])")


def test_c09_spectrum_identities():
    omegas = np.logspace(-3, 6, 100)
    m, phi = 3.7e-3, 0.8
    lhs = vql_spectrum(m, phi, omegas, SI)
    rhs = vacuum_force_spectrum(phi, omegas, SI) / (m**2 * omegas**4)
    rel = float(np.max(np.abs(lhs / rhs - 1)))
    exact = all(sql_variance(m, w, dw, SI) == sql_variance_time(m, dw / (2 * math.pi * w**2), SI)
                for w in (1.0, 628.3, 1e4) for dw in (0.1, 10.0))
    report("9 spectrum identities", rel <= 1e-14 and exact,
           f"VQL identity rel err {rel:.2e} (<= 1e-14), SQL variance identity exact: {exact}")


def test_c10_simulation_round_trip():
    n, dt = 2**20, 0.1
    spec = SynthesisSpec("GQL", n, dt, 42, 2 * math.pi / (n * dt), mode="two-way", tau=1.0,
                         constants=NAT)
    start = time.perf_counter()
    series = synthesize(spec)
    est = estimate_psd(series, 4096)
    target = spec.symmetrized(est.omegas)
    lo, hi = est.bands(target)
    frac = float(np.mean((est.values >= lo) & (est.values <= hi)))
    elapsed = time.perf_counter() - start
    same = synthesize(spec).samples.tobytes() == series.samples.tobytes()
    report("10 simulation round trip", frac >= 0.8 and same and elapsed < 10.0,
           f"{frac:.2%} of bins inside 3 sigma bands (>= 80%), byte-identical rerun: {same}, "
           f"runtime {elapsed:.2f} s (< 10 s)")
