"""Command-line entry point: ``gravlimit <subcommand> [options]``.

Exit codes: 0 success, 2 usage or configuration error, 1 numerical failure
(partial diagnostics are printed as JSON on stdout).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

import numpy as np

from . import svg
from .curvature import FourVector, PathSpec, response_first_principles
from .errors import ConfigError, DomainError, NumericalError
from .kernels import TrackingMode, b_angular_oracle, b_closed
from .limits import (MeasurementConfig, crossover_mass, noise_budget)
from .simulate import (SynthesisSpec, estimate_psd, load_series, save_series,
                       spec_from_metadata, synthesize)
from .timedomain import B_time, b_time
from .units import (PhysicalConstants, UnitSystem, derive_planck_units, load_constants)

KERNEL_COLUMNS = ("x", "b_closed", "b_oracle", "abs_diff")
TIMEDOMAIN_COLUMNS = ("t", "b_regular", "B")
BUDGET_COLUMNS = ("omega", "sql", "vql", "gql", "dominant", "dominant_ultimate")
PSD_COLUMNS = ("omega", "estimate", "target", "lower3sigma", "upper3sigma")
DEFAULT_DIRECTION = (1.0, 2.0, 2.0)


class UsageError(Exception):
    pass


def _fmt(value):
    if isinstance(value, str):
        return value
    return f"{float(value):.17g}"


def _write_csv(fh, columns, rows):
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(_fmt(v) for v in row) + "\n")


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _grid(lo, hi, points, log):
    if points < 1:
        raise UsageError("--points must be at least 1")
    if log:
        if lo <= 0 or hi <= 0:
            raise UsageError("log grids need positive bounds")
        return np.logspace(math.log10(lo), math.log10(hi), points)
    return np.linspace(lo, hi, points)


def _constants(args, default_system):
    system = UnitSystem.parse(args.units or default_system)
    overrides = {"hbar": args.hbar, "c": args.c, "G": args.G}
    if system is UnitSystem.NATURAL:
        if any(v is not None for v in overrides.values()) or args.config:
            raise UsageError("constant overrides only apply with --units SI")
        return system, PhysicalConstants.natural()
    return system, load_constants(args.config, **overrides)


def _units_tag(system):
    return "natural" if system is UnitSystem.NATURAL else "SI"


# -- subcommands ---------------------------------------------------------------------

def cmd_kernel(args):
    _constants(args, "natural")  # b is dimensionless; validates the unit options only
    mode = TrackingMode.parse(args.mode)
    xs = _grid(args.x_min, args.x_max, args.points, args.log)
    closed = b_closed(mode, xs)
    rows, oracle = [], []
    for x, bc in zip(xs, closed):
        try:
            bo = b_angular_oracle(mode, x, args.tol)
        except NumericalError as exc:
            exc.diagnostics.update(x=float(x), rows_completed=len(rows))
            raise
        oracle.append(bo)
        rows.append((x, bc, bo, abs(bc - bo)))
    with _output(args.output) as fh:
        _write_csv(fh, KERNEL_COLUMNS, rows)
    if args.svg:
        svg.write(args.svg, svg.line_plot(
            [(xs, closed, "closed form"), (xs, oracle, "angular quadrature")],
            log_x=args.log, title=f"response kernel ({mode.label})", xlabel="omega tau",
            ylabel="b"))


def cmd_timedomain(args):
    system, _ = _constants(args, "natural")
    mode = TrackingMode.parse(args.mode)
    if args.t_min is None:
        args.t_min = -3.0 * args.tau
    if args.t_max is None:
        args.t_max = 3.0 * args.tau
    b, B = b_time(mode, args.tau), B_time(mode, args.tau)
    ts = _grid(args.t_min, args.t_max, args.points, False)
    rows = list(zip(ts, b(ts), B(ts)))
    with _output(args.output) as fh:
        _write_csv(fh, TIMEDOMAIN_COLUMNS, rows)
    sidecar = args.impulses or (args.output + ".impulses.json" if args.output not in (None, "-")
                                else None)
    if sidecar:
        time_unit = "s" if system is UnitSystem.SI else "t_P"
        payload = {
            "mode": mode.label,
            "tau": args.tau,
            "impulses": [{"location": i.location, "weight": i.weight} for i in b.impulses],
            "units": {"system": _units_tag(system), "tau": time_unit, "location": time_unit,
                      "weight": "1", "b_regular": f"1/{time_unit}", "B": "1"},
        }
        with open(sidecar, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    if args.svg:
        svg.write(args.svg, svg.line_plot([(ts, b(ts), "b regular"), (ts, B(ts), "B")],
                                          title=f"commutator functions ({mode.label})",
                                          xlabel="t", ylabel="value"))


def cmd_first_principles(args):
    system, constants = _constants(args, "natural")
    l_p = derive_planck_units(constants).length_p
    mode = TrackingMode.parse(args.mode)
    path = PathSpec(mode, FourVector.null(args.direction), args.tau)
    spectral_unit = "m^2 s" if system is UnitSystem.SI else "l_P^2 t_P"
    results = []
    for omega in args.omega:
        try:
            value = response_first_principles(path, omega, args.tol, l_p=l_p)
        except NumericalError as exc:
            exc.diagnostics.update(omega=omega, completed=results)
            raise
        oracle = l_p**2 * b_closed(mode, omega * args.tau) / omega
        results.append({
            "omega": omega, "value": value, "oracle": oracle,
            "rel_err": abs(value - oracle) / abs(oracle),
            "units": {"system": _units_tag(system),
                      "omega": "rad/s" if system is UnitSystem.SI else "1/t_P",
                      "value": spectral_unit, "oracle": spectral_unit, "rel_err": "1"},
        })
    with _output(args.output) as fh:
        json.dump(results[0] if len(results) == 1 else results, fh, indent=2)
        fh.write("\n")


def cmd_budget(args):
    system, constants = _constants(args, "SI")
    mass = args.mass
    if args.mass_planck is not None:
        mass = args.mass_planck * derive_planck_units(constants).mass_p
    if mass is None:
        raise UsageError("give --mass or --mass-planck")
    config = MeasurementConfig(mass=mass, tau=args.tau, phi=args.phi, mode=args.mode)
    omegas = _grid(args.omega_min, args.omega_max, args.points, args.log)
    budget = noise_budget(config, omegas, constants, envelope=args.envelope)
    with _output(args.output) as fh:
        _write_csv(fh, BUDGET_COLUMNS, budget.rows())
    if args.svg:
        svg.write(args.svg, svg.line_plot(
            [(omegas, budget.vql, "VQL"), (omegas, budget.gql, "GQL")],
            log_x=args.log, log_y=True, title="quantum limits", xlabel="omega",
            ylabel="spectral density"))


def cmd_crossover(args):
    system, constants = _constants(args, "SI")
    b_value = args.b
    if b_value is None:
        if args.omega is None:
            raise UsageError("give --b, or --omega (with --mode/--tau) to evaluate the kernel")
        b_value = float(b_closed(args.mode, args.omega * args.tau))
    m_star = crossover_mass(args.phi, b_value, constants)
    mp = derive_planck_units(constants).mass_p
    payload = {
        "phi": args.phi, "b": b_value, "m_star_kg": m_star, "m_star_over_planck": m_star / mp,
        "units": {"system": _units_tag(system), "phi": "1", "b": "1",
                  "m_star_kg": "kg" if system is UnitSystem.SI else "m_P",
                  "m_star_over_planck": "1"},
    }
    with _output(args.output) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def cmd_simulate(args):
    system, constants = _constants(args, "natural")
    if args.output in (None, "-"):
        raise UsageError("simulate needs --output for the sample file")
    mass = args.mass
    if args.mass_planck is not None:
        mass = args.mass_planck * derive_planck_units(constants).mass_p
    spec = SynthesisSpec(
        target=args.source.upper(), n_samples=args.n, dt=args.dt, seed=args.seed,
        omega_min=args.omega_min, mode=args.mode, tau=args.tau, mass=mass, phi=args.phi,
        constants=constants,
    )
    series = synthesize(spec)
    series.metadata["units"] = {"system": _units_tag(system),
                                "q": "m" if system is UnitSystem.SI else "l_P",
                                "t": "s" if system is UnitSystem.SI else "t_P"}
    save_series(args.output, series, args.format)


def cmd_psd(args):
    series = load_series(args.input)
    spec = spec_from_metadata(series.metadata)
    est = estimate_psd(series, args.segment, args.overlap)
    target = spec.symmetrized(est.omegas)
    lo, hi = est.bands(target)
    with _output(args.output) as fh:
        _write_csv(fh, PSD_COLUMNS, zip(est.omegas, est.values, target, lo, hi))
    if args.svg:
        svg.write(args.svg, svg.line_plot(
            [(est.omegas, est.values, "estimate"), (est.omegas, target, "target")],
            log_x=True, log_y=True, title=f"{spec.target} round trip", xlabel="omega",
            ylabel="symmetrized density"))


# -- parser --------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", choices=["SI", "si", "natural"], default=None,
                        help="unit system (default depends on the subcommand)")
    common.add_argument("--config", default=None,
                        help="JSON file overriding hbar/c/G (default: $GRAVLIMIT_CONFIG)")
    common.add_argument("--hbar", type=float, default=None)
    common.add_argument("--c", type=float, default=None)
    common.add_argument("--G", type=float, default=None)
    common.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    modes = ["one-way", "two-way"]
    parser = argparse.ArgumentParser(prog="gravlimit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="closed form vs quadrature of b[x]")
    p.add_argument("--mode", choices=modes, required=True)
    p.add_argument("--x-min", type=float, default=0.01)
    p.add_argument("--x-max", type=float, default=100.0)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--log", action="store_true")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("timedomain", parents=[common], help="commutator functions b(t), B(t)")
    p.add_argument("--mode", choices=modes, required=True)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--points", type=int, default=601)
    p.add_argument("--impulses", default=None, help="sidecar JSON for the Dirac impulses")
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_timedomain)

    p = sub.add_parser("first-principles", parents=[common],
                       help="spectrum from the curvature correlation, vs closed form")
    p.add_argument("--mode", choices=modes, required=True)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--omega", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--direction", type=float, nargs=3, default=DEFAULT_DIRECTION,
                   metavar=("NX", "NY", "NZ"))
    p.set_defaults(func=cmd_first_principles)

    p = sub.add_parser("budget", parents=[common], help="SQL / VQL / GQL table")
    p.add_argument("--mass", type=float, default=None, help="end-point mass")
    p.add_argument("--mass-planck", type=float, default=None, help="mass in Planck masses")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--phi", type=float, default=1.0)
    p.add_argument("--mode", choices=modes, default="two-way")
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--log", action="store_true")
    p.add_argument("--envelope", action="store_true",
                   help="use the high-frequency constant instead of the oscillating kernel")
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("crossover", parents=[common], help="mass where VQL equals GQL")
    p.add_argument("--phi", type=float, default=1.0)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--mode", choices=modes, default="two-way")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=None)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("simulate", parents=[common], help="synthesise a noise time series")
    p.add_argument("--source", choices=["gql", "vql", "sql", "GQL", "VQL", "SQL"], default="gql")
    p.add_argument("--mode", choices=modes, default="two-way")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--mass-planck", type=float, default=None)
    p.add_argument("--phi", type=float, default=1.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--format", choices=["csv", "bin"], default="bin")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("psd", parents=[common], help="Welch estimate of a simulated series")
    p.add_argument("--input", required=True)
    p.add_argument("--segment", type=int, default=4096)
    p.add_argument("--overlap", type=float, default=0.5)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_psd)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except NumericalError as exc:
        json.dump(exc.as_dict(), sys.stdout, indent=2, default=float)
        sys.stdout.write("\n")
        print(f"gravlimit: {exc}", file=sys.stderr)
        return 1
    except (UsageError, DomainError, ConfigError) as exc:
        print(f"gravlimit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
