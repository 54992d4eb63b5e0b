"""Command-line front end: single evaluations, parameter sweeps, validation.

Single evaluations print one flat JSON record echoing every resolved
input; sweeps stream CSV with one row per point and a status column.
Exit codes: 0 success, 1 validation failure, 2 invalid arguments,
3 non-convergence.  Outputs are deterministic: repeated invocations with
identical flags are bit-identical.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import planar, spherical, validation
from .core import ConvergenceError, Medium, ParameterError, SphericalSetup

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3

SWEEP_PARAMETERS = ("gap_a", "kappa_eps", "epsilon", "radius_ratio")


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter: name, closed range, point count and spacing."""

    parameter: str
    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ParameterError(f"unknown sweep parameter {self.parameter!r}")
        if not self.lo < self.hi:
            raise ParameterError(f"need lo < hi, got {self.lo} >= {self.hi}")
        if self.count < 2:
            raise ParameterError(f"need count >= 2, got {self.count}")
        if self.spacing not in ("linear", "log"):
            raise ParameterError(f"spacing must be linear or log, got {self.spacing}")
        if self.spacing == "log" and self.lo <= 0.0:
            raise ParameterError("log spacing requires lo > 0")

    def values(self):
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


def _fmt(x):
    return f"{x:.15e}"


def _emit(record, output, stream=None):
    stream = stream or sys.stdout
    if output == "json":
        print(json.dumps(record), file=stream)
    else:
        flat = _flatten(record)
        print(",".join(flat.keys()), file=stream)
        print(",".join(_fmt(v) if isinstance(v, float) else str(v)
                       for v in flat.values()), file=stream)


def _flatten(record, prefix=""):
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, prefix=f"{name}."))
        else:
            flat[name] = value
    return flat


def _plates_inputs(args):
    """Resolve (medium, gap) from dimensional or dimensionless flags."""
    if args.kappa_a is not None:
        if args.gap is not None or args.kappa_eps is not None:
            raise ParameterError("--kappa-a is exclusive with --gap/--kappa-eps")
        return Medium(args.epsilon, args.kappa_a), 1.0
    if args.gap is None or args.kappa_eps is None:
        raise ParameterError("provide --gap with --kappa-eps, or --kappa-a")
    return Medium(args.epsilon, args.kappa_eps), args.gap


def _cmd_plates_force(args):
    medium, gap = _plates_inputs(args)
    result = planar.force_per_area_result(medium, gap, args.tol)
    if not result.quadrature.converged:
        raise ConvergenceError("plates-force quadrature did not converge")
    record = {
        "inputs": {"epsilon": medium.epsilon, "kappa_eps": medium.kappa_eps,
                   "gap": gap, "tol": args.tol},
        "beta_f": result.value,
        "beta_f_a3": result.value * gap**3,
        "error_estimate": result.quadrature.abs_error_estimate / (2.0 * math.pi),
        "method_diagnostics": {
            "evaluations": result.quadrature.evaluations,
            "series_value": result.series_value,
            "series_terms": None if result.series is None else result.series.terms_used,
        },
    }
    _emit(record, args.output)
    return EXIT_OK


def _cmd_plates_energy(args):
    medium, gap = _plates_inputs(args)
    result = planar.free_energy_per_area_result(medium, gap, args.tol)
    record = {
        "inputs": {"epsilon": medium.epsilon, "kappa_eps": medium.kappa_eps,
                   "gap": gap, "tol": args.tol},
        "beta_F": result.value,
        "beta_F_a2": result.value * gap**2,
        "error_estimate": result.quadrature.abs_error_estimate / (4.0 * math.pi),
        "method_diagnostics": {"evaluations": result.quadrature.evaluations},
    }
    _emit(record, args.output)
    return EXIT_OK


def _cmd_particle_potential(args):
    medium, gap = _plates_inputs(args)
    result = planar.particle_potential_result(medium, args.alpha, gap, args.tol)
    record = {
        "inputs": {"epsilon": medium.epsilon, "kappa_eps": medium.kappa_eps,
                   "gap": gap, "alpha": args.alpha, "tol": args.tol},
        "beta_V": result.value,
        "beta_V_a3_per_alpha": (0.0 if args.alpha == 0.0
                                else result.value * gap**3 / args.alpha),
        "error_estimate": args.alpha * result.quadrature.abs_error_estimate,
        "method_diagnostics": {"evaluations": result.quadrature.evaluations},
    }
    _emit(record, args.output)
    return EXIT_OK


def _spheres_inputs(args):
    if args.radius_ratio is not None:
        if args.radius_a is not None or args.radius_b is not None:
            raise ParameterError(
                "--radius-ratio is exclusive with --radius-a/--radius-b")
        return SphericalSetup(Medium(args.epsilon, args.kappa_eps or 0.0),
                              args.radius_ratio, 1.0)
    if args.radius_a is None or args.radius_b is None:
        raise ParameterError("provide --radius-a and --radius-b, or --radius-ratio")
    return SphericalSetup(Medium(args.epsilon, args.kappa_eps or 0.0),
                          args.radius_a, args.radius_b)


def _cmd_spheres_energy(args):
    setup = _spheres_inputs(args)
    result = spherical.sphere_free_energy(setup, args.tol)
    record = {
        "inputs": {"epsilon": setup.medium.epsilon,
                   "kappa_eps": setup.medium.kappa_eps,
                   "radius_a": setup.radius_a, "radius_b": setup.radius_b,
                   "tol": args.tol},
        "beta_F": result.value,
        "error_estimate": result.tail_bound,
        "method_diagnostics": {"truncation_order_L": result.terms_used},
    }
    _emit(record, args.output)
    return EXIT_OK


def _cmd_correlation(args):
    medium = Medium(args.epsilon, args.kappa_eps)
    value = planar.correlation_hat(medium, args.q, args.z, args.z0, args.gap)
    record = {
        "inputs": {"epsilon": medium.epsilon, "kappa_eps": medium.kappa_eps,
                   "gap": args.gap, "q": args.q, "z": args.z, "z0": args.z0},
        "beta_h_hat_per_qc2": value,
        "error_estimate": 0.0,
        "method_diagnostics": {"closed_form": True},
    }
    _emit(record, args.output)
    return EXIT_OK


def _sweep_worker(args, spec, value):
    base = argparse.Namespace(**vars(args))
    if spec.parameter == "gap_a":
        base.gap = float(value)
    elif spec.parameter == "kappa_eps":
        base.kappa_eps = float(value)
    elif spec.parameter == "epsilon":
        base.epsilon = float(value)
    elif spec.parameter == "radius_ratio":
        base.radius_ratio = float(value)
    try:
        if args.target == "plates-force":
            medium, gap = _plates_inputs(base)
            result = planar.force_per_area_result(medium, gap, args.tol)
            return {"beta_f": result.value, "beta_f_a3": result.value * gap**3,
                    "error_estimate": result.quadrature.abs_error_estimate}, "ok"
        if args.target == "plates-energy":
            medium, gap = _plates_inputs(base)
            result = planar.free_energy_per_area_result(medium, gap, args.tol)
            return {"beta_F": result.value, "beta_F_a2": result.value * gap**2,
                    "error_estimate": result.quadrature.abs_error_estimate}, "ok"
        if args.target == "particle-potential":
            medium, gap = _plates_inputs(base)
            result = planar.particle_potential_result(medium, base.alpha, gap,
                                                      args.tol)
            scaled = (0.0 if base.alpha == 0.0
                      else result.value * gap**3 / base.alpha)
            return {"beta_V": result.value, "beta_V_a3_per_alpha": scaled,
                    "error_estimate": result.quadrature.abs_error_estimate}, "ok"
        if args.target == "spheres-energy":
            setup = _spheres_inputs(base)
            result = spherical.sphere_free_energy(setup, args.tol)
            return {"beta_F": result.value, "truncation_order_L": result.terms_used,
                    "error_estimate": result.tail_bound}, "ok"
        raise ParameterError(f"unknown sweep target {args.target!r}")
    except (ParameterError, ConvergenceError) as exc:
        return None, f"error:{type(exc).__name__}"


_SWEEP_COLUMNS = {
    "plates-force": ("beta_f", "beta_f_a3", "error_estimate"),
    "plates-energy": ("beta_F", "beta_F_a2", "error_estimate"),
    "particle-potential": ("beta_V", "beta_V_a3_per_alpha", "error_estimate"),
    "spheres-energy": ("beta_F", "truncation_order_L", "error_estimate"),
}


def _thread_count():
    raw = os.environ.get("CASIMIR_THREADS", "0")
    try:
        count = int(raw)
    except ValueError:
        count = 0
    if count <= 0:
        count = min(os.cpu_count() or 1, 8)
    return count


def _cmd_sweep(args):
    spec = SweepSpec(parameter=args.param, lo=args.lo, hi=args.hi,
                     count=args.count, spacing=args.spacing)
    if args.target == "spheres-energy" and spec.parameter == "gap_a":
        raise ParameterError("gap_a cannot be swept for spheres-energy")
    if args.target != "spheres-energy" and spec.parameter == "radius_ratio":
        raise ParameterError("radius_ratio applies only to spheres-energy")
    values = spec.values()
    workers = _thread_count()
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _sweep_worker(args, spec, v), values))
    else:
        rows = [_sweep_worker(args, spec, v) for v in values]
    columns = _SWEEP_COLUMNS[args.target]
    print(",".join((spec.parameter,) + columns + ("status",)))
    for value, (outputs, status) in zip(values, rows):
        if outputs is None:
            cells = [""] * len(columns)
        else:
            cells = [_fmt(float(outputs[c])) for c in columns]
        print(",".join([_fmt(float(value))] + cells + [status]))
    return EXIT_OK


def _cmd_validate(args):
    battery = validation.run_battery(quick=args.quick,
                                     inject_a_error=args.inject_a_error)
    for result in battery.results:
        print(result.line())
    if battery.all_passed:
        print(f"all {len(battery.results)} checks passed")
        return EXIT_OK
    failed = [r.name for r in battery.results if not r.passed]
    print(f"FAILED: {', '.join(failed)}")
    return EXIT_VALIDATION


def _add_common(parser):
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="relative tolerance (default 1e-10)")
    parser.add_argument("--output", choices=("json", "csv"), default="json",
                        help="output format for single evaluations")


def _add_plates_flags(parser):
    parser.add_argument("--epsilon", type=float, required=True,
                        help="relative permittivity, >= 1")
    parser.add_argument("--kappa-eps", dest="kappa_eps", type=float,
                        help="inverse screening length")
    parser.add_argument("--gap", type=float, help="vacuum gap width")
    parser.add_argument("--kappa-a", dest="kappa_a", type=float,
                        help="dimensionless mode: kappa_eps * gap with gap = 1")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="screened-casimir",
        description="High-temperature Casimir interactions of charged dielectrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plates-force", help="slab-slab force per unit area")
    _add_plates_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_plates_force)

    p = sub.add_parser("plates-energy", help="slab-slab free energy per unit area")
    _add_plates_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_plates_energy)

    p = sub.add_parser("particle-potential",
                       help="potential of a polarizable particle near a half-space")
    _add_plates_flags(p)
    p.add_argument("--alpha", type=float, required=True, help="polarizability")
    _add_common(p)
    p.set_defaults(func=_cmd_particle_potential)

    p = sub.add_parser("spheres-energy",
                       help="free energy of concentric spheres")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--kappa-eps", dest="kappa_eps", type=float, default=0.0)
    p.add_argument("--radius-a", dest="radius_a", type=float)
    p.add_argument("--radius-b", dest="radius_b", type=float)
    p.add_argument("--radius-ratio", dest="radius_ratio", type=float,
                   help="dimensionless mode: a/b with b = 1")
    _add_common(p)
    p.set_defaults(func=_cmd_spheres_energy)

    p = sub.add_parser("correlation", help="cross-gap pair correlation mode")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--kappa-eps", dest="kappa_eps", type=float, required=True)
    p.add_argument("--gap", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--z0", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_correlation)

    p = sub.add_parser("sweep", help="sweep one parameter, stream CSV")
    p.add_argument("--target", required=True, choices=tuple(_SWEEP_COLUMNS),
                   help="command to evaluate at each point")
    p.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--kappa-eps", dest="kappa_eps", type=float)
    p.add_argument("--gap", type=float)
    p.add_argument("--kappa-a", dest="kappa_a", type=float)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--radius-a", dest="radius_a", type=float)
    p.add_argument("--radius-b", dest="radius_b", type=float)
    p.add_argument("--radius-ratio", dest="radius_ratio", type=float)
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate", help="run the cross-validation battery")
    p.add_argument("--quick", action="store_true", help="reduced grids, < 10 s")
    p.add_argument("--inject-a-error", dest="inject_a_error", type=float,
                   default=0.0,
                   help="self-test hook: relative perturbation of the "
                        "reflection factor in one route, which must trip "
                        "the consistency checks")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
