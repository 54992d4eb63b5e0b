"""Cross-validation battery: every independent route the library offers.

Each check pits two implementations of the same physics against each
other (quadrature vs. series, closed form vs. linear solve, analytic
amplitude vs. finite differences, force vs. energy derivative) and
reports the worst relative disagreement against a pinned tolerance.
Shared by the command-line ``validate`` subcommand and the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bvp, planar, spherical
from .bessel import modified_spherical_bessel
from .core import Medium, SphericalSetup
from .quadrature import integrate_semi_infinite, polylog3, zeta3


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""

    def line(self):
        status = "pass" if self.passed else "FAIL"
        return (f"[{status}] {self.name:<28s} worst {self.worst:9.3e}"
                f"  (tol {self.tol:.0e}) {self.detail}")


@dataclass
class Battery:
    quick: bool = True
    inject_a_error: float = 0.0
    results: list = field(default_factory=list)

    def record(self, name, worst, tol, detail=""):
        self.results.append(CheckResult(name=name, passed=worst <= tol,
                                        worst=worst, tol=tol, detail=detail))

    @property
    def all_passed(self):
        return all(r.passed for r in self.results)


def _rel(x, ref):
    return abs(x - ref) / max(abs(ref), 1e-300)


def check_quadrature_closed_forms(battery):
    cases = [
        (lambda q: q * q * math.exp(-2.0 * q), 0.5, 0.25),          # Gamma(3)/2^3
        (lambda q: q * math.exp(-q), 1.0, 1.0),                      # Gamma(2)
        (lambda q: math.exp(-3.0 * q), 1.0 / 3.0, 1.0 / 3.0),        # Gamma(1)/3
        (lambda q: q**4 * math.exp(-q / 2.0), 2.0, 24.0 * 2.0**5),   # Gamma(5) 2^5
        (lambda q: 0.0, 1.0, 0.0),
    ]
    worst = 0.0
    for f, scale, exact in cases:
        res = integrate_semi_infinite(f, scale, 1e-12)
        err = abs(res.value - exact) / max(abs(exact), 1.0)
        worst = max(worst, err)
        if not res.converged:
            worst = math.inf
    battery.record("quadrature closed forms", worst, 1e-11)


def check_series_vs_quadrature(battery):
    # the conductor-limit integral int u^2 e^{-2u}/(1-e^{-2u}) du equals
    # zeta(3)/4: quadrature route against the series engine
    def integrand(u):
        em = math.exp(-2.0 * u)
        return u * u * em / (1.0 - em) if u > 0 else 0.0

    quad_value = integrate_semi_infinite(integrand, 0.5, 1e-12).value
    worst = _rel(quad_value, zeta3(1e-13) / 4.0)
    battery.record("series engine vs quadrature", worst, 1e-10)


def check_plates_dual_path(battery):
    grid = [(1.5, 0.0), (2.0, 0.0), (5.0, 0.0)]
    if not battery.quick:
        grid += [(20.0, 0.0)]
    worst = 0.0
    for eps, kappa in grid:
        result = planar.force_per_area_result(Medium(eps, kappa), 1.0, 1e-12)
        if result.series is None:
            worst = math.inf
            continue
        worst = max(worst, _rel(result.series_value, result.value))
    battery.record("plates quadrature vs series", worst, 1e-9)


def check_ionic_identity(battery):
    # free-ion route equals the full force exactly at eps = 1; an injected
    # reflection-factor error must break this identity
    worst = 0.0
    scale = 1.0 + battery.inject_a_error
    for kappa_a in (0.1, 1.0, 10.0):
        medium = Medium(1.0, kappa_a)
        ionic = planar.force_ionic_raw(medium, 1.0, 1e-12)

        def integrand(q, ke=kappa_a):
            qk = math.hypot(q, ke)
            a_refl = scale * ((qk - q) / (qk + q)) ** 2
            lam = a_refl * math.exp(-2.0 * q)
            return q * q * lam / (1.0 - lam)

        full = -integrate_semi_infinite(integrand, 2.0, 1e-12).value / (2 * math.pi)
        worst = max(worst, _rel(ionic, full))
    battery.record("ionic route = full force (eps=1)", worst, 1e-10)


def check_thermodynamic_consistency(battery):
    eps_grid = (1.5, 2.0, 5.0)
    kappa_grid = (0.0, 1.0, 5.0) if not battery.quick else (0.0, 1.0)
    worst = 0.0
    a = 1.0
    for eps in eps_grid:
        for kappa in kappa_grid:
            medium = Medium(eps, kappa)
            force = planar.force_per_area(medium, a, 1e-12)
            if force == 0.0:
                continue
            h = a * 1e-4
            dfda = (planar.free_energy_per_area(medium, a + h, 1e-12)
                    - planar.free_energy_per_area(medium, a - h, 1e-12)) / (2 * h)
            worst = max(worst, _rel(force, -dfda))
    battery.record("force = -dF/da (plates)", worst, 1e-5)


def check_particle_consistency(battery):
    worst = 0.0
    for eps, kappa in ((3.0, 0.0), (2.0, 2.0)):
        medium = Medium(eps, kappa)
        a, alpha = 1.0, 1.0
        force = planar.particle_force(medium, alpha, a, 1e-12)
        h = a * 1e-4
        dvda = (planar.particle_potential(medium, alpha, a + h, 1e-12)
                - planar.particle_potential(medium, alpha, a - h, 1e-12)) / (2 * h)
        worst = max(worst, _rel(force, -dvda))
    battery.record("particle force = -dV/da", worst, 1e-5)


def check_wronskians(battery):
    worst = 0.0
    orders = range(0, 21)
    for l in orders:
        for x in (0.1, 1.0, 10.0, 50.0):
            pair = modified_spherical_bessel(l, x)
            worst = max(worst, abs(pair.wronskian_combination() + math.pi / 2.0))
    battery.record("bessel wronskians", worst, 1e-10)


def check_sphere_dual_path(battery):
    eps_grid = (1.5, 2.0, 10.0)
    kb_grid = (0.0, 0.5, 5.0)
    l_grid = (1, 2, 10)
    ratio_grid = (0.2, 0.5, 0.9) if not battery.quick else (0.2, 0.9)
    worst = 0.0
    for eps in eps_grid:
        for kb in kb_grid:
            for ratio in ratio_grid:
                setup = SphericalSetup(Medium(eps, kb), ratio, 1.0)
                for l in l_grid:
                    closed = spherical.lambda_eps_l(setup, l).lam
                    solved = spherical.lambda_via_D(setup, l)
                    if closed == 0.0 and solved == 0.0:
                        continue
                    worst = max(worst, _rel(solved, closed))
    battery.record("sphere closed form vs solve", worst, 1e-10)


def check_sphere_static_limit(battery):
    worst = 0.0
    kb = 1e-4
    l_values = range(1, 11) if not battery.quick else (1, 2, 5, 10)
    for eps in (1.5, 2.0, 10.0):
        for ratio in (0.2, 0.5, 0.9):
            setup = SphericalSetup(Medium(eps, kb), ratio, 1.0)
            for l in l_values:
                lam = spherical.lambda_eps_l(setup, l).lam
                lam_static = spherical.lambda_static(eps, l, ratio, 1.0)
                worst = max(worst, _rel(lam, lam_static))
    battery.record("sphere static limit", worst, 1e-6)


def check_planar_bvp(battery):
    medium = Medium(2.0, 1.0)
    q, a, z0 = 1.0, 1.0, -0.5
    d_exact = float(planar.coefficient_D_plates(medium, q, a))
    nodes = 200
    d_coarse = bvp.planar_tail_coefficient(medium, q, a, z0, nodes)
    err_coarse = _rel(d_coarse, d_exact)
    battery.record("planar BVP amplitude", err_coarse, 1e-2)
    if not battery.quick:
        d_fine = bvp.planar_tail_coefficient(medium, q, a, z0, 2 * nodes)
        err_fine = _rel(d_fine, d_exact)
        order = math.log2(err_coarse / err_fine)
        battery.record("planar BVP order", abs(order - 2.0), 0.2,
                       detail=f"measured order {order:.3f}")


def check_radial_bvp(battery):
    medium = Medium(5.0, 0.5)
    l, a, b = 1, 0.5, 1.0
    lam_exact = spherical.lambda_eps_l(SphericalSetup(medium, a, b), l).lam
    lam_fd = bvp.radial_lambda_from_bvp(medium, l, a, b, nodes=400)
    battery.record("radial BVP eigenvalue", _rel(lam_fd, lam_exact), 2e-2)
    if not battery.quick:
        lam_fd2 = bvp.radial_lambda_from_bvp(medium, l, a, b, nodes=800)
        order = math.log2(_rel(lam_fd, lam_exact) / _rel(lam_fd2, lam_exact))
        battery.record("radial BVP order", abs(order - 2.0), 0.3,
                       detail=f"measured order {order:.3f}")


def check_limit_anchors(battery):
    # conductor limit of the plate force and the static polylog form
    a = 1.0
    conductor = planar.force_per_area(Medium(1.0, 1e4), a, 1e-12) * a**3
    worst = _rel(conductor, -zeta3(1e-13) / (8.0 * math.pi))
    battery.record("conductor-limit anchor", worst, 1e-3)
    static = planar.force_per_area(Medium(2.0, 0.0), a, 1e-12) * a**3
    ref = -polylog3((1.0 / 3.0) ** 2, 1e-13) / (8.0 * math.pi)
    battery.record("static polylog anchor", _rel(static, ref), 1e-8)


def check_correlation_vs_bvp(battery):
    medium = Medium(2.0, 1.0)
    q, a, z0 = 1.0, 1.0, -0.5
    grid = bvp.make_planar_grid(medium, q, a, z0, nodes_per_gap=200)
    solution = bvp.solve_planar_bvp(medium, q, a, z0, grid)
    z = grid.nodes
    worst = 0.0
    for z_obs in (1.5, 2.0, 3.0):
        j = int(np.argmin(np.abs(z - z_obs)))
        # the mode potential and the scaled correlation differ only by sign
        h_analytic = planar.correlation_hat(medium, q, float(z[j]), z0, a)
        worst = max(worst, _rel(-solution.phi[j], h_analytic))
    battery.record("correlation vs BVP", worst, 1e-2)


def run_battery(quick: bool = True, inject_a_error: float = 0.0) -> Battery:
    """Run every cross-check; returns the battery with recorded results."""
    battery = Battery(quick=quick, inject_a_error=inject_a_error)
    check_quadrature_closed_forms(battery)
    check_series_vs_quadrature(battery)
    check_plates_dual_path(battery)
    check_ionic_identity(battery)
    check_thermodynamic_consistency(battery)
    check_particle_consistency(battery)
    check_wronskians(battery)
    check_sphere_dual_path(battery)
    check_sphere_static_limit(battery)
    check_planar_bvp(battery)
    check_radial_bvp(battery)
    check_correlation_vs_bvp(battery)
    check_limit_anchors(battery)
    return battery
