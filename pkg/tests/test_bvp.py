"""Finite-difference oracle: convergence to the analytic amplitudes."""

import math

import numpy as np
import pytest

from screened_casimir import (Grid1D, Medium, ParameterError, SphericalSetup,
                              coefficient_D_plates, lambda_eps_l,
                              make_planar_grid, planar_tail_coefficient,
                              radial_lambda_from_bvp, solve_planar_bvp,
                              solve_radial_bvp)


class TestPlanarBvp:
    def test_uniform_vacuum_point_response(self):
        # no interfaces, no charges: phi = (2 pi / q) e^{-q |z - z0|}
        medium = Medium(1.0, 0.0)
        q, a, z0 = 1.0, 1.0, -2.0
        grid = make_planar_grid(medium, q, a, z0, nodes_per_gap=100)
        solution = solve_planar_bvp(medium, q, a, z0, grid)
        z = grid.nodes
        inside = (z > z0 + 0.5) & (z < grid.z_max - 1.0) & (np.abs(z - z0) > 0.3)
        exact = (2 * math.pi / q) * np.exp(-q * np.abs(z[inside] - z0))
        assert np.max(np.abs(solution.phi[inside] - exact) / exact) < 2e-4

    def test_tail_amplitude_within_one_percent(self):
        medium = Medium(2.0, 1.0)
        q, a, z0 = 1.0, 1.0, -0.5
        d_exact = float(coefficient_D_plates(medium, q, a))
        d_fd = planar_tail_coefficient(medium, q, a, z0, nodes_per_gap=200)
        assert d_fd == pytest.approx(d_exact, rel=1e-2)

    def test_second_order_convergence(self):
        medium = Medium(2.0, 1.0)
        q, a, z0 = 1.0, 1.0, -0.5
        d_exact = float(coefficient_D_plates(medium, q, a))
        errors = []
        for nodes in (100, 200, 400):
            d_fd = planar_tail_coefficient(medium, q, a, z0, nodes_per_gap=nodes)
            errors.append(abs(d_fd - d_exact) / d_exact)
        orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
        for order in orders:
            assert 1.8 <= order <= 2.2

    def test_positive_solution(self):
        medium = Medium(3.0, 0.5)
        grid = make_planar_grid(medium, 0.7, 1.0, -1.0, nodes_per_gap=80)
        solution = solve_planar_bvp(medium, 0.7, 1.0, -1.0, grid)
        assert np.all(solution.phi > 0.0)

    def test_reciprocity(self):
        # source at z0 observed at z1 vs source at z1 observed at z0,
        # both points inside the same (left) medium
        medium = Medium(2.0, 0.8)
        q, a = 1.0, 1.0
        grid = make_planar_grid(medium, q, a, -2.0, nodes_per_gap=100)
        h = grid.h
        z0, z1 = -2.0, -1.0
        sol_a = solve_planar_bvp(medium, q, a, z0, grid)
        sol_b = solve_planar_bvp(medium, q, a, z1, grid)
        j1 = int(round((z1 - grid.z_min) / h))
        j0 = int(round((z0 - grid.z_min) / h))
        assert sol_a.phi[j1] == pytest.approx(sol_b.phi[j0], rel=1e-9)

    def test_grid_validation(self):
        medium = Medium(2.0, 1.0)
        grid = Grid1D(-5.0, 6.0, 221)
        with pytest.raises(ParameterError):
            solve_planar_bvp(medium, 1.0, 1.0, 0.5, grid)   # source in gap
        with pytest.raises(ParameterError):
            solve_planar_bvp(medium, 1.0, 10.0, -1.0, grid)  # gap beyond grid

    def test_coarse_grid_warns(self):
        # screening length far below the grid step: interface flux cannot
        # be represented and the solver must say so
        medium = Medium(2.0, 20.0)
        grid = make_planar_grid(medium, 1.0, 1.0, -0.5, nodes_per_gap=4)
        with pytest.warns(RuntimeWarning):
            solve_planar_bvp(medium, 1.0, 1.0, -0.5, grid)


class TestRadialBvp:
    def test_laplace_tail_power_law(self):
        # no charges, eps = 1 everywhere: beyond the source the solution
        # decays as r^-(l+1)
        medium = Medium(1.0, 0.0)
        l, a, b = 2, 0.5, 1.0
        m = 200
        h = b / m
        n = int(round(1.55 * b / h)) - 1
        grid = Grid1D(h, n * h, n)
        r_source = round(1.4 * b / h) * h
        solution = solve_radial_bvp(medium, l, a, b, grid, r_source)
        r = grid.nodes
        window = (r > r_source + 3 * h) & (r < grid.z_max - 3 * h)
        scaled = solution.phi[window] * r[window] ** (l + 1)
        assert np.std(scaled) / np.mean(scaled) < 1e-3

    @pytest.mark.parametrize("eps,ke", [(5.0, 0.5), (2.0, 0.0), (3.0, 2.0)])
    def test_lambda_within_two_percent(self, eps, ke):
        medium = Medium(eps, ke)
        l, a, b = 1, 0.5, 1.0
        lam_exact = lambda_eps_l(SphericalSetup(medium, a, b), l).lam
        lam_fd = radial_lambda_from_bvp(medium, l, a, b, nodes=400)
        assert lam_fd == pytest.approx(lam_exact, rel=2e-2)

    def test_second_order_convergence(self):
        medium = Medium(5.0, 0.5)
        l, a, b = 1, 0.5, 1.0
        lam_exact = lambda_eps_l(SphericalSetup(medium, a, b), l).lam
        errors = []
        for nodes in (400, 800, 1600):
            lam_fd = radial_lambda_from_bvp(medium, l, a, b, nodes=nodes)
            errors.append(abs(lam_fd - lam_exact) / lam_exact)
        orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
        for order in orders:
            assert 1.8 <= order <= 2.2

    def test_higher_multipole(self):
        medium = Medium(5.0, 0.5)
        l, a, b = 2, 0.5, 1.0
        lam_exact = lambda_eps_l(SphericalSetup(medium, a, b), l).lam
        lam_fd = radial_lambda_from_bvp(medium, l, a, b, nodes=800)
        assert lam_fd == pytest.approx(lam_exact, rel=1e-2)

    def test_source_must_be_outside(self):
        medium = Medium(2.0, 0.5)
        grid = Grid1D(0.01, 1.55, 155)
        with pytest.raises(ParameterError):
            solve_radial_bvp(medium, 1, 0.5, 1.0, grid, 0.8)
