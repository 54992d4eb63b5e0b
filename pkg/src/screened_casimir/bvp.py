"""Independent finite-difference solvers for the screened mode potentials.

These solvers discretize the screened Poisson problem directly and are
used only to validate the analytic interface algebra (transmitted
amplitudes and round-trip eigenvalues) from first principles; they share
nothing with the closed-form routes except the radial basis functions
used for boundary conditions and amplitude fits.

Both solvers use the conservative flux form (P u')' - V u = -source with
exactly integrated piecewise coefficients (harmonic mean of the flux
coefficient over each cell, exact cell averages of V), which keeps second
order accuracy when an interface falls between nodes.  The delta source
is a single-node load of weight 1/h.  Domain truncation uses Robin
conditions built from the exact logarithmic derivative of the decaying
solution, so the truncation error stays far below the discretization
error at modest domain sizes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .bessel import radial_basis
from .core import Medium, ParameterError, _require_positive, q_kappa


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of n nodes spanning [z_min, z_max] inclusive."""

    z_min: float
    z_max: float
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError(f"need n >= 3 nodes, got {self.n}")
        if not self.z_min < self.z_max:
            raise ParameterError(
                f"need z_min < z_max, got {self.z_min} >= {self.z_max}")

    @property
    def h(self):
        return (self.z_max - self.z_min) / (self.n - 1)

    @property
    def nodes(self):
        return np.linspace(self.z_min, self.z_max, self.n)


def _segment_integrals(lo, hi, breakpoints, values):
    """Integral of a piecewise-constant function over [lo, hi].

    breakpoints are the ordered interior jump locations; values has one
    entry per region (len(breakpoints) + 1).
    """
    edges = [-math.inf, *breakpoints, math.inf]
    total = 0.0
    for i, v in enumerate(values):
        x0, x1 = max(lo, edges[i]), min(hi, edges[i + 1])
        if x1 > x0:
            total += v * (x1 - x0)
    return total


def _solve_tridiag(lower, diag, upper, rhs):
    n = len(diag)
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1, :] = diag
    ab[2, :-1] = lower[1:]
    return solve_banded((1, 1), ab, rhs)


@dataclass(frozen=True)
class PlanarBvpSolution:
    """Sampled slab mode potential with its defining parameters."""

    grid: Grid1D
    phi: np.ndarray
    medium: Medium
    q: float
    gap_a: float
    z0: float

    def tail_amplitude(self):
        """Transmitted amplitude fitted on the decaying tail beyond the gap.

        The tail has the exact shape 2 pi e^{q_kappa z0} D e^{-q_kappa z};
        the fit averages D over the middle half of the region between the
        far interface and the domain edge.
        """
        qk = q_kappa(self.medium, self.q)
        z = self.grid.nodes
        lo = self.gap_a + 0.25 * (self.grid.z_max - self.gap_a)
        hi = self.gap_a + 0.75 * (self.grid.z_max - self.gap_a)
        window = (z >= lo) & (z <= hi)
        d_samples = self.phi[window] * np.exp(qk * (z[window] - self.z0)) / (2 * np.pi)
        return float(np.mean(d_samples))


def solve_planar_bvp(medium: Medium, q: float, gap_a: float, z0: float,
                     grid: Grid1D) -> PlanarBvpSolution:
    """Second-order finite-difference solve of the slab mode equation.

    Discretizes (eps(z) phi')' - eps(z) (q^2 + kappa_eps(z)^2) phi
    = -4 pi delta(z - z0) on the grid, with outgoing Robin conditions
    phi' = +/- q_kappa phi at the domain ends.  z0 must coincide with a
    grid node.  A warning is issued if the one-sided flux mismatch at an
    interface suggests the grid is too coarse.
    """
    _require_positive("q", q)
    _require_positive("gap_a", gap_a)
    if not (grid.z_min < 0.0 < gap_a < grid.z_max):
        raise ParameterError("grid must satisfy z_min < 0 < gap_a < z_max")
    if not grid.z_min < z0 < 0.0:
        raise ParameterError(f"z0 must lie in (z_min, 0), got {z0}")
    z = grid.nodes
    h = grid.h
    i0 = int(round((z0 - grid.z_min) / h))
    if abs(z[i0] - z0) > 1e-9 * max(1.0, abs(z0)):
        raise ParameterError(
            f"z0 must be a grid node; nearest node {z[i0]} differs from {z0}")

    eps = medium.epsilon
    ke2 = medium.kappa_eps ** 2
    breaks = (0.0, gap_a)
    eps_regions = (eps, 1.0, eps)
    inv_eps_regions = (1.0 / eps, 1.0, 1.0 / eps)
    v_regions = (eps * (q * q + ke2), q * q, eps * (q * q + ke2))

    mid_lo = z[:-1]
    mid_hi = z[1:]
    p_half = np.array([h / _segment_integrals(lo, hi, breaks, inv_eps_regions)
                       for lo, hi in zip(mid_lo, mid_hi)])
    v = np.array([_segment_integrals(zi - h / 2, zi + h / 2, breaks, v_regions) / h
                  for zi in z])

    n = grid.n
    lower = np.zeros(n)
    diag = np.zeros(n)
    upper = np.zeros(n)
    diag[1:-1] = -(p_half[:-1] + p_half[1:]) / h**2 - v[1:-1]
    lower[1:-1] = p_half[:-1] / h**2
    upper[1:-1] = p_half[1:] / h**2

    qk = q_kappa(medium, q)
    # left end: phi ~ e^{+qk z}, ghost node phi_{-1} = phi_1 - 2 h qk phi_0
    p_ghost_l = h / _segment_integrals(z[0] - h, z[0], breaks, inv_eps_regions)
    diag[0] = -(p_ghost_l + p_half[0]) / h**2 - v[0] - 2.0 * qk * p_ghost_l / h
    upper[0] = (p_half[0] + p_ghost_l) / h**2
    # right end: phi ~ e^{-qk z}
    p_ghost_r = h / _segment_integrals(z[-1], z[-1] + h, breaks, inv_eps_regions)
    diag[-1] = -(p_half[-1] + p_ghost_r) / h**2 - v[-1] - 2.0 * qk * p_ghost_r / h
    lower[-1] = (p_half[-1] + p_ghost_r) / h**2

    rhs = np.zeros(n)
    rhs[i0] = -4.0 * math.pi / h

    phi = _solve_tridiag(lower, diag, upper, rhs)
    _warn_if_interface_unresolved(z, phi, eps, (0.0, gap_a), h)
    return PlanarBvpSolution(grid=grid, phi=phi, medium=medium, q=q,
                             gap_a=gap_a, z0=z0)


def _warn_if_interface_unresolved(z, phi, eps, interfaces, h):
    for zi in interfaces:
        j = int(np.argmin(np.abs(z - zi)))
        if j < 2 or j > len(z) - 3:
            continue
        # one-sided second-order d(phi)/dz on each side of the interface
        left = (3 * phi[j] - 4 * phi[j - 1] + phi[j - 2]) / (2 * h)
        right = (-3 * phi[j] + 4 * phi[j + 1] - phi[j + 2]) / (2 * h)
        eps_left = eps if zi <= 0.0 else 1.0
        eps_right = 1.0 if zi <= 0.0 else eps
        flux_l, flux_r = eps_left * left, eps_right * right
        scale = max(abs(flux_l), abs(flux_r), 1e-300)
        if abs(flux_l - flux_r) > 0.1 * scale:
            warnings.warn(
                f"flux mismatch {abs(flux_l - flux_r) / scale:.1%} at "
                f"interface z={zi}: grid too coarse", RuntimeWarning,
                stacklevel=3)


def make_planar_grid(medium: Medium, q: float, gap_a: float, z0: float,
                     nodes_per_gap: int = 200) -> Grid1D:
    """Uniform grid with interfaces and source aligned to nodes.

    The domain extends at least 8/min(q, q_kappa) beyond the source and
    the far interface, rounded to whole steps so that z = 0, z = gap_a
    and z = z0 all land on nodes (z0 is snapped to the nearest node).
    """
    _require_positive("nodes_per_gap", nodes_per_gap)
    h = gap_a / nodes_per_gap
    margin = 8.0 / min(q, q_kappa(medium, q))
    z0_snapped = round(z0 / h) * h
    if z0_snapped >= 0.0 or abs(z0_snapped - z0) > 10 * h:
        raise ParameterError(f"cannot align z0={z0} on the grid of step {h}")
    # whole numbers of steps on each side of z = 0 keep the interfaces,
    # the source and the spacing exactly consistent
    n_left = int(math.ceil((margin - z0_snapped) / h))
    n_right = int(math.ceil(margin / h)) + nodes_per_gap
    return Grid1D(z_min=-n_left * h, z_max=n_right * h, n=n_left + n_right + 1)


def planar_tail_coefficient(medium: Medium, q: float, gap_a: float, z0: float,
                            nodes_per_gap: int = 200) -> float:
    """Finite-difference estimate of the transmitted slab amplitude D."""
    grid = make_planar_grid(medium, q, gap_a, z0, nodes_per_gap)
    z0_snapped = round(z0 / grid.h) * grid.h
    return solve_planar_bvp(medium, q, gap_a, z0_snapped, grid).tail_amplitude()


@dataclass(frozen=True)
class RadialBvpSolution:
    """Sampled radial mode potential for the concentric-sphere geometry."""

    grid: Grid1D
    phi: np.ndarray
    medium: Medium
    l: int
    radius_a: float
    radius_b: float
    r_source: float


def solve_radial_bvp(medium: Medium, l: int, radius_a: float, radius_b: float,
                     grid: Grid1D, r_source: float) -> RadialBvpSolution:
    """Second-order finite-difference solve of the radial mode equation.

    Discretizes (eps r^2 phi')' - eps (l(l+1) + kappa_eps^2 r^2) phi
    = -delta(r - r_source) with the source shell in the outer medium
    (r_source > radius_b).  The grid must start one step away from the
    origin; the ghost cell touching r = 0 has a vanishing flux
    coefficient, which is the exact regularity condition.  The outer end
    uses the Robin condition built from the decaying radial basis.
    """
    if l < 0:
        raise ParameterError(f"l must be >= 0, got {l}")
    _require_positive("radius_a", radius_a)
    if not radius_a < radius_b:
        raise ParameterError("need radius_a < radius_b")
    if not radius_b < r_source < grid.z_max:
        raise ParameterError("need radius_b < r_source < outer grid edge")
    r = grid.nodes
    h = grid.h
    if abs(r[0] - h) > 1e-9 * h:
        raise ParameterError("radial grid must start at its own step size")
    i0 = int(round((r_source - grid.z_min) / h))
    if abs(r[i0] - r_source) > 1e-9 * r_source:
        raise ParameterError("r_source must be a grid node")

    eps = medium.epsilon
    ke = medium.kappa_eps
    a, b = radius_a, radius_b

    def inv_p_integral(lo, hi):
        # integral of dr/(eps(r) r^2); diverges to +inf when lo == 0,
        # giving the exact zero-flux regularity condition at the origin
        total = 0.0
        for x0, x1, e in ((0.0, a, eps), (a, b, 1.0), (b, math.inf, eps)):
            s0, s1 = max(lo, x0), min(hi, x1)
            if s1 > s0:
                if s0 == 0.0:
                    return math.inf
                total += (1.0 / s0 - 1.0 / s1) / e
        return total

    def v_integral(lo, hi):
        total = 0.0
        ll1 = l * (l + 1)
        for x0, x1, e, k2 in ((0.0, a, eps, ke * ke), (a, b, 1.0, 0.0),
                              (b, math.inf, eps, ke * ke)):
            s0, s1 = max(lo, x0), min(hi, x1)
            if s1 > s0:
                total += e * (ll1 * (s1 - s0) + k2 * (s1**3 - s0**3) / 3.0)
        return total

    p_half = np.array([h / inv_p_integral(r[i], r[i + 1]) for i in range(grid.n - 1)])
    v = np.array([v_integral(ri - h / 2, ri + h / 2) / h for ri in r])

    n = grid.n
    lower = np.zeros(n)
    diag = np.zeros(n)
    upper = np.zeros(n)
    diag[1:-1] = -(p_half[:-1] + p_half[1:]) / h**2 - v[1:-1]
    lower[1:-1] = p_half[:-1] / h**2
    upper[1:-1] = p_half[1:] / h**2

    inv0 = inv_p_integral(r[0] - h, r[0])
    p_ghost_in = 0.0 if inv0 == math.inf else h / inv0
    diag[0] = -(p_ghost_in + p_half[0]) / h**2 - v[0]
    upper[0] = (p_half[0] + p_ghost_in) / h**2
    if p_ghost_in != 0.0:
        # grid detached from the origin: fall back to the regular-solution
        # Robin condition phi'/phi = s'/s at the first node
        basis_in = radial_basis(medium, l, r[0])
        c_in = basis_in.ds / basis_in.s
        diag[0] -= 2.0 * c_in * p_ghost_in / h

    basis_out = radial_basis(medium, l, r[-1])
    c_out = basis_out.de / basis_out.e
    p_ghost_out = h / inv_p_integral(r[-1], r[-1] + h)
    diag[-1] = -(p_half[-1] + p_ghost_out) / h**2 - v[-1] \
        + 2.0 * c_out * p_ghost_out / h
    lower[-1] = (p_half[-1] + p_ghost_out) / h**2

    rhs = np.zeros(n)
    rhs[i0] = -1.0 / h

    phi = _solve_tridiag(lower, diag, upper, rhs)
    return RadialBvpSolution(grid=grid, phi=phi, medium=medium, l=l,
                             radius_a=radius_a, radius_b=radius_b,
                             r_source=r[i0])


def _true_basis_values(medium, l, radii):
    """Unscaled radial basis (s, e) sampled at an array of radii."""
    s_vals, e_vals = [], []
    for r in radii:
        basis = radial_basis(medium, l, float(r))
        s_vals.append(basis.s * math.exp(basis.s_exponent))
        e_vals.append(basis.e * math.exp(basis.e_exponent))
    return np.array(s_vals), np.array(e_vals)


def radial_lambda_from_bvp(medium: Medium, l: int, radius_a: float,
                           radius_b: float, nodes: int = 400) -> float:
    """Round-trip eigenvalue extracted from the radial finite differences.

    Solves with a source shell at 1.4 * radius_b, fits the regular-mode
    amplitude inside the ball and the incident (regular) amplitude in the
    source region, and converts their ratio into the transmitted
    amplitude D; the interface transfer across the pair of surfaces has
    unit determinant in the unscaled basis normalization, so D equals the
    core amplitude per unit incident amplitude directly.  Returns
    1 - c1*c2/D.
    """
    # align interfaces and source with nodes: h divides b, a and 1.4 b
    # (multiples of ten align any single-decimal radius ratio)
    m = int(round(nodes / 1.55))
    m = 10 * max(1, round(m / 10))
    h = radius_b / m
    if abs(radius_a / h - round(radius_a / h)) > 1e-9:
        # fall back to a grid aligned with a instead; b stays aligned when
        # the ratio is a nice fraction, otherwise accuracy degrades to O(h)
        warnings.warn("radius_a is not aligned with the radial grid",
                      RuntimeWarning, stacklevel=2)
    r_source = 1.4 * radius_b
    r_max = 1.55 * radius_b
    n = int(round(r_max / h)) - 1
    grid = Grid1D(z_min=h, z_max=n * h, n=n)
    solution = solve_radial_bvp(medium, l, radius_a, radius_b, grid,
                                round(r_source / h) * h)
    r = grid.nodes
    phi = solution.phi

    core = (r > 0.35 * radius_a) & (r < 0.85 * radius_a)
    s_core, _ = _true_basis_values(medium, l, r[core])
    core_amplitude = float(np.mean(phi[core] / s_core))

    r0 = solution.r_source
    window = (r > radius_b + 0.15 * (r0 - radius_b)) & (r < r0 - 0.15 * (r0 - radius_b))
    s_win, e_win = _true_basis_values(medium, l, r[window])
    design = np.column_stack([e_win, s_win])
    (_, incident), *_ = np.linalg.lstsq(design, phi[window], rcond=None)

    d_transmitted = core_amplitude / incident
    # c1*c2 in the same unscaled normalization as the fits
    d0_true = _true_single_bond_product(medium, l, radius_a, radius_b)
    return 1.0 - d0_true / d_transmitted


def _true_single_bond_product(medium, l, a, b):
    """c1*c2 evaluated with unscaled basis values (moderate arguments only)."""
    eps = medium.epsilon

    def true_basis(r):
        basis = radial_basis(medium, l, r)
        fs = math.exp(basis.s_exponent)
        fe = math.exp(basis.e_exponent)
        return basis.s * fs, basis.ds * fs, basis.e * fe, basis.de * fe

    sa, dsa, ea_med, dea_med = true_basis(a)
    _, _, eb_med, deb_med = true_basis(b)
    va_s, va_ds = a**l, l * a**(l - 1)
    va_e, va_de = a**-(l + 1), -(l + 1) * a**-(l + 2)
    vb_s, vb_ds = b**l, l * b**(l - 1)
    vb_e, vb_de = b**-(l + 1), -(l + 1) * b**-(l + 2)
    c1 = eps * (ea_med * dsa - dea_med * sa) / (eps * va_e * dsa - va_de * sa)
    c2 = (vb_de * vb_s - vb_e * vb_ds) / (eps * deb_med * vb_s - eb_med * vb_ds)
    return c1 * c2
