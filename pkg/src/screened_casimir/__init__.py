"""Classical high-temperature Casimir interactions of charged dielectrics.

Evaluates the attraction between media that combine a constant relative
permittivity with Debye-screened free charges (semiconductors and
electrolyte-like materials), in three geometries: two parallel slabs
across a vacuum gap, a weakly polarizable particle facing a half-space,
and concentric spheres.  Every observable is beta-scaled (multiplied by
the inverse temperature), and every closed-form route ships with an
independent cross-validation path.
"""

from .bessel import (L_MAX_SUPPORTED, RadialBasis, ScaledBesselPair,
                     modified_spherical_bessel, radial_basis)
from .bvp import (Grid1D, PlanarBvpSolution, RadialBvpSolution,
                  make_planar_grid, planar_tail_coefficient,
                  radial_lambda_from_bvp, solve_planar_bvp, solve_radial_bvp)
from .core import (ConvergenceError, Medium, MediumInputs, ParameterError,
                   PlanarSetup, PrecisionLossWarning, SphericalSetup,
                   TransverseMode, VACUUM, medium_from_inputs, q_kappa)
from .planar import (ExpScaled, PlanarCoefficients, PlanarEvaluation,
                     ReflectionFactor, coefficient_D_halfspace,
                     coefficient_D_plates, correlation_hat, force_ionic_raw,
                     force_per_area, force_per_area_result,
                     free_energy_per_area, free_energy_per_area_result,
                     particle_force, particle_potential,
                     particle_potential_result, reflection_A,
                     solve_planar_coefficients)
from .quadrature import (DEFAULT_TOL, QuadratureResult, RatioBoundError,
                         SeriesResult, integrate_semi_infinite, polylog3,
                         sum_geometric_like, zeta3)
from .spherical import (SphericalEigenvalue, lambda_eps_l, lambda_static,
                        lambda_via_D, single_bond_constants,
                        sphere_force, sphere_free_energy)
from .validation import run_battery

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DEFAULT_TOL", "ExpScaled", "Grid1D",
    "L_MAX_SUPPORTED", "Medium", "MediumInputs", "ParameterError",
    "PlanarBvpSolution", "PlanarCoefficients", "PlanarEvaluation",
    "PlanarSetup", "PrecisionLossWarning", "QuadratureResult",
    "RadialBasis", "RadialBvpSolution", "RatioBoundError",
    "ReflectionFactor", "ScaledBesselPair", "SeriesResult",
    "SphericalEigenvalue", "SphericalSetup", "TransverseMode", "VACUUM",
    "coefficient_D_halfspace", "coefficient_D_plates", "correlation_hat",
    "force_ionic_raw", "force_per_area", "force_per_area_result",
    "free_energy_per_area", "free_energy_per_area_result",
    "integrate_semi_infinite", "lambda_eps_l", "lambda_static",
    "lambda_via_D", "make_planar_grid", "medium_from_inputs",
    "modified_spherical_bessel", "particle_force", "particle_potential",
    "particle_potential_result", "planar_tail_coefficient", "polylog3",
    "q_kappa", "radial_basis", "radial_lambda_from_bvp", "reflection_A",
    "run_battery", "single_bond_constants", "solve_planar_bvp",
    "solve_planar_coefficients", "solve_radial_bvp", "sphere_force",
    "sphere_free_energy", "sum_geometric_like", "zeta3",
]
