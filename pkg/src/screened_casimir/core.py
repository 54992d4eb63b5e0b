"""Shared domain types, unit conventions and parameter validation.

All quantities are in Gaussian units.  Every energy-like output of the
library is multiplied by beta = 1/(k_B T), so temperature never appears
past the medium constructor: the slab force per area beta*f has dimension
1/length^3, the free energy per area beta*F has 1/length^2 (and is
dimensionless for the concentric spheres), and the particle potential
beta*V is dimensionless once the polarizability carries length^3.

The sign convention is that a negative force or potential means
attraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ParameterError(ValueError):
    """Raised when physical input parameters are out of domain."""


class ConvergenceError(RuntimeError):
    """Raised when a quadrature, series or sum fails to converge."""


class PrecisionLossWarning(RuntimeWarning):
    """Issued when a numerical path detects significant cancellation."""


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")


def _require_positive(name, value):
    _require_finite(name, value)
    if value <= 0.0:
        raise ParameterError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class Medium:
    """A charged dielectric material filling a half-space or sphere.

    Parameters
    ----------
    epsilon : float
        Real, static relative permittivity, >= 1.
    kappa_eps : float
        In-medium inverse Debye-Hueckel screening length, >= 0.
        Zero means no free charges.
    """

    epsilon: float
    kappa_eps: float = 0.0

    def __post_init__(self):
        _require_finite("epsilon", self.epsilon)
        _require_finite("kappa_eps", self.kappa_eps)
        if self.epsilon < 1.0:
            raise ParameterError(f"epsilon must be >= 1, got {self.epsilon}")
        if self.kappa_eps < 0.0:
            raise ParameterError(f"kappa_eps must be >= 0, got {self.kappa_eps}")

    @property
    def kappa2(self):
        """Squared vacuum-referred inverse screening length, epsilon*kappa_eps**2."""
        return self.epsilon * self.kappa_eps * self.kappa_eps


VACUUM = Medium(1.0, 0.0)


@dataclass(frozen=True)
class MediumInputs:
    """Microscopic inputs that determine a medium's screening length.

    beta is the inverse temperature 1/(k_B T), q_c the ionic charge
    magnitude (Gaussian units), rho the ion number density and epsilon
    the relative permittivity.  The neutralizing uniform background of
    counter ions carries no runtime representation.
    """

    beta: float
    q_c: float
    rho: float
    epsilon: float

    def __post_init__(self):
        _require_positive("beta", self.beta)
        _require_finite("q_c", self.q_c)
        _require_finite("rho", self.rho)
        _require_finite("epsilon", self.epsilon)
        if self.q_c < 0.0:
            raise ParameterError(f"q_c must be >= 0, got {self.q_c}")
        if self.rho < 0.0:
            raise ParameterError(f"rho must be >= 0, got {self.rho}")
        if self.epsilon < 1.0:
            raise ParameterError(f"epsilon must be >= 1, got {self.epsilon}")


def medium_from_inputs(inputs: MediumInputs) -> Medium:
    """Build a Medium from microscopic inputs.

    The inverse screening length follows the Debye-Hueckel relation
    kappa_eps**2 = 4 pi beta q_c**2 rho / epsilon.
    """
    kappa_eps = math.sqrt(4.0 * math.pi * inputs.beta * inputs.q_c**2
                          * inputs.rho / inputs.epsilon)
    return Medium(epsilon=inputs.epsilon, kappa_eps=kappa_eps)


def q_kappa(medium: Medium, q: float) -> float:
    """Screened transverse wavenumber sqrt(q**2 + kappa_eps**2).

    Monotone nondecreasing in both q and the medium's kappa_eps.
    """
    _require_finite("q", q)
    if q < 0.0:
        raise ParameterError(f"q must be >= 0, got {q}")
    return math.hypot(q, medium.kappa_eps)


@dataclass(frozen=True)
class TransverseMode:
    """One transverse Fourier mode: wavenumber q and its screened partner."""

    q: float
    q_kappa: float

    def __post_init__(self):
        _require_finite("q", self.q)
        _require_finite("q_kappa", self.q_kappa)
        if self.q < 0.0:
            raise ParameterError(f"q must be >= 0, got {self.q}")
        if self.q_kappa < self.q:
            raise ParameterError("q_kappa must be >= q")

    @classmethod
    def from_medium(cls, medium: Medium, q: float) -> "TransverseMode":
        return cls(q=q, q_kappa=q_kappa(medium, q))


@dataclass(frozen=True)
class PlanarSetup:
    """Two identical charged-dielectric half-spaces separated by a vacuum gap."""

    medium: Medium
    gap_a: float

    def __post_init__(self):
        _require_positive("gap_a", self.gap_a)


@dataclass(frozen=True)
class SphericalSetup:
    """Inner ball of radius_a inside an outer shell starting at radius_b.

    Both bodies share one medium; the region between the radii is vacuum.
    """

    medium: Medium
    radius_a: float
    radius_b: float

    def __post_init__(self):
        _require_positive("radius_a", self.radius_a)
        _require_positive("radius_b", self.radius_b)
        if not self.radius_a < self.radius_b:
            raise ParameterError(
                f"need radius_a < radius_b, got {self.radius_a} >= {self.radius_b}")

    @property
    def ratio(self):
        return self.radius_a / self.radius_b
