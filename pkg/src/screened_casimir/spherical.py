"""Concentric-sphere eigenvalues and the zero-frequency TM free energy.

An inner ball (radius a) faces an outer shell (inner radius b) across a
vacuum gap; both bodies share one charged dielectric medium.  Each
multipole order l carries a round-trip eigenvalue lambda_l in [0, 1)
built from the radial basis functions of the medium (s: regular,
e: decaying) and of the vacuum gap (r^l, r^-(l+1)):

    lambda_l = (eps*s_a*s_eps_a' - s_a'*s_eps_a)(eps*e_b*e_eps_b' - e_b'*e_eps_b)
               -----------------------------------------------------------------
               (eps*e_a*s_eps_a' - e_a'*s_eps_a)(eps*e_eps_b'*s_b - e_eps_b*s_b')

where subscripts a, b denote the evaluation radius and primes are d/dr.
The interaction free energy is the multipole sum
beta*F = (1/2) sum_{l>=1} (2l+1) ln(1 - lambda_l).

Two independent evaluation routes are provided: the closed-form ratio
above (lambda_eps_l) and a direct solve of the boundary-condition system
combined with the single-interface transmission constants
(lambda_via_D); they must agree to solver precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .bessel import radial_basis
from .core import (ConvergenceError, ParameterError, PrecisionLossWarning,
                   SphericalSetup, VACUUM)
from .quadrature import DEFAULT_TOL, SeriesResult

_L_SUM_MAX = 4000
_CANCELLATION_WARN = 1e-6


@dataclass(frozen=True)
class SphericalEigenvalue:
    """Round-trip eigenvalue of one multipole order, in [0, 1)."""

    l: int
    lam: float


def _bracket(x1, y1, x2, y2, label, check_cancellation=True):
    """x1*y1 - x2*y2 with a cancellation warning when digits vanish."""
    t1 = x1 * y1
    t2 = x2 * y2
    out = t1 - t2
    if check_cancellation:
        scale = max(abs(t1), abs(t2))
        if scale > 0.0 and out != 0.0 and abs(out) < _CANCELLATION_WARN * scale:
            warnings.warn(
                f"severe cancellation in {label}: kept {abs(out) / scale:.2e} "
                "of the leading magnitude", PrecisionLossWarning, stacklevel=3)
    return out


def _validated(lam, l, setup):
    # tiny negatives are rounding residue of an exact zero
    if -1e-12 < lam < 0.0:
        lam = 0.0
    if not 0.0 <= lam < 1.0:
        raise ParameterError(
            f"eigenvalue outside [0, 1): lambda={lam!r} for l={l}, "
            f"epsilon={setup.medium.epsilon}, kappa_eps={setup.medium.kappa_eps}, "
            f"a/b={setup.ratio}")
    return lam


def lambda_eps_l(setup: SphericalSetup, l: int,
                 _family_scales=None) -> SphericalEigenvalue:
    """Round-trip eigenvalue of multipole order l, closed-form route.

    Evaluated from the scaled radial bases; the scaling exponents of the
    four factors cancel identically (asserted at runtime), so the result
    is exact in the scaled representation.  _family_scales is a testing
    hook: a 4-tuple of constants multiplying the (s_medium, e_medium,
    s_vacuum, e_vacuum) families, under which the result is invariant.

    A precision-loss warning is issued if any of the four factors loses
    more than six digits to cancellation.
    """
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    medium = setup.medium
    eps = medium.epsilon
    a, b = setup.radius_a, setup.radius_b
    med_a = radial_basis(medium, l, a)
    med_b = radial_basis(medium, l, b)
    vac_a = radial_basis(VACUUM, l, a)
    vac_b = radial_basis(VACUUM, l, b)
    sa, dsa = vac_a.s, vac_a.ds
    ea, dea = vac_a.e, vac_a.de
    sb, dsb = vac_b.s, vac_b.ds
    eb, deb = vac_b.e, vac_b.de
    sea, dsea = med_a.s, med_a.ds
    eeb, deeb = med_b.e, med_b.de
    if _family_scales is not None:
        cs, ce, csv, cev = _family_scales
        sea, dsea = cs * sea, cs * dsea
        eeb, deeb = ce * eeb, ce * deeb
        sa, dsa, sb, dsb = csv * sa, csv * dsa, csv * sb, csv * dsb
        ea, dea, eb, deb = cev * ea, cev * dea, cev * eb, cev * deb
    # exponent tags of the four factors: each bracket carries exactly one
    # s-family value at r=a or one e-family value at r=b, so the ratio's
    # net exponent vanishes identically and the stored values can be used
    # without ever materializing the exponentials
    tag_n1 = tag_d1 = med_a.s_exponent
    tag_n2 = tag_d2 = med_b.e_exponent
    assert (tag_n1 + tag_n2) - (tag_d1 + tag_d2) == 0.0
    n1 = _bracket(eps * sa, dsea, dsa, sea, f"lambda numerator at r=a (l={l})")
    d1 = _bracket(eps * ea, dsea, dea, sea, f"lambda denominator at r=a (l={l})",
                  check_cancellation=False)
    n2 = _bracket(eps * eb, deeb, deb, eeb, f"lambda numerator at r=b (l={l})")
    d2 = _bracket(eps * deeb, sb, eeb, dsb, f"lambda denominator at r=b (l={l})",
                  check_cancellation=False)
    if d1 == 0.0 or d2 == 0.0 or not (math.isfinite(d1) and math.isfinite(d2)):
        raise ParameterError(
            f"degenerate eigenvalue denominator for l={l}: d1={d1!r}, d2={d2!r}")
    lam = (n1 / d1) * (n2 / d2)
    return SphericalEigenvalue(l=l, lam=_validated(lam, l, setup))


def lambda_static(epsilon: float, l: int, a: float, b: float) -> float:
    """Charge-free closed form of the eigenvalue.

    (eps-1)^2 (l+1) l / ((eps*l + l + 1)(eps*(l+1) + l)) * (a/b)^(2l+1).
    """
    if epsilon < 1.0:
        raise ParameterError(f"epsilon must be >= 1, got {epsilon}")
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    if not 0.0 < a < b:
        raise ParameterError(f"need 0 < a < b, got a={a}, b={b}")
    eps = epsilon
    coef = (eps - 1.0) ** 2 * (l + 1) * l / ((eps * l + l + 1) * (eps * (l + 1) + l))
    return coef * (a / b) ** (2 * l + 1)


def single_bond_constants(setup: SphericalSetup, l: int):
    """Transmission constants (c1, c2) of the isolated interfaces.

    c1 is the gap amplitude with the outer shell removed (b -> infinity),
    c2 the outer amplitude per unit gap amplitude with the ball removed
    (a -> 0); their product is the no-round-trip transmission D0.
    Evaluated from the scaled bases, hence each carries the corresponding
    basis scaling (which cancels against the equally scaled full solve).
    """
    medium = setup.medium
    eps = medium.epsilon
    a, b = setup.radius_a, setup.radius_b
    med_a = radial_basis(medium, l, a)
    med_b = radial_basis(medium, l, b)
    vac_a = radial_basis(VACUUM, l, a)
    vac_b = radial_basis(VACUUM, l, b)
    c1 = (eps * (med_a.e * med_a.ds - med_a.de * med_a.s)
          / (eps * vac_a.e * med_a.ds - vac_a.de * med_a.s))
    c2 = ((vac_b.de * vac_b.s - vac_b.e * vac_b.ds)
          / (eps * med_b.de * vac_b.s - med_b.e * vac_b.ds))
    return c1, c2


def lambda_via_D(setup: SphericalSetup, l: int) -> float:
    """Round-trip eigenvalue from the full boundary-condition solve.

    Assembles the four continuity conditions (potential and eps * d/dr at
    r = a and r = b) for the amplitudes (B, C, C1, D), solves for the
    transmitted amplitude D, and returns 1 - D0/D with D0 = c1*c2 from
    single_bond_constants.  Internally the vacuum power laws are
    b-normalized, which only rescales the unknowns and improves the
    conditioning at large l.

    The subtraction 1 - D0/D cancels all but the last few digits when the
    eigenvalue is tiny (it scales like (a/b)^(2l+1)), so the system is
    solved in extended precision on the double-precision basis values;
    the result then keeps the relative accuracy of its inputs at any
    eigenvalue magnitude.  This route exists as an independent check of
    the closed form, so speed is irrelevant.
    """
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    import mpmath as mp

    medium = setup.medium
    eps = medium.epsilon
    a, b = setup.radius_a, setup.radius_b
    med_a = radial_basis(medium, l, a)
    med_b = radial_basis(medium, l, b)
    with mp.workdps(50):
        epsm = mp.mpf(eps)
        rho = mp.mpf(a) / mp.mpf(b)
        am, bm = mp.mpf(a), mp.mpf(b)
        sa, dsa = rho**l, l * rho**l / am
        ea, dea = rho**-(l + 1), -(l + 1) * rho**-(l + 1) / am
        sb, dsb = mp.mpf(1), mp.mpf(l) / bm
        eb, deb = mp.mpf(1), -mp.mpf(l + 1) / bm
        mat = mp.matrix([
            [mp.mpf(med_a.s), -ea, -sa, 0],
            [epsm * mp.mpf(med_a.ds), -dea, -dsa, 0],
            [0, eb, sb, -mp.mpf(med_b.e)],
            [0, deb, dsb, -epsm * mp.mpf(med_b.de)],
        ])
        rhs = mp.matrix([-mp.mpf(med_a.e), -epsm * mp.mpf(med_a.de), 0, 0])
        try:
            solution = mp.lu_solve(mat, rhs)
        except ZeroDivisionError as exc:
            raise ParameterError(f"singular boundary system for l={l}") from exc
        d_full = solution[3]
        # single-bond constants in the same extended precision; they carry
        # the same basis scalings as the solved D, which therefore cancel
        c1 = (epsm * (mp.mpf(med_a.e) * mp.mpf(med_a.ds)
                      - mp.mpf(med_a.de) * mp.mpf(med_a.s))
              / (epsm * ea * mp.mpf(med_a.ds) - dea * mp.mpf(med_a.s)))
        c2 = ((deb * sb - eb * dsb)
              / (epsm * mp.mpf(med_b.de) * sb - mp.mpf(med_b.e) * dsb))
        lam = float(1 - (c1 * c2) / d_full)
    return _validated(lam, l, setup)


def sphere_free_energy(setup: SphericalSetup, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Beta-scaled interaction free energy of the concentric spheres.

    beta*F = (1/2) sum_{l=1}^{L} (2l+1) ln(1 - lambda_l), truncated at the
    first L whose geometric tail bound
    |(2L+3) ln(1 - lambda_{L+1})| / (1 - (a/b)^2) falls below
    tol * |partial sum|.  The eigenvalues decay at least like
    (a/b)^(2l+1), and screening only accelerates the decay, so the static
    bound is conservative.  Returns the sum, the truncation order L
    (terms_used) and the final tail bound.
    """
    if not (tol > 0.0):
        raise ParameterError(f"tol must be positive, got {tol}")
    rho2 = setup.ratio ** 2
    partial = 0.0
    lam_next = lambda_eps_l(setup, 1).lam
    for l in range(1, _L_SUM_MAX):
        lam_l = lam_next
        partial += 0.5 * (2 * l + 1) * math.log1p(-lam_l)
        lam_next = lambda_eps_l(setup, l + 1).lam
        tail_bound = abs((2 * l + 3) * math.log1p(-lam_next)) / (1.0 - rho2)
        if tail_bound <= tol * abs(partial) or tail_bound == 0.0:
            return SeriesResult(value=partial, terms_used=l, tail_bound=tail_bound)
    raise ConvergenceError(
        f"multipole sum not converged by l={_L_SUM_MAX} "
        f"(a/b={setup.ratio}, tol={tol})")


def sphere_force(setup: SphericalSetup, tol: float = DEFAULT_TOL) -> float:
    """Central-difference d(beta*F)/d(radius_b) at fixed radius_a.

    A diagnostic, not a closed-form observable: positive values mean the
    free energy rises toward zero as the gap widens, i.e. attraction.
    Uses step radius_b * 1e-4 and a tightened tolerance for the two
    free-energy evaluations so the difference is not noise-limited.
    """
    b = setup.radius_b
    h = b * 1e-4
    inner_tol = min(tol, 1e-10) * 1e-2
    f_plus = sphere_free_energy(
        SphericalSetup(setup.medium, setup.radius_a, b + h), inner_tol).value
    f_minus = sphere_free_energy(
        SphericalSetup(setup.medium, setup.radius_a, b - h), inner_tol).value
    return (f_plus - f_minus) / (2.0 * h)
