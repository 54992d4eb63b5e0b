"""Scaled modified spherical Bessel functions against independent oracles.

scipy's exponentially scaled cylindrical Bessel functions ive/kve provide
the reference values through i_l(x) = sqrt(pi/2x) I_{l+1/2}(x) and
k_l(x) = sqrt(pi/2x) K_{l+1/2}(x); closed forms pin the low orders.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ive, kve

from screened_casimir import (Medium, ParameterError, modified_spherical_bessel,
                              radial_basis)


def i_scaled_ref(l, x):
    return math.sqrt(math.pi / (2 * x)) * ive(l + 0.5, x)


def k_scaled_ref(l, x):
    return math.sqrt(math.pi / (2 * x)) * kve(l + 0.5, x)


class TestClosedForms:
    def test_i0_at_one(self):
        pair = modified_spherical_bessel(0, 1.0)
        assert pair.i == pytest.approx(math.sinh(1.0), rel=1e-14)

    def test_k0_at_one(self):
        pair = modified_spherical_bessel(0, 1.0)
        assert pair.k == pytest.approx(math.pi / 2 * math.exp(-1.0), rel=1e-14)

    def test_i1_closed_form(self):
        x = 2.5
        pair = modified_spherical_bessel(1, x)
        exact = math.cosh(x) / x - math.sinh(x) / x**2
        assert pair.i == pytest.approx(exact, rel=1e-13)

    def test_small_argument_asymptotics(self):
        l, x = 5, 1e-4
        pair = modified_spherical_bessel(l, x)
        double_fact = 1.0
        for m in range(1, 2 * l + 2, 2):
            double_fact *= m  # (2l+1)!! = 10395
        assert pair.i_scaled * math.exp(x) == pytest.approx(
            x**l / double_fact, rel=1e-7)
        assert pair.k_scaled * math.exp(-x) == pytest.approx(
            (math.pi / 2) * (double_fact / (2 * l + 1)) / x ** (l + 1), rel=1e-7)


GRID_L = (0, 1, 2, 5, 10, 20, 50, 100, 200)
GRID_X = (1e-6, 1e-3, 0.01, 0.1, 1.0, 3.0, 10.0, 50.0, 200.0, 1e3, 1e4)


class TestAgainstScipy:
    @pytest.mark.parametrize("l", GRID_L)
    @pytest.mark.parametrize("x", GRID_X)
    def test_values(self, l, x):
        pair = modified_spherical_bessel(l, x)
        ref_i = i_scaled_ref(l, x)
        ref_k = k_scaled_ref(l, x)
        if ref_i > 5e-308:  # skip subnormal/underflowed references
            assert pair.i_scaled == pytest.approx(ref_i, rel=1e-12)
        if math.isfinite(ref_k) and ref_k < 1e300:
            assert pair.k_scaled == pytest.approx(ref_k, rel=1e-12)

    @pytest.mark.parametrize("l", (0, 1, 7, 30))
    @pytest.mark.parametrize("x", (0.05, 1.0, 12.0, 300.0))
    def test_derivatives_by_finite_differences(self, l, x):
        pair = modified_spherical_bessel(l, x)
        h = x * 1e-6
        # derivative of the scaled function: d/dx (e^-x i) = e^-x (i' - i)
        di_fd = (i_scaled_ref(l, x + h) - i_scaled_ref(l, x - h)) / (2 * h)
        dk_fd = (k_scaled_ref(l, x + h) - k_scaled_ref(l, x - h)) / (2 * h)
        assert pair.di_scaled - pair.i_scaled == pytest.approx(di_fd, rel=1e-6)
        assert pair.dk_scaled + pair.k_scaled == pytest.approx(dk_fd, rel=1e-6)

    @settings(max_examples=60, deadline=None)
    @given(l=st.integers(min_value=0, max_value=150),
           x=st.floats(min_value=1e-6, max_value=1e4))
    def test_property_matches_scipy(self, l, x):
        pair = modified_spherical_bessel(l, x)
        ref_i = i_scaled_ref(l, x)
        ref_k = k_scaled_ref(l, x)
        if ref_i > 5e-308:
            assert pair.i_scaled == pytest.approx(ref_i, rel=5e-12)
        if math.isfinite(ref_k) and ref_k < 1e300:
            assert pair.k_scaled == pytest.approx(ref_k, rel=5e-12)


class TestIdentities:
    @pytest.mark.parametrize("l", range(0, 21))
    @pytest.mark.parametrize("x", (0.1, 1.0, 10.0, 50.0))
    def test_wronskian(self, l, x):
        pair = modified_spherical_bessel(l, x)
        assert abs(pair.wronskian_combination() + math.pi / 2) <= 1e-10

    @pytest.mark.parametrize("l", (1, 2, 5, 12, 20))
    @pytest.mark.parametrize("x", (0.3, 2.0, 15.0, 80.0))
    def test_recurrence_consistency(self, l, x):
        below = modified_spherical_bessel(l - 1, x)
        here = modified_spherical_bessel(l, x)
        above = modified_spherical_bessel(l + 1, x)
        lhs_i = below.i_scaled - above.i_scaled
        assert lhs_i == pytest.approx((2 * l + 1) / x * here.i_scaled, rel=1e-11)
        # sign-flipped analogue for the decaying family
        lhs_k = below.k_scaled - above.k_scaled
        assert lhs_k == pytest.approx(-(2 * l + 1) / x * here.k_scaled, rel=1e-11)

    def test_positive(self):
        for l in (0, 3, 40):
            for x in (1e-5, 1.0, 1e3):
                pair = modified_spherical_bessel(l, x)
                assert pair.i_scaled > 0.0 or (l > 0 and pair.i_scaled == 0.0)
                assert pair.k_scaled > 0.0

    def test_domain_errors(self):
        with pytest.raises(ParameterError):
            modified_spherical_bessel(0, 0.0)
        with pytest.raises(ParameterError):
            modified_spherical_bessel(0, -1.0)
        with pytest.raises(ParameterError):
            modified_spherical_bessel(-1, 1.0)
        with pytest.raises(ParameterError):
            modified_spherical_bessel(2.5, 1.0)


class TestRadialBasis:
    def test_vacuum_power_laws(self):
        basis = radial_basis(Medium(1.0, 0.0), 1, 2.0)
        assert (basis.s, basis.e) == (2.0, 0.25)
        assert (basis.ds, basis.de) == (1.0, -0.25)
        assert basis.s_exponent == basis.e_exponent == 0.0

    def test_monopole_closed_forms(self):
        basis = radial_basis(Medium(1.0, 1.0), 0, 1.0)
        assert basis.s * math.exp(basis.s_exponent) == pytest.approx(
            math.sinh(1.0), rel=1e-13)
        assert basis.e * math.exp(basis.e_exponent) == pytest.approx(
            math.pi / 2 * math.exp(-1.0), rel=1e-13)

    def test_screened_derivative_chain_rule(self):
        medium = Medium(1.0, 2.0)
        l, r = 3, 1.3
        basis = radial_basis(medium, l, r)
        h = 1e-6
        up = radial_basis(medium, l, r + h)
        down = radial_basis(medium, l, r - h)
        ds_fd = (up.s * math.exp(up.s_exponent)
                 - down.s * math.exp(down.s_exponent)) / (2 * h)
        assert basis.ds * math.exp(basis.s_exponent) == pytest.approx(ds_fd,
                                                                      rel=1e-6)

    def test_small_screening_ratio_matches_power_law(self):
        # s/e ratio approaches the vacuum r^(2l+1) behaviour as kappa -> 0
        medium = Medium(1.0, 1e-6)
        l = 2
        r1, r2 = 1.0, 2.0
        b1 = radial_basis(medium, l, r1)
        b2 = radial_basis(medium, l, r2)
        ratio1 = b1.s / b1.e * math.exp(b1.s_exponent - b1.e_exponent)
        ratio2 = b2.s / b2.e * math.exp(b2.s_exponent - b2.e_exponent)
        assert ratio2 / ratio1 == pytest.approx((r2 / r1) ** (2 * l + 1),
                                                rel=1e-6)

    def test_rejects_bad_radius(self):
        with pytest.raises(ParameterError):
            radial_basis(Medium(1.0, 1.0), 1, 0.0)
