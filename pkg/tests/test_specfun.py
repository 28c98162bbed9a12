"""Tests for the specfun module."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import hyp0f1, kv

from pyfsonoma._types import SeriesControl
from pyfsonoma.exceptions import ConvergenceError, DomainError, RangeError
from pyfsonoma.specfun import (
    _erfc_continued_fraction,
    bessel_k,
    erf,
    gamma,
    hyp1f2,
    ln_gamma,
)

BESSEL_ORDERS = [0.25, 0.69, 1.31, 2.7]

# Arguments covering the series, continued fraction and asymptotic paths
BESSEL_ARGUMENTS = [0.01, 0.5, 1.9, 2.0, 2.1, 5.0, 15.0, 24.9, 25.0, 40.0, 100.0]


def _random_bessel_points(n: int, seed: int) -> list[tuple[float, float]]:
    """Orders kept 0.05 away from the integers, arguments log-uniform."""
    rng = np.random.default_rng(seed)
    orders = rng.integers(0, 3, n) + rng.uniform(0.05, 0.95, n)
    arguments = np.exp(rng.uniform(math.log(0.05), math.log(60.0), n))
    return [(float(nu), float(x)) for nu, x in zip(orders, arguments)]


RANDOM_BESSEL_POINTS = _random_bessel_points(50, seed=20)


def integral_bessel_k(nu: float, x: float) -> float:
    """K_nu(x) by quadrature of its cosh integral, cut where exp(-x cosh t) underflows."""
    upper = math.acosh(1.0 + 800.0 / x)
    value, _ = quad(
        lambda t: math.exp(-x * math.cosh(t)) * math.cosh(nu * t),
        0.0,
        upper,
        epsabs=0.0,
        epsrel=1e-12,
        limit=200,
    )
    return value


class TestGamma:
    """Tests for ln_gamma and gamma."""

    @pytest.mark.parametrize("x", [0.01, 0.3, 0.69, 1.5, 2.23, 3.7, 10.0, 55.5, 170.0])
    def test_ln_gamma_matches_math(self, x):
        """Test ln_gamma against math.lgamma."""
        assert ln_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("x", np.random.default_rng(7).uniform(0.01, 100.0, 40).tolist())
    def test_ln_gamma_recurrence(self, x):
        """Test ln Gamma(x + 1) = ln Gamma(x) + ln x at random arguments."""
        assert ln_gamma(x + 1.0) == pytest.approx(ln_gamma(x) + math.log(x), rel=1e-13, abs=1e-13)

    def test_ln_gamma_exact_points(self):
        """Test the zeros of ln Gamma."""
        assert ln_gamma(1.0) == 0.0
        assert ln_gamma(2.0) == 0.0

    @pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
    def test_ln_gamma_domain(self, x):
        """Test that ln_gamma rejects non-positive and non-finite input."""
        with pytest.raises(DomainError):
            ln_gamma(x)

    @pytest.mark.parametrize("x", [0.5, 1.54, 4.0, -0.5, -0.69, -1.31, -2.7])
    def test_gamma_matches_math(self, x):
        """Test gamma, including the reflection branch, against math.gamma."""
        assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)

    def test_gamma_half(self):
        """Test Gamma(1/2) = sqrt(pi)."""
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0])
    def test_gamma_poles(self, x):
        """Test that gamma rejects its poles."""
        with pytest.raises(DomainError):
            gamma(x)

    def test_gamma_overflow(self):
        """Test that gamma raises RangeError on overflow."""
        with pytest.raises(RangeError) as exc_info:
            gamma(200.0)
        assert exc_info.value.method == "gamma"


class TestErf:
    """Tests for erf."""

    @pytest.mark.parametrize("x", [1e-8, 1e-3, 0.25, 0.5, 1.0, 1.7, 2.5, 4.0, 5.9])
    def test_matches_math(self, x):
        """Test erf against math.erf."""
        assert erf(x) == pytest.approx(math.erf(x), rel=1e-13, abs=1e-14)

    def test_nondecreasing_on_dense_grid(self):
        """Test that erf never decreases, including near saturation."""
        values = np.array([erf(float(x)) for x in np.linspace(-7.0, 7.0, 20_001)])
        assert np.all(np.diff(values) >= 0.0)

    @pytest.mark.parametrize("x", [3.0, 3.5, 4.2, 4.8, 5.3, 5.9])
    def test_continued_fraction_matches_math_erfc(self, x):
        """Test the erfc continued fraction against math.erfc."""
        assert _erfc_continued_fraction(x) == pytest.approx(math.erfc(x), rel=1e-13)

    def test_continuous_at_method_switch(self):
        """Test that the series and the continued fraction agree at the switch."""
        assert erf(3.0 - 1e-12) == pytest.approx(erf(3.0), abs=1e-15)

    def test_odd(self):
        """Test that erf is odd."""
        assert erf(-0.8) == -erf(0.8)

    def test_saturation(self):
        """Test that large arguments saturate to +-1."""
        assert erf(6.0) == 1.0
        assert erf(-30.0) == -1.0

    def test_nan(self):
        """Test that NaN propagates."""
        assert math.isnan(erf(math.nan))


class TestBesselK:
    """Tests for bessel_k."""

    @pytest.mark.parametrize("nu", BESSEL_ORDERS)
    @pytest.mark.parametrize("x", BESSEL_ARGUMENTS)
    def test_matches_scipy(self, nu, x):
        """Test bessel_k against scipy.special.kv over all evaluation paths."""
        assert bessel_k(nu, x) == pytest.approx(float(kv(nu, x)), rel=1e-10)

    @pytest.mark.parametrize("x", [0.3, 3.0, 30.0])
    def test_integral_representation(self, x):
        """Test K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt."""
        nu = 0.69
        assert bessel_k(nu, x) == pytest.approx(integral_bessel_k(nu, x), rel=1e-9)

    @pytest.mark.parametrize(("nu", "x"), RANDOM_BESSEL_POINTS)
    def test_random_points(self, nu, x):
        """Test random non-integer orders against the integral and scipy."""
        value = bessel_k(nu, x)
        assert value == pytest.approx(integral_bessel_k(nu, x), rel=1e-9)
        assert value == pytest.approx(float(kv(nu, x)), rel=1e-10)

    def test_half_order_closed_form(self):
        """Test K_{1/2}(x) = sqrt(pi / (2x)) exp(-x)."""
        for x in (0.1, 2.0, 10.0, 50.0):
            expected = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
            assert bessel_k(0.5, x) == pytest.approx(expected, rel=1e-12)

    def test_even_in_order(self):
        """Test K_{-nu} = K_nu."""
        assert bessel_k(-0.69, 3.0) == bessel_k(0.69, 3.0)

    def test_positive(self):
        """Test that K is positive."""
        assert all(bessel_k(1.31, x) > 0 for x in BESSEL_ARGUMENTS)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.inf])
    def test_domain_x(self, x):
        """Test that non-positive x is rejected."""
        with pytest.raises(DomainError):
            bessel_k(0.69, x)

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.0 + 1e-8])
    def test_integer_order_rejected(self, nu):
        """Test that integer orders are rejected."""
        with pytest.raises(DomainError) as exc_info:
            bessel_k(nu, 1.0)
        assert exc_info.value.parameter == "nu"

    def test_underflow(self):
        """Test that very large arguments raise RangeError."""
        with pytest.raises(RangeError):
            bessel_k(0.69, 800.0)

    def test_overflow(self):
        """Test that tiny arguments with a large order raise RangeError."""
        with pytest.raises(RangeError):
            bessel_k(2.7, 1e-300)


class TestHyp1F2:
    """Tests for hyp1f2."""

    def test_zero_argument(self):
        """Test 1F2(a; b1, b2; 0) = 1."""
        assert hyp1f2(2.23, 3.23, 1.69, 0.0) == 1.0

    @pytest.mark.parametrize("z", [0.01, 0.5, 3.4342, 10.0, 100.0])
    @pytest.mark.parametrize(
        ("a", "b1", "b2"), [(2.23, 3.23, 1.69), (1.54, 2.54, 0.31), (0.8, 1.8, 1.3)]
    )
    def test_matches_mpmath(self, a, b1, b2, z):
        """Test hyp1f2 against mpmath."""
        mpmath = pytest.importorskip("mpmath")
        expected = float(mpmath.hyp1f2(a, b1, b2, z))
        assert hyp1f2(a, b1, b2, z) == pytest.approx(expected, rel=1e-8)

    def test_negative_z_rejected(self):
        """Test that negative z is rejected."""
        with pytest.raises(DomainError):
            hyp1f2(1.0, 2.0, 0.5, -1.0)

    def test_pole_parameter_rejected(self):
        """Test that a denominator at a pole is rejected."""
        with pytest.raises(DomainError) as exc_info:
            hyp1f2(1.0, -2.0, 0.5, 1.0)
        assert exc_info.value.parameter == "b1"

    def test_max_terms_exhausted(self):
        """Test ConvergenceError when the term budget runs out."""
        with pytest.raises(ConvergenceError) as exc_info:
            hyp1f2(2.23, 3.23, 1.69, 100.0, SeriesControl(max_terms=3))
        assert exc_info.value.method == "hyp1f2"
        assert exc_info.value.iterations == 3

    @pytest.mark.parametrize("z", [0.5, 10.0, 100.0, 400.0])
    def test_stable_under_more_terms(self, z):
        """Test that a doubled term budget and a tighter tolerance change nothing."""
        default = hyp1f2(2.23, 3.23, 1.69, z)
        doubled = hyp1f2(2.23, 3.23, 1.69, z, SeriesControl(max_terms=1000))
        tighter = hyp1f2(2.23, 3.23, 1.69, z, SeriesControl(max_terms=1000, rel_tol=1e-15))
        assert doubled == default
        assert tighter == pytest.approx(default, rel=1e-9)

    @pytest.mark.parametrize("z", [0.01, 1.0, 7.5, 60.0])
    @pytest.mark.parametrize("b2", [0.31, 1.69, 2.5])
    def test_reduces_to_0f1(self, b2, z):
        """Test 1F2(a; a, b2; z) = 0F1(; b2; z)."""
        assert hyp1f2(1.54, 1.54, b2, z) == pytest.approx(float(hyp0f1(b2, z)), rel=1e-9)
