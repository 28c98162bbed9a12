"""Real-valued special functions.

Self-contained implementations of the special functions needed by the
channel and analysis modules. All functions are pure and operate on
Python floats, which is what the quadrature integrands consume.

Public Functions:
    ln_gamma: Natural logarithm of the Gamma function for x > 0.
    gamma: Gamma function for real arguments away from the poles.
    erf: Error function.
    bessel_k: Modified Bessel function of the second kind, non-integer order.
    hyp1f2: Generalised hypergeometric series 1F2.
"""

from __future__ import annotations

import math

import numpy as np

from pyfsonoma._types import SeriesControl
from pyfsonoma.constants import (
    BESSEL_ASYMPTOTIC_MIN_X,
    BESSEL_SERIES_MAX_X,
    BESSEL_UNDERFLOW_X,
    INTEGER_ORDER_TOLERANCE,
    LANCZOS_DENOM,
    LANCZOS_G,
    LANCZOS_NUM,
    LOG_DOUBLE_MAX,
)
from pyfsonoma.exceptions import ConvergenceError, DomainError, RangeError

_EPS = float(np.finfo(float).eps)

# Coefficients in descending powers, as np.polyval expects
_LANCZOS_NUM = np.asarray(LANCZOS_NUM)
_LANCZOS_DENOM = np.asarray(LANCZOS_DENOM)

# Beyond this |x|, erf(x) rounds to +-1 in double precision
_ERF_SATURATION = 6.0

# From here on erf is formed as 1 - erfc
_ERFC_FRACTION_MIN_X = 3.0

_MAX_ITERATIONS = 10_000


# =============================================================================
# Gamma Function
# =============================================================================


def _lanczos_sum_expg_scaled(x: float) -> float:
    """Evaluate the scaled Lanczos rational sum at ``x > 0``."""
    if x <= 1.0:
        return float(np.polyval(_LANCZOS_NUM, x) / np.polyval(_LANCZOS_DENOM, x))
    # Evaluate in 1/x to keep the degree-12 polynomials finite
    y = 1.0 / x
    return float(np.polyval(_LANCZOS_NUM[::-1], y) / np.polyval(_LANCZOS_DENOM[::-1], y))


def ln_gamma(x: float) -> float:
    """Compute ln Gamma(x) for positive x.

    Uses the Lanczos approximation with g = 6.0247 and 13 rational
    coefficients, accurate to about 15 digits over the positive axis.

    Args:
        x: Positive real argument.

    Returns:
        The natural logarithm of Gamma(x).

    Raises:
        DomainError: If x is not positive and finite.

    Examples:
        >>> ln_gamma(1.0)
        0.0
        >>> round(ln_gamma(5.0), 12) == round(math.log(24.0), 12)
        True
    """
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}", parameter="x", value=x)
    if x in (1.0, 2.0):
        return 0.0
    zgh = x + LANCZOS_G - 0.5
    return math.log(_lanczos_sum_expg_scaled(x)) + (x - 0.5) * (math.log(zgh) - 1.0)


def gamma(x: float) -> float:
    """Compute Gamma(x) for real x that is not a pole.

    Negative arguments use the reflection formula
    Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).

    Args:
        x: Real argument, not zero or a negative integer.

    Returns:
        Gamma(x), which is negative on alternate unit intervals of x < 0.

    Raises:
        DomainError: At the poles x = 0, -1, -2, ...
        RangeError: If the result overflows.
    """
    if not math.isfinite(x) or (x <= 0.0 and x == math.floor(x)):
        raise DomainError(f"gamma is undefined at x = {x!r}", parameter="x", value=x)
    if x > 0.0:
        log_value = ln_gamma(x)
        if log_value > LOG_DOUBLE_MAX:
            raise RangeError(f"gamma({x!r}) overflows", method="gamma", argument=x)
        return math.exp(log_value)
    return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))


# =============================================================================
# Error Function
# =============================================================================


def _erfc_continued_fraction(x: float) -> float:
    """erfc(x) for x >= _ERFC_FRACTION_MIN_X by modified Lentz iteration.

    erfc(x) = exp(-x^2) / sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    """
    f = x
    c = x
    d = 0.0
    for n in range(1, _MAX_ITERATIONS + 1):
        a_n = 0.5 * n
        d = 1.0 / (x + a_n * d)
        c = x + a_n / c
        delta = c * d
        f *= delta
        if abs(delta - 1.0) <= _EPS:
            return math.exp(-x * x) / (math.sqrt(math.pi) * f)
    raise ConvergenceError(
        f"erfc continued fraction did not converge for x={x}",
        method="erfc_continued_fraction",
        iterations=_MAX_ITERATIONS,
    )


def erf(x: float) -> float:
    """Compute the error function.

    Below ``_ERFC_FRACTION_MIN_X`` sums the everywhere-positive series
    erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (2n+1)!!.
    Above it returns 1 - erfc(|x|) with erfc from its continued fraction,
    which keeps erf nondecreasing up to saturation at +-1.

    Args:
        x: Real argument.

    Returns:
        erf(x) in [-1, 1]. NaN propagates.

    Examples:
        >>> erf(0.0)
        0.0
        >>> erf(10.0)
        1.0
    """
    if math.isnan(x):
        return math.nan
    ax = abs(x)
    if ax >= _ERF_SATURATION:
        return math.copysign(1.0, x)
    if ax >= _ERFC_FRACTION_MIN_X:
        return math.copysign(1.0 - _erfc_continued_fraction(ax), x)

    two_x2 = 2.0 * ax * ax
    term = ax
    total = ax
    n = 0
    while term > _EPS * total:
        n += 1
        term *= two_x2 / (2 * n + 1)
        total += term

    value = 2.0 / math.sqrt(math.pi) * math.exp(-ax * ax) * total
    return math.copysign(min(value, 1.0), x)


# =============================================================================
# Modified Bessel Function of the Second Kind
# =============================================================================


def _bessel_i_series(nu: float, x: float) -> float:
    """Power series of the modified Bessel function I_nu(x)."""
    half = 0.5 * x
    term = half**nu / gamma(nu + 1.0)
    total = term
    quarter_x2 = half * half
    for k in range(1, _MAX_ITERATIONS):
        term *= quarter_x2 / (k * (k + nu))
        total += term
        if abs(term) <= _EPS * abs(total):
            return total
    raise ConvergenceError(
        f"I_nu series did not converge for nu={nu}, x={x}",
        method="bessel_i_series",
        iterations=_MAX_ITERATIONS,
    )


def _bessel_k_series(nu: float, x: float) -> float:
    """K_nu from the I_{-nu} and I_nu power series (small x)."""
    diff = _bessel_i_series(-nu, x) - _bessel_i_series(nu, x)
    return math.pi * diff / (2.0 * math.sin(math.pi * nu))


def _bessel_k_steed(nu: float, x: float) -> float:
    """K_nu from Steed's continued fraction with Temme normalisation.

    The fraction gives K_mu and K_{mu+1} for |mu| <= 1/2; the requested
    order is reached by forward recurrence, which is stable for K.
    """
    n_up = int(nu + 0.5)
    mu = nu - n_up
    a1 = 0.25 - mu * mu

    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAX_ITERATIONS):
        a -= 2 * (i - 1)
        c = -a * c / i
        q_new = (q1 - b * q2) / a
        q1, q2 = q2, q_new
        q += c * q_new
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:
        raise ConvergenceError(
            f"K_nu continued fraction did not converge for nu={nu}, x={x}",
            method="bessel_k_steed",
            iterations=_MAX_ITERATIONS,
        )

    h *= a1
    k_mu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k_mu1 = k_mu * (mu + x + 0.5 - h) / x
    for i in range(1, n_up + 1):
        k_mu, k_mu1 = k_mu1, (mu + i) * (2.0 / x) * k_mu1 + k_mu
    return k_mu


def _bessel_k_asymptotic(nu: float, x: float) -> float:
    """Large-x asymptotic expansion, truncated at its smallest term."""
    mu4 = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    for k in range(1, _MAX_ITERATIONS):
        next_term = term * (mu4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(next_term) >= abs(term) or abs(next_term) <= _EPS * abs(total):
            break
        term = next_term
        total += term
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def bessel_k(nu: float, x: float) -> float:
    """Compute the modified Bessel function K_nu(x) for non-integer nu.

    Three evaluation paths are used depending on x:

    - x <= 2: K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu)) from power series.
    - 2 < x < 25: Steed's continued fraction plus forward recurrence.
    - x >= 25: the asymptotic series in 1/x.

    Args:
        nu: Real order; |nu - round(nu)| must be at least 1e-6.
        x: Positive argument.

    Returns:
        K_nu(x) > 0. K is even in nu.

    Raises:
        DomainError: If x <= 0 or nu is (nearly) an integer.
        RangeError: If K_nu(x) overflows (x below the leading-term bound) or
            underflows (x > 700).

    Examples:
        >>> abs(bessel_k(0.5, 2.0) - math.sqrt(math.pi / 4.0) * math.exp(-2.0)) < 1e-15
        True
    """
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"bessel_k requires x > 0, got {x!r}", parameter="x", value=x)
    if abs(nu - round(nu)) < INTEGER_ORDER_TOLERANCE:
        raise DomainError(
            f"bessel_k requires a non-integer order, got nu={nu!r}",
            parameter="nu",
            value=nu,
        )

    nu = abs(nu)
    if x > BESSEL_UNDERFLOW_X:
        raise RangeError(f"K_nu({x!r}) underflows", method="bessel_k", argument=x)

    if x <= BESSEL_SERIES_MAX_X:
        # Leading small-x behaviour is Gamma(nu) / 2 * (2 / x)^nu
        log_leading = ln_gamma(nu) - math.log(2.0) + nu * math.log(2.0 / x)
        if log_leading > LOG_DOUBLE_MAX:
            raise RangeError(f"K_nu({x!r}) overflows", method="bessel_k", argument=x)
        return _bessel_k_series(nu, x)
    if x < BESSEL_ASYMPTOTIC_MIN_X:
        return _bessel_k_steed(nu, x)
    return _bessel_k_asymptotic(nu, x)


# =============================================================================
# Hypergeometric Series
# =============================================================================


def hyp1f2(a: float, b1: float, b2: float, z: float, ctrl: SeriesControl | None = None) -> float:
    """Sum the hypergeometric series 1F2(a; b1, b2; z) for z >= 0.

    The series is entire; summation stops once a term falls below
    ``ctrl.rel_tol`` times the partial sum.

    Args:
        a: Numerator parameter.
        b1: First denominator parameter (not zero or a negative integer).
        b2: Second denominator parameter (not zero or a negative integer).
        z: Nonnegative argument.
        ctrl: Series convergence control. Defaults to SeriesControl().

    Returns:
        The value of the series.

    Raises:
        DomainError: If z < 0 or a denominator parameter is a pole.
        ConvergenceError: If ``ctrl.max_terms`` terms do not reach the
            tolerance.

    Examples:
        >>> hyp1f2(2.23, 3.23, 1.69, 0.0)
        1.0
    """
    ctrl = ctrl or SeriesControl()
    if not (math.isfinite(z) and z >= 0.0):
        raise DomainError(f"hyp1f2 requires z >= 0, got {z!r}", parameter="z", value=z)
    for name, b in (("b1", b1), ("b2", b2)):
        if b <= 0.0 and b == math.floor(b):
            raise DomainError(
                f"hyp1f2 parameter {name} must not be zero or a negative integer, got {b!r}",
                parameter=name,
                value=b,
            )

    term = 1.0
    total = 1.0
    for k in range(ctrl.max_terms):
        term *= (a + k) / ((b1 + k) * (b2 + k) * (k + 1)) * z
        total += term
        if abs(term) <= ctrl.rel_tol * abs(total):
            return total

    raise ConvergenceError(
        f"hyp1f2({a}, {b1}, {b2}, {z}) did not converge in {ctrl.max_terms} terms",
        method="hyp1f2",
        iterations=ctrl.max_terms,
    )
