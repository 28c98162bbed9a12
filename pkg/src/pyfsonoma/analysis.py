"""Semi-analytical and high-SNR outage of the optimal NOMA scheme.

The outage events of the optimal scheme decompose into two kinds of
probabilities over independent Gamma-Gamma fades X and Y:

    f1(a, b, c, d) = Pr(a X^2 / (b Y^2 + 1) >= c, b Y^2 < d)
    f2(a, b, c, d) = Pr(a X^2 / (b Y^2 + 1) <= c, b Y^2 / (a X^2 + 1) <= d)

each reduced to a one-dimensional integral evaluated by adaptive quadrature.
At high SNR the outage either decays with slope min(alpha, beta) / 2 in the
electrical SNR, or saturates at a floor given by the CDF of the ratio of two
fades, depending on whether the product of the SINR thresholds is below one.

Public Functions:
    f1_integral: First one-dimensional outage integral.
    f2_integral: Second one-dimensional outage integral (two pieces).
    outage_exact: Outage of both BSs by quadrature.
    f1_series: Small-argument expansion of the Gamma-Gamma CDF.
    f2_ratio_cdf: CDF of the ratio of two iid Gamma-Gamma fades.
    outage_asymptotic: High-SNR approximation of both outages.
    diversity_order: Diversity order min(alpha, beta) / 2.
    regime: Asymptotic regime implied by the thresholds.
    fit_decay_slope: Fitted decay of an outage curve per 10 dB.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from pyfsonoma._types import (
    AsymptoticOutage,
    AsymptoticRegime,
    LinkBudget,
    OutageMethod,
    OutageResult,
    QosThresholds,
    QuadratureControl,
    TurbulenceParams,
)
from pyfsonoma.channel import gg_cdf, gg_pdf, upper_cutoff
from pyfsonoma.exceptions import DomainError, ValidationError
from pyfsonoma.quadrature import integrate
from pyfsonoma.specfun import gamma, ln_gamma

logger = logging.getLogger(__name__)

# Relative tolerance of the equal-power precondition
_EQUAL_POWER_RTOL = 1e-9


def _clip(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def _cutoff(t: TurbulenceParams, q: QuadratureControl) -> float:
    if q.upper_cutoff is not None:
        return q.upper_cutoff
    return upper_cutoff(t, q.tail_probability)


def _truncated_cdf(h: float, t: TurbulenceParams, cutoff: float) -> float:
    """Gamma-Gamma CDF that is exactly one beyond the truncation point."""
    return 1.0 if h >= cutoff else gg_cdf(h, t)


def _check_integral_args(a: float, b: float, c: float, d: float) -> None:
    for name, value in (("a", a), ("b", b)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(
                f"{name} must be positive, got {value!r}", parameter=name, value=value
            )
    for name, value in (("c", c), ("d", d)):
        if not (math.isfinite(value) and value >= 0.0):
            raise DomainError(
                f"{name} must be nonnegative, got {value!r}", parameter=name, value=value
            )


# =============================================================================
# One-Dimensional Outage Integrals
# =============================================================================


def _f1(
    a: float, b: float, c: float, d: float, t: TurbulenceParams, q: QuadratureControl
) -> tuple[float, float]:
    _check_integral_args(a, b, c, d)
    if d == 0.0:
        return 0.0, 0.0

    y_max = math.sqrt(d / b)
    if c == 0.0:
        return gg_cdf(y_max, t), 0.0

    cutoff = _cutoff(t, q)

    def integrand(y: float) -> float:
        x_min = math.sqrt(c * (b * y * y + 1.0) / a)
        return (1.0 - _truncated_cdf(x_min, t, cutoff)) * gg_pdf(y, t)

    return integrate(integrand, 0.0, min(y_max, cutoff), q, method="f1_integral")


def _f2(
    a: float, b: float, c: float, d: float, t: TurbulenceParams, q: QuadratureControl
) -> tuple[float, float]:
    _check_integral_args(a, b, c, d)
    if c == 0.0 or d == 0.0:
        return 0.0, 0.0

    cutoff = _cutoff(t, q)
    if c * d < 1.0:
        zeta = min(math.sqrt(d * (1.0 + c) / (b * (1.0 - c * d))), cutoff)
    else:
        zeta = cutoff
    y_lower = math.sqrt(d / b)

    def upper_piece(y: float) -> float:
        x_max = math.sqrt(c * (b * y * y + 1.0) / a)
        return _truncated_cdf(x_max, t, cutoff) * gg_pdf(y, t)

    def lower_piece(y: float) -> float:
        x_min = math.sqrt(max(b * y * y / d - 1.0, 0.0) / a)
        return _truncated_cdf(x_min, t, cutoff) * gg_pdf(y, t)

    upper_value, upper_err = integrate(upper_piece, 0.0, zeta, q, method="f2_integral")
    lower_value, lower_err = integrate(lower_piece, y_lower, zeta, q, method="f2_integral")
    return upper_value - lower_value, upper_err + lower_err


def f1_integral(
    a: float,
    b: float,
    c: float,
    d: float,
    t: TurbulenceParams,
    q: QuadratureControl | None = None,
) -> float:
    """Compute Pr(a X^2 / (b Y^2 + 1) >= c, b Y^2 < d).

    Evaluated as the integral over y in [0, sqrt(d / b)] of
    [1 - F(sqrt(c (b y^2 + 1) / a))] f(y).

    Args:
        a: SNR coefficient of X (positive).
        b: SNR coefficient of Y (positive).
        c: SINR threshold applied to X (nonnegative).
        d: SNR threshold applied to Y (nonnegative).
        t: Turbulence parameters of both fades.
        q: Quadrature control. Defaults to QuadratureControl().

    Returns:
        The probability.

    Raises:
        DomainError: If an argument is outside its domain.
        ConvergenceError: If the quadrature does not meet its tolerance.
    """
    value, _ = _f1(a, b, c, d, t, q or QuadratureControl())
    return _clip(value)


def f2_integral(
    a: float,
    b: float,
    c: float,
    d: float,
    t: TurbulenceParams,
    q: QuadratureControl | None = None,
) -> float:
    """Compute Pr(a X^2 / (b Y^2 + 1) <= c, b Y^2 / (a X^2 + 1) <= d).

    The two boundary curves in the (y, x) plane meet at
    y = zeta = sqrt(d (1 + c) / (b (1 - c d))) when c d < 1 and never meet
    otherwise, in which case the upper limit is the truncation cutoff.

    Args:
        a: SNR coefficient of X (positive).
        b: SNR coefficient of Y (positive).
        c: SINR threshold applied to X (nonnegative).
        d: SINR threshold applied to Y (nonnegative).
        t: Turbulence parameters of both fades.
        q: Quadrature control. Defaults to QuadratureControl().

    Returns:
        The probability.

    Raises:
        DomainError: If an argument is outside its domain.
        ConvergenceError: If the quadrature does not meet its tolerance.
    """
    value, _ = _f2(a, b, c, d, t, q or QuadratureControl())
    return _clip(value)


def outage_exact(
    link1: LinkBudget,
    link2: LinkBudget,
    thr: QosThresholds,
    t: TurbulenceParams,
    q: QuadratureControl | None = None,
) -> tuple[OutageResult, OutageResult]:
    """Compute the outage of both BSs under the optimal scheme by quadrature.

    P1 = f2(e1, e2, thr1, thr2) + f1(e2, e1, thr2, thr1)
    P2 = f2(e1, e2, thr1, thr2) + f1(e1, e2, thr1, thr2)

    Args:
        link1: Link budget of BS1.
        link2: Link budget of BS2.
        thr: Target rates and thresholds.
        t: Turbulence parameters.
        q: Quadrature control. Defaults to QuadratureControl().

    Returns:
        Tuple of OutageResult for BS1 and BS2, with the summed quadrature
        error estimates as uncertainty.

    Raises:
        ConvergenceError: If any quadrature does not meet its tolerance.

    Examples:
        >>> p1, p2 = outage_exact(link1, link2, qos_thresholds(0.1, 0.5),
        ...                       TurbulenceParams.default())
        >>> 0.0 <= p1.probability <= 1.0
        True
    """
    q = q or QuadratureControl()
    e1, e2 = link1.e, link2.e
    thr1, thr2 = thr.gamma1_thr, thr.gamma2_thr

    both, both_err = _f2(e1, e2, thr1, thr2, t, q)
    only1, only1_err = _f1(e2, e1, thr2, thr1, t, q)
    only2, only2_err = _f1(e1, e2, thr1, thr2, t, q)
    logger.debug("outage_exact: f2=%.6g, f1(BS1)=%.6g, f1(BS2)=%.6g", both, only1, only2)

    return (
        OutageResult(_clip(both + only1), OutageMethod.QUADRATURE, both_err + only1_err),
        OutageResult(_clip(both + only2), OutageMethod.QUADRATURE, both_err + only2_err),
    )


# =============================================================================
# High-SNR Asymptotics
# =============================================================================


def f1_series(x: float, t: TurbulenceParams, *, leading_only: bool = False) -> float:
    """Small-argument expansion of the Gamma-Gamma CDF in x = alpha beta h.

    (1 / (G(a) G(b))) [G(b - a) x^a / a + G(a - b) x^b / b]

    Args:
        x: Nonnegative argument.
        t: Turbulence parameters (alpha - beta non-integer).
        leading_only: Keep only the term of order x^min(alpha, beta).

    Returns:
        The approximation of gg_cdf(x / (alpha beta)).

    Raises:
        DomainError: If x is negative.
    """
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"f1_series requires x >= 0, got {x!r}", parameter="x", value=x)
    if x == 0.0:
        return 0.0

    a, b = t.alpha, t.beta
    norm = math.exp(ln_gamma(a) + ln_gamma(b))
    term_a = gamma(b - a) * x**a / a
    term_b = gamma(a - b) * x**b / b
    if leading_only:
        return (term_b if b < a else term_a) / norm
    return (term_a + term_b) / norm


def f2_ratio_cdf(x: float, t: TurbulenceParams, q: QuadratureControl | None = None) -> float:
    """CDF of the ratio of two independent identically distributed fades.

    Pr(h1 / h2 <= x) = integral over y of F(x y) f(y). This equals the
    G^{2,3}_{3,3} Meijer-G closed form of the ratio distribution.

    Args:
        x: Nonnegative ratio.
        t: Turbulence parameters.
        q: Quadrature control. Defaults to QuadratureControl().

    Returns:
        The probability.

    Raises:
        DomainError: If x is negative.
        ConvergenceError: If the quadrature does not meet its tolerance.

    Examples:
        >>> round(f2_ratio_cdf(1.0, TurbulenceParams.default()), 8)
        0.5
    """
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"f2_ratio_cdf requires x >= 0, got {x!r}", parameter="x", value=x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0

    q = q or QuadratureControl()
    cutoff = _cutoff(t, q)

    def integrand(y: float) -> float:
        return _truncated_cdf(x * y, t, cutoff) * gg_pdf(y, t)

    value, _ = integrate(integrand, 0.0, cutoff, q, method="f2_ratio_cdf")
    return _clip(value)


def regime(thr: QosThresholds) -> AsymptoticRegime:
    """Return NoFloor when the threshold product is below one, else Floor."""
    return thr.regime


def diversity_order(t: TurbulenceParams) -> float:
    """Diversity order min(alpha, beta) / 2 with respect to the electrical SNR."""
    return 0.5 * min(t.alpha, t.beta)


def outage_asymptotic(
    link1: LinkBudget,
    link2: LinkBudget,
    thr: QosThresholds,
    t: TurbulenceParams,
    q: QuadratureControl | None = None,
) -> tuple[AsymptoticOutage, AsymptoticOutage]:
    """High-SNR outage of both BSs under the optimal scheme.

    Without a floor, P_i ~ F1(alpha beta sqrt(thr_i / (c_i gamma))) where
    gamma = P^2 / noise_variance is common to both links. With a floor,
    both BSs saturate at F2(sqrt(c thr1)) - F2(sqrt(c / thr2)), c = c2 / c1.

    Args:
        link1: Link budget of BS1.
        link2: Link budget of BS2 (same transmit power as BS1).
        thr: Target rates and thresholds.
        t: Turbulence parameters.
        q: Quadrature control for the ratio CDF.

    Returns:
        Tuple of AsymptoticOutage for BS1 and BS2.

    Raises:
        ValidationError: If the two links do not share one transmit power
            or have zero SNR.
    """
    snr1, snr2 = link1.snr_scale, link2.snr_scale
    if not (snr1 > 0.0 and snr2 > 0.0 and math.isfinite(snr1) and math.isfinite(snr2)):
        raise ValidationError(
            "High-SNR approximation requires positive, finite SNR on both links",
            parameter="link",
            value=(snr1, snr2),
        )
    if not math.isclose(snr1, snr2, rel_tol=_EQUAL_POWER_RTOL):
        raise ValidationError(
            "High-SNR approximation requires equal transmit powers "
            f"(P^2 / noise of {snr1:.6g} vs {snr2:.6g})",
            parameter="link2",
            value=snr2,
        )

    if thr.regime is AsymptoticRegime.NO_FLOOR:
        results = []
        for link, threshold in ((link1, thr.gamma1_thr), (link2, thr.gamma2_thr)):
            x = t.product * math.sqrt(threshold / link.e)
            results.append(AsymptoticOutage(AsymptoticRegime.NO_FLOOR, f1_series(x, t), x))
        return results[0], results[1]

    ratio = link2.c / link1.c
    floor = f2_ratio_cdf(math.sqrt(ratio * thr.gamma1_thr), t, q) - f2_ratio_cdf(
        math.sqrt(ratio / thr.gamma2_thr), t, q
    )
    floor_outage = AsymptoticOutage(AsymptoticRegime.FLOOR, _clip(floor))
    return floor_outage, floor_outage


def fit_decay_slope(power_dbm: Sequence[float], p_out: Sequence[float]) -> float:
    """Fit the decay of an outage curve in decades per 10 dB of power.

    A least-squares line is fitted to log10(P_out) against power / 10; the
    negated slope is returned. Points with zero or undefined outage are
    ignored. In the no-floor regime the result approaches min(alpha, beta).

    Args:
        power_dbm: Optical transmit powers (dBm).
        p_out: Outage probabilities at those powers.

    Returns:
        Decades of outage lost per 10 dB of optical power.

    Raises:
        ValidationError: If fewer than two usable points remain.
    """
    powers = np.asarray(power_dbm, dtype=np.float64)
    probabilities = np.asarray(p_out, dtype=np.float64)
    usable = np.isfinite(probabilities) & (probabilities > 0.0)
    if np.count_nonzero(usable) < 2:
        raise ValidationError(
            "Slope fit needs at least two positive outage values", parameter="p_out"
        )
    slope, _ = np.polyfit(powers[usable] / 10.0, np.log10(probabilities[usable]), 1)
    return float(-slope)
