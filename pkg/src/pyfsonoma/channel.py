"""FSO link budget and Gamma-Gamma turbulence.

This module computes the deterministic gains of an FSO link (atmospheric
path loss, beam-divergence geometric loss, composite SNR coefficients) and
provides the density, distribution, survival function and sampler of the
unit-mean Gamma-Gamma fade.

Public Functions:
    db_to_watts: Convert optical power from dBm to watts.
    path_loss: Atmospheric path loss 10^(-kappa d / 10).
    geometric_loss: Geometric loss erf(sqrt(pi) r / (sqrt(2) phi d))^2.
    link_budget: Compose the losses into a LinkBudget.
    gg_pdf: Gamma-Gamma probability density.
    gg_cdf: Gamma-Gamma distribution function (residue series).
    gg_sf: Gamma-Gamma survival function.
    gg_sample: Draw Gamma-Gamma fades from a numpy Generator.
    upper_cutoff: Memoised 1 - p quantile used to truncate integrals.
    flush_cache: Clear the cutoff cache.
    get_cache_info: Get information about the cutoff cache.
"""

from __future__ import annotations

import logging
import math
import threading
from typing import Any, overload

import numpy as np
from cachetools import LRUCache
from scipy.optimize import bisect

from pyfsonoma._types import (
    LinkBudget,
    OpticsParams,
    QuadratureControl,
    SeriesControl,
    TurbulenceParams,
)
from pyfsonoma.constants import BESSEL_UNDERFLOW_X, TAIL_PROBABILITY
from pyfsonoma.exceptions import ConvergenceError, DomainError
from pyfsonoma.quadrature import integrate
from pyfsonoma.specfun import bessel_k, erf, gamma, hyp1f2, ln_gamma

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)

# Bound on the rounding error of the two-term series, in units of eps times
# the larger term
_CANCELLATION_FACTOR = 8.0

# Tolerances for the quadrature fallback and the tail integral
_FALLBACK_CONTROL = QuadratureControl(abs_tol=1e-12, rel_tol=1e-10, tail_probability=1e-13)
_TAIL_REL_TOL = 1e-9

# =============================================================================
# Cache Management
# =============================================================================

# Cutoffs keyed by (alpha, beta, tail_probability)
_cutoff_cache: LRUCache[tuple[float, float, float], float] = LRUCache(maxsize=64)
_cache_lock = threading.Lock()

# Cache statistics stored in a mutable container to avoid global statements
_cache_stats: dict[str, int] = {"hits": 0, "misses": 0}


def flush_cache() -> None:
    """Clear all memoised tail cutoffs.

    Note:
        This also resets the cache hit/miss statistics.
    """
    with _cache_lock:
        _cutoff_cache.clear()
        _cache_stats["hits"] = 0
        _cache_stats["misses"] = 0


def get_cache_info() -> dict[str, Any]:
    """Get information about the current cache state.

    Returns:
        A dictionary with the cache size, maxsize and hit rate.
    """
    with _cache_lock:
        total = _cache_stats["hits"] + _cache_stats["misses"]
        hit_rate = _cache_stats["hits"] / total if total > 0 else None
        return {
            "size": len(_cutoff_cache),
            "maxsize": _cutoff_cache.maxsize,
            "hit_rate": hit_rate,
        }


# =============================================================================
# Link Budget
# =============================================================================


def db_to_watts(power_dbm: float) -> float:
    """Convert optical power from dBm to watts.

    Examples:
        >>> db_to_watts(30.0)
        1.0
    """
    return 10.0 ** ((power_dbm - 30.0) / 10.0)


def path_loss(attenuation: float, distance: float) -> float:
    """Compute the atmospheric path loss 10^(-kappa d / 10).

    Args:
        attenuation: Weather-dependent attenuation factor kappa (1/m).
        distance: Link length (m).

    Returns:
        Path loss in (0, 1].

    Raises:
        DomainError: If either input is negative.
    """
    if attenuation < 0.0:
        raise DomainError(
            "attenuation must be nonnegative", parameter="attenuation", value=attenuation
        )
    if distance < 0.0:
        raise DomainError("distance must be nonnegative", parameter="distance", value=distance)
    return 10.0 ** (-attenuation * distance / 10.0)


def geometric_loss(aperture_radius: float, divergence: float, distance: float) -> float:
    """Compute the geometric loss caused by beam divergence.

    Args:
        aperture_radius: Receive aperture radius r (m).
        divergence: Beam divergence angle phi (rad).
        distance: Link length (m).

    Returns:
        erf(sqrt(pi) r / (sqrt(2) phi d))^2 in (0, 1].

    Raises:
        DomainError: If any input is not positive.
    """
    for name, value in (
        ("aperture_radius", aperture_radius),
        ("divergence", divergence),
        ("distance", distance),
    ):
        if not value > 0.0:
            raise DomainError(f"{name} must be positive", parameter=name, value=value)
    v = math.sqrt(math.pi) * aperture_radius / (math.sqrt(2.0) * divergence * distance)
    return erf(v) ** 2


def link_budget(
    power_dbm: float, attenuation: float, distance: float, optics: OpticsParams
) -> LinkBudget:
    """Compose the deterministic gains of one link.

    The responsivity enters both coefficients so that the SNR of a fade h
    is ``gamma = e * h**2 = P^2 (rho * path * geo * h)^2 / noise_variance``.

    Args:
        power_dbm: Optical transmit power (dBm).
        attenuation: Attenuation factor kappa (1/m).
        distance: Link length (m).
        optics: Transceiver optics and receiver noise.

    Returns:
        The LinkBudget of the link.

    Examples:
        >>> budget = link_budget(0.0, 4.2e-3, 1000.0, OpticsParams.default())
        >>> round(budget.e, 1)
        89.9
    """
    h_path = path_loss(attenuation, distance)
    h_geo = geometric_loss(optics.aperture_radius, optics.divergence, distance)
    c = (optics.responsivity * h_path * h_geo) ** 2
    p_watt = db_to_watts(power_dbm)
    e = p_watt * p_watt * c / optics.noise_variance
    return LinkBudget(path_loss=h_path, geo_loss=h_geo, e=e, c=c)


# =============================================================================
# Gamma-Gamma Distribution
# =============================================================================


def gg_pdf(h: float, t: TurbulenceParams) -> float:
    """Evaluate the Gamma-Gamma density at ``h > 0``.

    f(h) = 2 (ab)^((a+b)/2) / (G(a) G(b)) h^((a+b)/2 - 1) K_{a-b}(2 sqrt(ab h))

    Args:
        h: Positive fade value.
        t: Turbulence parameters.

    Returns:
        The density, which is zero once the Bessel factor underflows.

    Raises:
        DomainError: If h <= 0.
    """
    if not h > 0.0:
        raise DomainError(f"gg_pdf requires h > 0, got {h!r}", parameter="h", value=h)
    x = 2.0 * math.sqrt(t.product * h)
    if x > BESSEL_UNDERFLOW_X:
        return 0.0
    half_sum = 0.5 * (t.alpha + t.beta)
    log_coeff = (
        math.log(2.0)
        + half_sum * math.log(t.product)
        - ln_gamma(t.alpha)
        - ln_gamma(t.beta)
        + (half_sum - 1.0) * math.log(h)
    )
    return math.exp(log_coeff) * bessel_k(t.order, x)


def _gg_cdf_series(h: float, t: TurbulenceParams, ctrl: SeriesControl) -> tuple[float, float]:
    """Two-term residue series of the CDF.

    Returns:
        Tuple of (value, magnitude of the larger term), both normalised by
        Gamma(alpha) Gamma(beta).
    """
    a, b = t.alpha, t.beta
    z = t.product * h
    norm = math.exp(ln_gamma(a) + ln_gamma(b))
    term_a = gamma(b - a) * z**a / a * hyp1f2(a, a + 1.0, a - b + 1.0, z, ctrl)
    term_b = gamma(a - b) * z**b / b * hyp1f2(b, b + 1.0, b - a + 1.0, z, ctrl)
    return (term_a + term_b) / norm, max(abs(term_a), abs(term_b)) / norm


def _gg_cdf_quadrature(h: float, t: TurbulenceParams) -> float:
    """CDF by quadrature of the density, integrating the smaller side."""
    if h <= 1.0:
        value, _ = integrate(
            lambda y: gg_pdf(y, t), 0.0, h, _FALLBACK_CONTROL, method="gg_cdf"
        )
        return value
    return 1.0 - gg_sf(h, t)


def gg_cdf(h: float, t: TurbulenceParams, ctrl: SeriesControl | None = None) -> float:
    """Evaluate the Gamma-Gamma distribution function.

    The two-term residue series in 1F2 functions is used while it converges
    and its truncation and rounding error, measured against the larger
    term, stays below ``ctrl.rel_tol``; otherwise the density is
    integrated numerically.

    Args:
        h: Nonnegative fade value.
        t: Turbulence parameters (alpha - beta non-integer).
        ctrl: Series convergence control. Defaults to SeriesControl().

    Returns:
        F(h) in [0, 1].

    Raises:
        DomainError: If h < 0.

    Examples:
        >>> gg_cdf(0.0, TurbulenceParams.default())
        0.0
    """
    if math.isnan(h) or h < 0.0:
        raise DomainError(f"gg_cdf requires h >= 0, got {h!r}", parameter="h", value=h)
    if h == 0.0:
        return 0.0
    if math.isinf(h):
        return 1.0

    ctrl = ctrl or SeriesControl()
    try:
        value, scale = _gg_cdf_series(h, t, ctrl)
        series_tol = ctrl.rel_tol
        if scale > 1.0:
            # Truncation error of the sum scales with the larger term
            series_tol = max(ctrl.rel_tol / (2.0 * scale), _EPS)
            tight = SeriesControl(max_terms=ctrl.max_terms, rel_tol=series_tol)
            value, scale = _gg_cdf_series(h, t, tight)
    except ConvergenceError:
        logger.debug("gg_cdf series did not converge at h=%g; using quadrature", h)
        value = _gg_cdf_quadrature(h, t)
    else:
        if max(_CANCELLATION_FACTOR * _EPS, series_tol) * scale > ctrl.rel_tol:
            logger.debug("gg_cdf series loses accuracy at h=%g; using quadrature", h)
            value = _gg_cdf_quadrature(h, t)
    return min(max(value, 0.0), 1.0)


def gg_sf(h: float, t: TurbulenceParams, ctrl: SeriesControl | None = None) -> float:
    """Evaluate the survival function 1 - F(h).

    Beyond the unit mean the tail is integrated directly, so that small
    tail probabilities keep their relative accuracy.

    Args:
        h: Nonnegative fade value.
        t: Turbulence parameters.
        ctrl: Series control for the body of the distribution.

    Returns:
        Pr(fade > h).
    """
    if math.isnan(h) or h < 0.0:
        raise DomainError(f"gg_sf requires h >= 0, got {h!r}", parameter="h", value=h)
    if h <= 1.0:
        return 1.0 - gg_cdf(h, t, ctrl)
    value, _ = integrate(
        lambda y: gg_pdf(y, t),
        h,
        math.inf,
        _FALLBACK_CONTROL,
        method="gg_sf",
        abs_tol=0.0,
        rel_tol=_TAIL_REL_TOL,
    )
    return min(max(value, 0.0), 1.0)


def upper_cutoff(t: TurbulenceParams, tail_probability: float = TAIL_PROBABILITY) -> float:
    """Find the fade beyond which at most ``tail_probability`` mass remains.

    The quantile is bracketed by doubling and refined by bisection on the
    log survival function. Results are memoised per parameter set.

    Args:
        t: Turbulence parameters.
        tail_probability: Mass allowed beyond the cutoff.

    Returns:
        The cutoff h with gg_sf(h) approximately equal to tail_probability.
    """
    key = (t.alpha, t.beta, tail_probability)
    with _cache_lock:
        if key in _cutoff_cache:
            _cache_stats["hits"] += 1
            return _cutoff_cache[key]

    logger.debug("Computing upper cutoff for alpha=%g, beta=%g, p=%g", *key)
    target = math.log(tail_probability)

    def excess(h: float) -> float:
        return math.log(max(gg_sf(h, t), 1e-300)) - target

    lower, upper = 1.0, 2.0
    while excess(upper) > 0.0:
        lower, upper = upper, 2.0 * upper
    cutoff = float(bisect(excess, lower, upper, rtol=1e-6))

    with _cache_lock:
        _cache_stats["misses"] += 1
        _cutoff_cache[key] = cutoff
    return cutoff


@overload
def gg_sample(t: TurbulenceParams, rng: np.random.Generator, size: None = None) -> float: ...


@overload
def gg_sample(t: TurbulenceParams, rng: np.random.Generator, size: int) -> np.ndarray: ...


def gg_sample(
    t: TurbulenceParams, rng: np.random.Generator, size: int | None = None
) -> float | np.ndarray:
    """Draw unit-mean Gamma-Gamma fades.

    Each fade is X * Y with X ~ Gamma(alpha, scale 1/alpha) and
    Y ~ Gamma(beta, scale 1/beta) independent, which has exactly the
    Gamma-Gamma density.

    Args:
        t: Turbulence parameters.
        rng: Seeded numpy Generator; not to be shared across threads.
        size: Number of draws, or None for a single float.

    Returns:
        A float when size is None, otherwise an array of ``size`` fades.

    Examples:
        >>> rng = np.random.default_rng(1)
        >>> gg_sample(TurbulenceParams.default(), rng) > 0
        True
    """
    x = rng.gamma(t.alpha, 1.0 / t.alpha, size)
    y = rng.gamma(t.beta, 1.0 / t.beta, size)
    if size is None:
        return float(x * y)
    return np.asarray(x * y)
