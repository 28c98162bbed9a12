"""NOMA decoding, SINRs and per-scheme outage events.

This module evaluates one fading realisation (or an array of them) at the
central unit: the SINR each base station sees under a decoding order and a
SIC assumption, the outage-optimal decoding order, and the outage events of
every multiple-access scheme.

Public Functions:
    rate: Achievable IM/DD rate at a given SINR.
    threshold_from_rate: SINR needed to support a target rate.
    critical_rate: Rate at which the SINR threshold equals one.
    qos_thresholds: Build QosThresholds from two target rates.
    oma_snr_penalty_db: SNR penalty of time sharing at a given rate.
    normalised_sinrs: SINRs of both BSs when decoded first.
    sinr: Per-BS SINR for a decoding order and SIC assumption.
    optimal_order: Outage-optimal decoding order of a draw.
    ordered_outage_events: Outage events for a forced decoding order.
    outage_events: Outage events of a scheme for one draw.
    outage_masks: Vectorised outage events over arrays of draws.

Examples:
    >>> from pyfsonoma import ChannelDraw, Scheme, SicAssumption
    >>> thr = qos_thresholds(0.1, 0.5)
    >>> outage_events(ChannelDraw(50.0, 5.0), thr, Scheme.OPTIMAL_DYNAMIC_NOMA,
    ...               SicAssumption.IMPERFECT)
    OutageEvents(oe1=False, oe2=False)
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from pyfsonoma._types import (
    BS1_FIRST,
    BS2_FIRST,
    ChannelDraw,
    DecodingOrder,
    OutageEvents,
    QosThresholds,
    Scheme,
    SicAssumption,
)
from pyfsonoma.constants import CRITICAL_RATE, SINR_RATE_FACTOR
from pyfsonoma.exceptions import DomainError

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]


# =============================================================================
# Rates and Thresholds
# =============================================================================


def rate(sinr_value: float) -> float:
    """Compute the achievable rate 1/2 log2(1 + (e / 2 pi) SINR).

    Args:
        sinr_value: Nonnegative SINR.

    Returns:
        Rate in bits/symbol.

    Raises:
        DomainError: If the SINR is negative.

    Examples:
        >>> rate(0.0)
        0.0
    """
    if sinr_value < 0.0:
        raise DomainError("SINR must be nonnegative", parameter="sinr", value=sinr_value)
    return 0.5 * math.log1p(sinr_value / SINR_RATE_FACTOR) / math.log(2.0)


def threshold_from_rate(target_rate: float) -> float:
    """Compute the SINR threshold (2 pi / e)(2^(2R) - 1) of a target rate.

    This is the exact inverse of ``rate``.

    Args:
        target_rate: Nonnegative rate in bits/symbol.

    Returns:
        The SINR threshold; zero for a zero rate.

    Raises:
        DomainError: If the rate is negative.

    Examples:
        >>> round(threshold_from_rate(0.1) * threshold_from_rate(0.5), 4)
        0.7945
    """
    if target_rate < 0.0:
        raise DomainError("rate must be nonnegative", parameter="rate", value=target_rate)
    return SINR_RATE_FACTOR * math.expm1(2.0 * target_rate * math.log(2.0))


def critical_rate() -> float:
    """Return the rate 1/2 log2(1 + e / 2 pi) whose threshold is one."""
    return CRITICAL_RATE


def qos_thresholds(rate1: float, rate2: float) -> QosThresholds:
    """Build consistent QosThresholds from two target rates.

    Examples:
        >>> qos_thresholds(0.0, 0.0).product
        0.0
    """
    return QosThresholds(
        gamma1_thr=threshold_from_rate(rate1),
        gamma2_thr=threshold_from_rate(rate2),
        rate1=rate1,
        rate2=rate2,
    )


def oma_snr_penalty_db(target_rate: float) -> float:
    """SNR penalty of OMA against an interference-free link at the same rate.

    Time sharing doubles the rate each BS must carry in its slot, so the
    threshold grows by the factor 2^(2R) + 1, which approaches 3 dB as the
    rate goes to zero.

    Args:
        target_rate: Nonnegative rate in bits/symbol.

    Returns:
        10 log10(threshold(2R) / threshold(R)) in dB.
    """
    if target_rate < 0.0:
        raise DomainError("rate must be nonnegative", parameter="rate", value=target_rate)
    return 10.0 * math.log10(2.0 ** (2.0 * target_rate) + 1.0)


# =============================================================================
# Per-Draw SINR and Decoding Order
# =============================================================================


def normalised_sinrs(draw: ChannelDraw) -> tuple[float, float]:
    """Return the SINRs of BS1 and BS2 when each is decoded first."""
    return draw.gamma1 / (draw.gamma2 + 1.0), draw.gamma2 / (draw.gamma1 + 1.0)


def _second_decoded_sinr(
    gamma_second: float, gamma_first: float, sic: SicAssumption, success: bool
) -> float:
    if sic is SicAssumption.PERFECT:
        return gamma_second
    if sic is SicAssumption.IMPERFECT:
        return gamma_second / ((1.0 - float(success)) * gamma_first + 1.0)
    return float(success) * gamma_second


def sinr(
    draw: ChannelDraw, order: DecodingOrder, sic: SicAssumption, success: bool
) -> tuple[float, float]:
    """Compute the SINR of both BSs for a decoding order.

    The first-decoded BS i sees the other as noise, gamma_i / (gamma_i' + 1).
    The second-decoded BS i' sees gamma_i' under perfect SIC,
    gamma_i' / ((1 - s) gamma_i + 1) under imperfect SIC and s * gamma_i'
    under worst-case SIC, where s flags a successful first decoding.

    Args:
        draw: The channel realisation.
        order: Decoding order.
        sic: SIC assumption.
        success: Whether the first decoding succeeded.

    Returns:
        Tuple of (SINR of BS1, SINR of BS2).
    """
    g1, g2 = draw.gamma1, draw.gamma2
    if order.bs1_first:
        return g1 / (g2 + 1.0), _second_decoded_sinr(g2, g1, sic, success)
    return _second_decoded_sinr(g1, g2, sic, success), g2 / (g1 + 1.0)


def optimal_order(draw: ChannelDraw, thr: QosThresholds) -> DecodingOrder:
    """Return the decoding order that jointly minimises both outages.

    BS2 is decoded first only when BS1 cannot be decoded first while BS2
    can; every other case uses the order (1, 2).

    Examples:
        >>> optimal_order(ChannelDraw(1.0, 10.0), QosThresholds(3.0, 2.0, 0.0, 0.0))
        DecodingOrder(first=2, second=1)
    """
    g_hat1, g_hat2 = normalised_sinrs(draw)
    if g_hat1 < thr.gamma1_thr and g_hat2 >= thr.gamma2_thr:
        return BS2_FIRST
    return BS1_FIRST


def ordered_outage_events(
    draw: ChannelDraw, thr: QosThresholds, order: DecodingOrder, sic: SicAssumption
) -> OutageEvents:
    """Evaluate the outage events of a forced decoding order.

    The success flag of the first decoding is whether the first-decoded BS
    meets its own threshold.
    """
    g_hat1, g_hat2 = normalised_sinrs(draw)
    success = g_hat1 >= thr.gamma1_thr if order.bs1_first else g_hat2 >= thr.gamma2_thr
    sinr1, sinr2 = sinr(draw, order, sic, success)
    return OutageEvents(oe1=sinr1 < thr.gamma1_thr, oe2=sinr2 < thr.gamma2_thr)


def outage_events(
    draw: ChannelDraw, thr: QosThresholds, scheme: Scheme, sic: SicAssumption
) -> OutageEvents:
    """Evaluate the outage events of a scheme for one draw.

    Args:
        draw: The channel realisation.
        thr: Target rates and thresholds.
        scheme: Multiple-access scheme.
        sic: SIC assumption (ignored by OMA, the bound and, in effect, by the
            optimal scheme).

    Returns:
        The OutageEvents of both BSs.
    """
    oe1, oe2 = outage_masks(
        np.array([draw.gamma1]), np.array([draw.gamma2]), thr, scheme, sic
    )
    return OutageEvents(oe1=bool(oe1[0]), oe2=bool(oe2[0]))


# =============================================================================
# Vectorised Outage Events
# =============================================================================


def _second_decoded_sinrs(
    gamma_second: FloatArray, gamma_first: FloatArray, success: BoolArray, sic: SicAssumption
) -> FloatArray:
    if sic is SicAssumption.PERFECT:
        return gamma_second
    s = success.astype(np.float64)
    if sic is SicAssumption.IMPERFECT:
        return gamma_second / ((1.0 - s) * gamma_first + 1.0)
    return s * gamma_second


def _ordered_masks(
    gamma1: FloatArray,
    gamma2: FloatArray,
    thr: QosThresholds,
    bs1_first: BoolArray,
    sic: SicAssumption,
) -> tuple[BoolArray, BoolArray, BoolArray]:
    """Outage masks for per-draw decoding orders.

    Returns:
        Tuple of (oe1, oe2, success of the first decoding).
    """
    g_hat1 = gamma1 / (gamma2 + 1.0)
    g_hat2 = gamma2 / (gamma1 + 1.0)
    success = np.where(bs1_first, g_hat1 >= thr.gamma1_thr, g_hat2 >= thr.gamma2_thr)
    sinr1 = np.where(bs1_first, g_hat1, _second_decoded_sinrs(gamma1, gamma2, success, sic))
    sinr2 = np.where(bs1_first, _second_decoded_sinrs(gamma2, gamma1, success, sic), g_hat2)
    return sinr1 < thr.gamma1_thr, sinr2 < thr.gamma2_thr, success


def outage_masks(
    gamma1: npt.ArrayLike,
    gamma2: npt.ArrayLike,
    thr: QosThresholds,
    scheme: Scheme,
    sic: SicAssumption,
) -> tuple[BoolArray, BoolArray]:
    """Evaluate the outage events of a scheme over arrays of draws.

    Element ``k`` of the result equals ``outage_events`` of the draw
    ``(gamma1[k], gamma2[k])``.

    Under the optimal scheme a failed first decoding means neither BS could
    be decoded first, and both are declared in outage whatever the SIC
    assumption; this makes its events identical for all three assumptions.

    Args:
        gamma1: SNRs of BS1.
        gamma2: SNRs of BS2.
        thr: Target rates and thresholds.
        scheme: Multiple-access scheme.
        sic: SIC assumption.

    Returns:
        Tuple of boolean arrays (oe1, oe2).
    """
    g1 = np.asarray(gamma1, dtype=np.float64)
    g2 = np.asarray(gamma2, dtype=np.float64)

    if scheme is Scheme.INTERFERENCE_FREE_BOUND:
        return g1 < thr.gamma1_thr, g2 < thr.gamma2_thr

    if scheme is Scheme.OMA:
        return (
            g1 < threshold_from_rate(2.0 * thr.rate1),
            g2 < threshold_from_rate(2.0 * thr.rate2),
        )

    if scheme is Scheme.FIXED_NOMA:
        bs1_first = np.ones(g1.shape, dtype=bool)
    elif scheme is Scheme.SORTED_DYNAMIC_NOMA:
        bs1_first = g1 >= g2
    else:
        g_hat1 = g1 / (g2 + 1.0)
        g_hat2 = g2 / (g1 + 1.0)
        bs1_first = ~((g_hat1 < thr.gamma1_thr) & (g_hat2 >= thr.gamma2_thr))

    oe1, oe2, success = _ordered_masks(g1, g2, thr, bs1_first, sic)
    if scheme is Scheme.OPTIMAL_DYNAMIC_NOMA:
        oe1 |= ~success
        oe2 |= ~success
    return oe1, oe2
