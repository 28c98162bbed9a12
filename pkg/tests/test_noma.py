"""Tests for the noma module."""

import itertools
import math

import numpy as np
import pytest

from pyfsonoma._types import (
    BS1_FIRST,
    BS2_FIRST,
    ChannelDraw,
    OutageEvents,
    QosThresholds,
    Scheme,
    SicAssumption,
)
from pyfsonoma.exceptions import DomainError
from pyfsonoma.noma import (
    _ordered_masks,
    critical_rate,
    normalised_sinrs,
    oma_snr_penalty_db,
    optimal_order,
    ordered_outage_events,
    outage_events,
    outage_masks,
    qos_thresholds,
    rate,
    sinr,
    threshold_from_rate,
)

UNIT = QosThresholds(1.0, 1.0, 0.0, 0.0)


def scalar_events(
    draw: ChannelDraw, thr: QosThresholds, scheme: Scheme, sic: SicAssumption
) -> tuple[bool, bool]:
    """Outage events from the per-draw decoding rules."""
    if scheme is Scheme.INTERFERENCE_FREE_BOUND:
        return draw.gamma1 < thr.gamma1_thr, draw.gamma2 < thr.gamma2_thr
    if scheme is Scheme.OMA:
        return (
            draw.gamma1 < threshold_from_rate(2.0 * thr.rate1),
            draw.gamma2 < threshold_from_rate(2.0 * thr.rate2),
        )
    if scheme is Scheme.FIXED_NOMA:
        order = BS1_FIRST
    elif scheme is Scheme.SORTED_DYNAMIC_NOMA:
        order = BS1_FIRST if draw.gamma1 >= draw.gamma2 else BS2_FIRST
    else:
        order = optimal_order(draw, thr)
    events = ordered_outage_events(draw, thr, order, sic)
    if scheme is Scheme.OPTIMAL_DYNAMIC_NOMA:
        g_hat1, g_hat2 = normalised_sinrs(draw)
        first_ok = g_hat1 >= thr.gamma1_thr if order.bs1_first else g_hat2 >= thr.gamma2_thr
        if not first_ok:
            return True, True
    return events.oe1, events.oe2


@pytest.fixture
def draws():
    """Log-uniform SNR pairs spanning the interesting range."""
    rng = np.random.default_rng(42)
    return 10.0 ** rng.uniform(-2.0, 2.0, size=(2, 4000))


class TestRates:
    """Tests for rate conversions."""

    @pytest.mark.parametrize("target", [0.0, 0.05, 0.1, 0.2594, 0.5, 1.0, 3.0])
    def test_inverse(self, target):
        """Test that rate inverts threshold_from_rate."""
        assert rate(threshold_from_rate(target)) == pytest.approx(target, abs=1e-14)

    def test_example_thresholds(self):
        """Test the thresholds of the 0.1/0.5 rate pair."""
        thr = qos_thresholds(0.1, 0.5)
        assert thr.gamma1_thr == pytest.approx(0.34372, rel=1e-4)
        assert thr.gamma2_thr == pytest.approx(2.3115, rel=1e-4)
        assert thr.product == pytest.approx(0.7945, abs=1e-4)
        assert (thr.rate1, thr.rate2) == (0.1, 0.5)

    def test_critical_rate(self):
        """Test that the critical rate has unit threshold."""
        assert threshold_from_rate(critical_rate()) == pytest.approx(1.0, abs=1e-12)
        assert qos_thresholds(critical_rate(), critical_rate()).product == pytest.approx(1.0)

    def test_zero_rate(self):
        """Test that a zero rate needs no SINR."""
        assert threshold_from_rate(0.0) == 0.0
        assert rate(0.0) == 0.0

    def test_negative_rejected(self):
        """Test that negative rates and SINRs are rejected."""
        with pytest.raises(DomainError):
            threshold_from_rate(-0.1)
        with pytest.raises(DomainError):
            rate(-1.0)
        with pytest.raises(DomainError):
            oma_snr_penalty_db(-0.1)

    def test_oma_penalty(self):
        """Test the OMA SNR penalty against the threshold ratio."""
        assert oma_snr_penalty_db(0.0) == pytest.approx(10.0 * math.log10(2.0))
        for target in (0.1, 0.5, 1.0):
            ratio = threshold_from_rate(2.0 * target) / threshold_from_rate(target)
            assert oma_snr_penalty_db(target) == pytest.approx(10.0 * math.log10(ratio))


class TestSinr:
    """Tests for per-draw SINRs and decoding orders."""

    def test_normalised_sinrs(self):
        """Test the SINRs when each BS is decoded first."""
        assert normalised_sinrs(ChannelDraw(10.0, 4.0)) == (2.0, 4.0 / 11.0)

    @pytest.mark.parametrize(
        ("sic", "success", "expected"),
        [
            (SicAssumption.PERFECT, True, 4.0),
            (SicAssumption.PERFECT, False, 4.0),
            (SicAssumption.IMPERFECT, True, 4.0),
            (SicAssumption.IMPERFECT, False, 4.0 / 11.0),
            (SicAssumption.WORST_CASE, True, 4.0),
            (SicAssumption.WORST_CASE, False, 0.0),
        ],
    )
    def test_second_decoded(self, sic, success, expected):
        """Test the SINR of the second-decoded BS under each SIC assumption."""
        sinr1, sinr2 = sinr(ChannelDraw(10.0, 4.0), BS1_FIRST, sic, success)
        assert sinr1 == 2.0
        assert sinr2 == pytest.approx(expected)

    def test_reversed_order(self):
        """Test that BS2 first swaps the roles."""
        sinr1, sinr2 = sinr(ChannelDraw(10.0, 4.0), BS2_FIRST, SicAssumption.IMPERFECT, False)
        assert sinr1 == pytest.approx(10.0 / 5.0)
        assert sinr2 == pytest.approx(4.0 / 11.0)

    @pytest.mark.parametrize(
        ("draw", "order"),
        [
            (ChannelDraw(10.0, 4.0), BS1_FIRST),
            (ChannelDraw(1.0, 10.0), BS2_FIRST),
            (ChannelDraw(0.5, 0.5), BS1_FIRST),
            (ChannelDraw(0.0, 0.0), BS1_FIRST),
        ],
    )
    def test_optimal_order(self, draw, order):
        """Test that BS2 goes first only when BS1 cannot and BS2 can."""
        assert optimal_order(draw, UNIT) == order


class TestOutageEvents:
    """Tests for per-scheme outage events."""

    def test_optimal_reverses_when_needed(self):
        """Test that decoding BS2 first rescues both BSs."""
        events = outage_events(
            ChannelDraw(1.5, 10.0), UNIT, Scheme.OPTIMAL_DYNAMIC_NOMA, SicAssumption.IMPERFECT
        )
        assert events == OutageEvents(oe1=False, oe2=False)

    def test_fixed_cannot_reverse(self):
        """Test that fixed order loses both BSs on the same draw."""
        events = outage_events(
            ChannelDraw(1.5, 10.0), UNIT, Scheme.FIXED_NOMA, SicAssumption.WORST_CASE
        )
        assert events == OutageEvents(oe1=True, oe2=True)

    @pytest.mark.parametrize("sic", list(SicAssumption))
    def test_both_fail_declares_both(self, sic):
        """Test that a failed first decoding puts both BSs in outage."""
        events = outage_events(ChannelDraw(0.5, 0.5), UNIT, Scheme.OPTIMAL_DYNAMIC_NOMA, sic)
        assert events == OutageEvents(oe1=True, oe2=True)

    def test_perfect_sic_fixed_can_beat_optimal(self):
        """Test the one case where perfect SIC favours fixed order."""
        thr = QosThresholds(1.0, 2.0, 0.0, 0.0)
        draw = ChannelDraw(1.0, 3.0)
        perfect = SicAssumption.PERFECT
        assert outage_events(draw, thr, Scheme.FIXED_NOMA, perfect) == OutageEvents(True, False)
        assert outage_events(draw, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, perfect) == OutageEvents(
            True, True
        )

    def test_ordered_events(self):
        """Test forced decoding orders."""
        draw = ChannelDraw(10.0, 4.0)
        events = ordered_outage_events(draw, UNIT, BS1_FIRST, SicAssumption.IMPERFECT)
        assert events == OutageEvents(oe1=False, oe2=False)
        events = ordered_outage_events(draw, UNIT, BS2_FIRST, SicAssumption.WORST_CASE)
        assert events == OutageEvents(oe1=True, oe2=True)

    def test_oma_uses_doubled_rate(self):
        """Test that OMA compares each SNR with the threshold of twice its rate."""
        thr = qos_thresholds(0.5, 0.5)
        needed = threshold_from_rate(1.0)
        draw = ChannelDraw(needed * 1.01, needed * 0.99)
        events = outage_events(draw, thr, Scheme.OMA, SicAssumption.IMPERFECT)
        assert events == OutageEvents(oe1=False, oe2=True)

    def test_bound_ignores_interference(self):
        """Test that the bound compares raw SNRs with the thresholds."""
        events = outage_events(
            ChannelDraw(1.5, 0.5), UNIT, Scheme.INTERFERENCE_FREE_BOUND, SicAssumption.WORST_CASE
        )
        assert events == OutageEvents(oe1=False, oe2=True)

    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_zero_rates_never_outage(self, scheme):
        """Test that zero target rates are always met."""
        thr = qos_thresholds(0.0, 0.0)
        for g1, g2 in ((0.0, 0.0), (0.3, 7.0), (50.0, 0.01)):
            events = outage_events(ChannelDraw(g1, g2), thr, scheme, SicAssumption.IMPERFECT)
            assert events == OutageEvents(oe1=False, oe2=False)


class TestOutageMasks:
    """Tests for vectorised outage masks."""

    @pytest.mark.parametrize(("scheme", "sic"), list(itertools.product(Scheme, SicAssumption)))
    def test_matches_scalar(self, draws, scheme, sic):
        """Test that masks agree with the scalar decoding rules draw by draw."""
        thr = qos_thresholds(0.1, 0.5)
        g1, g2 = draws[:, :300]
        oe1, oe2 = outage_masks(g1, g2, thr, scheme, sic)
        for k in range(g1.size):
            draw = ChannelDraw(float(g1[k]), float(g2[k]))
            assert (bool(oe1[k]), bool(oe2[k])) == scalar_events(draw, thr, scheme, sic)

    def test_optimal_independent_of_sic(self, draws):
        """Test that the optimal scheme gives the same events under every SIC assumption."""
        thr = qos_thresholds(0.2, 0.4)
        g1, g2 = draws
        reference = outage_masks(g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, SicAssumption.PERFECT)
        for sic in (SicAssumption.IMPERFECT, SicAssumption.WORST_CASE):
            oe1, oe2 = outage_masks(g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, sic)
            np.testing.assert_array_equal(oe1, reference[0])
            np.testing.assert_array_equal(oe2, reference[1])

    @pytest.mark.parametrize("sic", [SicAssumption.IMPERFECT, SicAssumption.WORST_CASE])
    @pytest.mark.parametrize("rates", [(0.1, 0.5), (0.3, 0.3), (0.6, 0.05)])
    def test_optimal_dominates_pointwise(self, draws, sic, rates):
        """Test bound <= optimal <= fixed and sorted on every draw."""
        thr = qos_thresholds(*rates)
        g1, g2 = draws
        opt = outage_masks(g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, sic)
        bound = outage_masks(g1, g2, thr, Scheme.INTERFERENCE_FREE_BOUND, sic)
        for baseline in (Scheme.FIXED_NOMA, Scheme.SORTED_DYNAMIC_NOMA):
            other = outage_masks(g1, g2, thr, baseline, sic)
            for i in range(2):
                assert not np.any(opt[i] & ~other[i])
        for i in range(2):
            assert not np.any(bound[i] & ~opt[i])

    def test_accepts_lists(self):
        """Test that plain sequences are accepted."""
        oe1, oe2 = outage_masks(
            [10.0, 0.5], [4.0, 0.5], UNIT, Scheme.FIXED_NOMA, SicAssumption.IMPERFECT
        )
        assert oe1.tolist() == [False, True]
        assert oe2.tolist() == [False, True]


class TestOutageProperties:
    """Randomised property checks over a million draws."""

    N_BLOCKS = 20
    BLOCK_SIZE = 50_000

    @staticmethod
    def blocks():
        """Yield (gamma1, gamma2, thresholds) blocks with random thresholds."""
        rng = np.random.default_rng(1_000_003)
        for _ in range(TestOutageProperties.N_BLOCKS):
            thr1, thr2 = 10.0 ** rng.uniform(-1.5, 1.0, 2)
            thr = QosThresholds(float(thr1), float(thr2), 0.0, 0.0)
            g1, g2 = 10.0 ** rng.uniform(-2.0, 3.0, size=(2, TestOutageProperties.BLOCK_SIZE))
            yield g1, g2, thr

    @pytest.mark.slow
    def test_optimal_independent_of_sic(self):
        """Test that the optimal scheme is bitwise identical under every SIC assumption."""
        for g1, g2, thr in self.blocks():
            reference = outage_masks(
                g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, SicAssumption.PERFECT
            )
            for sic in (SicAssumption.IMPERFECT, SicAssumption.WORST_CASE):
                oe1, oe2 = outage_masks(g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, sic)
                np.testing.assert_array_equal(oe1, reference[0])
                np.testing.assert_array_equal(oe2, reference[1])

    @pytest.mark.slow
    @pytest.mark.parametrize("sic", [SicAssumption.IMPERFECT, SicAssumption.WORST_CASE])
    def test_no_order_beats_optimal(self, sic):
        """Test that neither fixed order nor the flipped optimal order improves any BS."""
        for g1, g2, thr in self.blocks():
            opt = outage_masks(g1, g2, thr, Scheme.OPTIMAL_DYNAMIC_NOMA, sic)
            g_hat1, g_hat2 = g1 / (g2 + 1.0), g2 / (g1 + 1.0)
            opt_bs1_first = ~((g_hat1 < thr.gamma1_thr) & (g_hat2 >= thr.gamma2_thr))
            forced_orders = (
                np.ones(g1.shape, dtype=bool),
                np.zeros(g1.shape, dtype=bool),
                ~opt_bs1_first,
            )
            for bs1_first in forced_orders:
                oe1, oe2, _ = _ordered_masks(g1, g2, thr, bs1_first, sic)
                assert not np.any(opt[0] & ~oe1)
                assert not np.any(opt[1] & ~oe2)
