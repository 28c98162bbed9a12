"""Tests for the NumericsCache class and cache management."""

from __future__ import annotations

import threading
from unittest.mock import patch

import pytest

from pyfsonoma import CacheInfo, NumericsCache, TurbulenceParams
from pyfsonoma.channel import upper_cutoff

TURBULENCE = TurbulenceParams(3.1, 1.7)


class TestCacheInfo:
    """Tests for the CacheInfo dataclass."""

    def test_cacheinfo_is_frozen(self):
        """Test that CacheInfo is immutable."""
        info = CacheInfo(size=5, maxsize=64, hit_rate=0.5)
        with pytest.raises(AttributeError):
            info.size = 10  # type: ignore[misc]

    def test_cacheinfo_repr_with_hit_rate(self):
        """Test CacheInfo repr with a hit rate."""
        repr_str = repr(CacheInfo(size=5, maxsize=64, hit_rate=0.75))
        assert "size=5" in repr_str
        assert "maxsize=64" in repr_str
        assert "75.0%" in repr_str

    def test_cacheinfo_repr_without_hit_rate(self):
        """Test CacheInfo repr when hit rate is None."""
        assert "N/A" in repr(CacheInfo(size=0, maxsize=64, hit_rate=None))

    def test_cacheinfo_equality(self):
        """Test CacheInfo equality comparison."""
        assert CacheInfo(size=5, maxsize=64, hit_rate=0.5) == CacheInfo(5, 64, 0.5)


class TestNumericsCache:
    """Tests for the NumericsCache class."""

    def test_flush_clears_cache(self):
        """Test that flush() empties the cache and resets the hit rate."""
        cache = NumericsCache()
        upper_cutoff(TURBULENCE)
        cache.flush()
        info = cache.info()
        assert info.size == 0
        assert info.hit_rate is None

    def test_info_valid_values(self):
        """Test that info() reports the capacity."""
        cache = NumericsCache()
        cache.flush()
        info = cache.info()
        assert isinstance(info, CacheInfo)
        assert info.maxsize == 64

    def test_repr(self):
        """Test NumericsCache repr."""
        cache = NumericsCache()
        cache.flush()
        assert repr(cache) == "NumericsCache(size=0, maxsize=64)"

    def test_multiple_instances_share_cache(self):
        """Test that instances share the same underlying cache."""
        cache1 = NumericsCache()
        cache2 = NumericsCache()
        cache1.flush()
        upper_cutoff(TURBULENCE)
        assert cache1.info().size == cache2.info().size == 1

    def test_hit_rate_tracking(self):
        """Test that hit rate is tracked correctly."""
        cache = NumericsCache()
        cache.flush()

        upper_cutoff(TURBULENCE, 1e-11)
        assert cache.info().hit_rate == 0.0

        upper_cutoff(TURBULENCE, 1e-11)
        assert cache.info().hit_rate == 0.5

        upper_cutoff(TURBULENCE, 1e-11)
        assert cache.info().hit_rate == pytest.approx(0.666, rel=0.01)

    def test_flush_forces_recomputation(self):
        """Test that a flushed cutoff is recomputed."""
        cache = NumericsCache()
        cache.flush()
        with patch("pyfsonoma.channel.bisect", return_value=7.5) as mock_bisect:
            assert upper_cutoff(TURBULENCE) == 7.5
            upper_cutoff(TURBULENCE)
            assert mock_bisect.call_count == 1

            cache.flush()
            upper_cutoff(TURBULENCE)
            assert mock_bisect.call_count == 2
        cache.flush()


class TestNumericsCacheThreadSafety:
    """Tests for NumericsCache thread safety."""

    def test_concurrent_flush_and_info(self):
        """Test concurrent flush and info calls."""
        cache = NumericsCache()
        errors = []

        def flush_loop():
            try:
                for _ in range(30):
                    cache.flush()
            except Exception as e:
                errors.append(e)

        def info_loop():
            try:
                for _ in range(30):
                    cache.info()
            except Exception as e:
                errors.append(e)

        threads = [
            threading.Thread(target=flush_loop),
            threading.Thread(target=info_loop),
            threading.Thread(target=flush_loop),
            threading.Thread(target=info_loop),
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert len(errors) == 0

    def test_concurrent_lookups_agree(self):
        """Test that threads computing the same cutoff agree."""
        NumericsCache().flush()
        results = []

        def lookup():
            results.append(upper_cutoff(TURBULENCE, 1e-10))

        threads = [threading.Thread(target=lookup) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert len(set(results)) == 1
