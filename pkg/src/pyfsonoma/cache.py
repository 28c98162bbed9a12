"""Cache management for pyfsonoma.

The Gamma-Gamma upper tail cutoff that truncates every semi-infinite
integral is found by bisection on the survival function, which costs
dozens of tail quadratures. Cutoffs are memoised per parameter set; this
module provides the NumericsCache class for inspecting and clearing them.

Examples:
    >>> from pyfsonoma import NumericsCache
    >>> cache = NumericsCache()
    >>> cache.info()
    CacheInfo(size=1, maxsize=64, hit_rate=75.0%)
    >>> cache.flush()
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from pyfsonoma import channel as _channel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CacheInfo:
    """Snapshot of the tail-cutoff cache.

    Attributes:
        size: Current number of memoised cutoffs.
        maxsize: Number of cutoffs kept before the least recent is evicted.
        hit_rate: Ratio of cache hits to total lookups (0.0-1.0), or None if
            no lookups have been made.
    """

    size: int
    maxsize: int
    hit_rate: float | None

    def __repr__(self) -> str:
        """Return a string representation of the cache info."""
        hit_rate_str = f"{self.hit_rate:.1%}" if self.hit_rate is not None else "N/A"
        return f"CacheInfo(size={self.size}, maxsize={self.maxsize}, hit_rate={hit_rate_str})"


class NumericsCache:
    """Inspect and clear the memoised Gamma-Gamma tail cutoffs.

    The cache is shared by all instances and by every analysis call in the
    process; it is guarded by a lock and safe to use from several threads.

    Methods:
        info: Size, capacity and hit rate of the cutoff cache.
        flush: Clear all memoised cutoffs.

    Examples:
        >>> cache = NumericsCache()
        >>> info = cache.info()
        >>> print(f"{info.size} cutoffs memoised")
    """

    def info(self) -> CacheInfo:
        """Return the size, capacity and hit rate of the cutoff cache."""
        raw_info = _channel.get_cache_info()
        return CacheInfo(
            size=raw_info["size"],
            maxsize=raw_info["maxsize"],
            hit_rate=raw_info.get("hit_rate"),
        )

    def flush(self) -> None:
        """Clear all memoised cutoffs and reset the statistics."""
        logger.info("Flushing tail cutoff cache.")
        _channel.flush_cache()

    def __repr__(self) -> str:
        """Return a string representation of the cache."""
        info = self.info()
        return f"NumericsCache(size={info.size}, maxsize={info.maxsize})"
