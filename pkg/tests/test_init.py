"""Tests for the public API exposed by __init__.py."""

import pyfsonoma
from pyfsonoma import (
    CacheInfo,
    ConfigError,
    NomaFsoError,
    NumericsCache,
    Scheme,
    SicAssumption,
    TurbulenceParams,
    ValidationError,
    outage_exact,
    sweep_power,
)


class TestPublicImports:
    """Test that all public API items are importable."""

    def test_all_names_exist(self):
        """Test that every name in __all__ is an attribute of the package."""
        missing = [name for name in pyfsonoma.__all__ if not hasattr(pyfsonoma, name)]
        assert missing == []

    def test_all_unique(self):
        """Test that __all__ has no duplicates."""
        assert len(set(pyfsonoma.__all__)) == len(pyfsonoma.__all__)

    def test_version(self):
        """Test that the version string is set."""
        assert isinstance(pyfsonoma.__version__, str)
        assert pyfsonoma.__version__

    def test_enums_importable(self):
        """Test that the enums are importable."""
        assert len(Scheme) == 5
        assert len(SicAssumption) == 3

    def test_exceptions_importable(self):
        """Test that the exception hierarchy is importable."""
        assert issubclass(ConfigError, ValidationError)
        assert issubclass(ValidationError, NomaFsoError)

    def test_functions_callable(self):
        """Test that the main entry points are callable."""
        assert callable(outage_exact)
        assert callable(sweep_power)

    def test_default_turbulence(self):
        """Test the default turbulence is available from the package."""
        assert TurbulenceParams.default().alpha == 2.23


class TestNumericsCacheAPI:
    """Tests for the NumericsCache API exposed at module level."""

    def test_flush(self):
        """Test that NumericsCache.flush() empties the cache."""
        cache = NumericsCache()
        cache.flush()
        assert cache.info().size == 0

    def test_info_returns_cacheinfo(self):
        """Test that NumericsCache.info() returns CacheInfo."""
        assert isinstance(NumericsCache().info(), CacheInfo)
