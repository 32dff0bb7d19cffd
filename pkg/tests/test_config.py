"""Tests for runtime settings."""

import pytest

from fibrantkit.config import Settings, configure, get_settings, resolve_cap


@pytest.fixture
def restore_settings():
    """Restore the active settings after a test installs its own."""
    previous = get_settings()
    yield
    configure(previous)


class TestSettings:
    """Tests for settings resolution."""

    def test_defaults(self):
        """Test the default caps and sweep parameters."""
        settings = Settings.from_env(environ={})

        assert settings.dim == 3
        assert settings.kmax == 1 and settings.lmax == 1
        assert settings.morphism_cap == 20_000
        assert settings.simplex_cap == 200_000
        assert settings.workers == 1
        assert settings.check_auxiliary is None

    def test_environment(self):
        """Test that FIBRANTKIT_ variables are read and coerced."""
        settings = Settings.from_env(environ={"FIBRANTKIT_DIM": "2", "FIBRANTKIT_RECORD_TIMINGS": "true"})

        assert settings.dim == 2
        assert settings.record_timings is True

    def test_overrides_beat_environment(self):
        """Test that explicit values win and None overrides are ignored."""
        settings = Settings.from_env({"dim": 4, "kmax": None}, environ={"FIBRANTKIT_DIM": "2", "FIBRANTKIT_KMAX": "2"})

        assert settings.dim == 4
        assert settings.kmax == 2

    def test_invalid_value(self):
        """Test that unparsable values raise ValueError."""
        with pytest.raises(ValueError, match="Invalid fibrantkit settings"):
            Settings.from_env(environ={"FIBRANTKIT_WORKERS": "0"})

    def test_configure_and_resolve_cap(self, restore_settings):
        """Test that resolve_cap reads the active settings."""
        configure(Settings(morphism_cap=7, simplex_cap=11))

        assert resolve_cap(None) == 7
        assert resolve_cap(None, "simplex") == 11
        assert resolve_cap(3) == 3
