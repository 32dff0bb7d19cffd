"""
Runtime settings.

Defaults are overridden by FIBRANTKIT_<FIELD> environment variables, which are
in turn overridden by explicit values (the CLI flags).
"""

import logging
import os
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "FIBRANTKIT_"


class Settings(BaseModel):
    """Caps and sweep parameters shared by every construction."""

    model_config = {"frozen": True}

    dim: int = Field(default=3, ge=0, description="Truncation dimension T")
    kmax: int = Field(default=1, ge=0)
    lmax: int = Field(default=1, ge=0)
    morphism_cap: int = Field(default=20_000, ge=1)
    simplex_cap: int = Field(default=200_000, ge=1)
    adjoint_depth: int = Field(default=2, ge=0)
    workers: int = Field(default=1, ge=1)
    record_timings: bool = False
    check_auxiliary: Optional[bool] = None
    sweep_objects: int = Field(default=5, ge=0)

    @classmethod
    def from_env(
        cls,
        overrides: Optional[Mapping[str, Any]] = None,
        environ: Optional[Mapping[str, str]] = None,
    ) -> "Settings":
        """
        Build settings from the environment plus explicit overrides.

        Args:
            overrides: Explicit values; entries that are None are ignored
            environ: Environment mapping (default: os.environ)

        Returns:
            Validated settings

        Raises:
            ValueError: If an environment variable does not parse
        """
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for name in cls.model_fields:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = raw
        for name, value in (overrides or {}).items():
            if value is not None:
                values[name] = value
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise ValueError(f"Invalid fibrantkit settings: {e}") from e


_active: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the active settings, reading the environment on first use."""
    global _active
    if _active is None:
        _active = Settings.from_env()
        logger.debug(f"Settings loaded from environment: {_active}")
    return _active


def configure(settings: Settings) -> Settings:
    """Install settings as the process-wide active settings."""
    global _active
    _active = settings
    return settings


def resolve_cap(cap: Optional[int], kind: str = "morphism") -> int:
    """Return cap if given, else the active morphism or simplex cap."""
    if cap is not None:
        return cap
    settings = get_settings()
    return settings.simplex_cap if kind == "simplex" else settings.morphism_cap
