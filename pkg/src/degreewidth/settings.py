#!/usr/bin/env python3
# this_file: src/degreewidth/settings.py
"""Load, validate, and persist solver guards and output preferences."""

from __future__ import annotations

import shutil
from dataclasses import asdict, dataclass, field, fields, replace
from datetime import datetime
from pathlib import Path

import tomli
import tomli_w
from loguru import logger

from .errors import GuardExceededError, InvalidInstanceError

SETTINGS_DIR_NAME = ".degreewidth"
SETTINGS_FILE_NAME = "settings.toml"

# Largest values a guard may be raised to; beyond these the 2^n tables or the
# n! enumerations no longer fit in memory or time on a desk machine.
HARD_LIMITS = {
    "bruteforce_n": 12,
    "subset_dp_n": 26,
    "dichromatic_n": 24,
    "minimal_fas_arcs": 26,
    "ola_vec_n": 10,
    "sat_vars": 26,
}


@dataclass(frozen=True)
class Guards:
    """Size caps for every exponential solver."""

    bruteforce_n: int = 10
    subset_dp_n: int = 24
    dichromatic_n: int = 16
    minimal_fas_arcs: int = 20
    ola_vec_n: int = 8
    sat_vars: int = 20

    def validate(self) -> None:
        """Ensure every guard is a non-negative integer within its hard limit.

        Raises:
            InvalidInstanceError: If a guard is negative or not an integer.
            GuardExceededError: If a guard exceeds its hard limit.
        """
        for name, limit in HARD_LIMITS.items():
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidInstanceError(f"guard {name} must be a non-negative integer")
            if value > limit:
                raise GuardExceededError(name, limit, value)

    def with_override(self, name: str, value: int) -> Guards:
        """Return a copy with guard ``name`` set to ``value``.

        Args:
            name: Guard field to change.
            value: New cap.

        Returns:
            Guards: Validated copy.

        Raises:
            InvalidInstanceError: If ``name`` is not a guard.
        """
        if name not in HARD_LIMITS:
            raise InvalidInstanceError(f"unknown guard '{name}'")
        updated = replace(self, **{name: int(value)})
        updated.validate()
        return updated

    def as_dict(self) -> dict[str, int]:
        """Return the guards as a plain mapping (used in JSON reports)."""
        return asdict(self)


@dataclass
class Settings:
    """Concrete settings object persisted to ``settings.toml``."""

    guards: Guards = field(default_factory=Guards)
    threads: int = 1
    timing: bool = False
    indent: int = 2

    @classmethod
    def default(cls) -> Settings:
        """Return a :class:`Settings` instance with packaged defaults."""
        return cls()

    def validate(self) -> None:
        """Check guards and scalar preferences.

        Raises:
            InvalidInstanceError: If ``threads`` or ``indent`` is out of range.
        """
        self.guards.validate()
        if not isinstance(self.threads, int) or self.threads < 1:
            raise InvalidInstanceError("threads must be a positive integer")
        if not isinstance(self.timing, bool):
            raise InvalidInstanceError("timing must be boolean")
        if not isinstance(self.indent, int) or self.indent < 0:
            raise InvalidInstanceError("indent must be a non-negative integer")

    def to_dict(self) -> dict[str, object]:
        """Serialise the settings into a TOML-friendly mapping."""
        return {
            "guards": self.guards.as_dict(),
            "threads": self.threads,
            "timing": self.timing,
            "indent": self.indent,
        }

    @classmethod
    def from_dict(cls, payload: dict[str, object]) -> Settings:
        """Create :class:`Settings` from a mapping previously serialised.

        Unknown guard names are ignored so older files keep loading.

        Args:
            payload: Deserialised TOML content.

        Returns:
            Settings: Fully populated and validated settings instance.
        """
        raw_guards = payload.get("guards", {})
        if not isinstance(raw_guards, dict):
            raise InvalidInstanceError("[guards] must be a table")
        known = {f.name for f in fields(Guards)}
        guards = Guards(**{k: v for k, v in raw_guards.items() if k in known})
        settings = cls(
            guards=guards,
            threads=payload.get("threads", 1),  # type: ignore[arg-type]
            timing=payload.get("timing", False),  # type: ignore[arg-type]
            indent=payload.get("indent", 2),  # type: ignore[arg-type]
        )
        settings.validate()
        return settings


def settings_path(home: Path | None = None) -> Path:
    """Return the full path to ``settings.toml`` under ``home``.

    Args:
        home: Optional override directory; defaults to the current user's home.
    """
    base = home or Path.home()
    return base / SETTINGS_DIR_NAME / SETTINGS_FILE_NAME


def load_settings(home: Path | None = None) -> Settings:
    """Load settings from disk, creating defaults on first run.

    Args:
        home: Optional home directory override.

    Returns:
        Settings: Persisted settings or freshly created defaults.
    """
    path = settings_path(home)
    if not path.exists():
        settings = Settings.default()
        save_settings(settings, home)
        return settings
    with open(path, "rb") as handle:
        payload = tomli.load(handle)
    return Settings.from_dict(payload)


def save_settings(settings: Settings, home: Path | None = None) -> Path:
    """Persist ``settings`` to disk, creating a timestamped backup first.

    Args:
        settings: Settings instance to write.
        home: Optional home directory override.

    Returns:
        Path: Path to the written settings file.
    """
    settings.validate()
    target = settings_path(home)
    target.parent.mkdir(parents=True, exist_ok=True)
    if target.exists():
        backup = target.with_suffix(f"{target.suffix}.backup.{datetime.now():%Y%m%d_%H%M%S}")
        shutil.copy2(target, backup)
        logger.debug("Backed up {} to {}", target, backup)
    with open(target, "wb") as handle:
        tomli_w.dump(settings.to_dict(), handle)
    return target
