"""Process-wide knobs: materialization budget and paranoid-mode policy."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass
class Settings:
    budget: int = 50_000_000
    paranoid: str = "auto"  # on | off | auto
    ceiling: int = 200
    sample_fraction: float = 0.1
    sample_seed: int = 0
    max_samples: int = 200_000


settings = Settings()


@contextlib.contextmanager
def configured(**changes):
    """Temporarily override fields of the global settings."""
    saved = replace(settings)
    for key, value in changes.items():
        if not hasattr(settings, key):
            raise AttributeError(key)
        setattr(settings, key, value)
    try:
        yield settings
    finally:
        for key in changes:
            setattr(settings, key, getattr(saved, key))


def check_mode(dim: int) -> str:
    """Mode for an explicit axiom check on an object of the given size."""
    if settings.paranoid == "on" or dim <= settings.ceiling:
        return "full"
    return "sampled"


def asserting() -> bool:
    """Whether constructions verify their theorem-guaranteed outputs."""
    return settings.paranoid != "off"
