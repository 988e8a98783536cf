"""Runtime settings read from the environment (and a local ``.env``)."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    precision: int = 256            # bits for the mpmath kernel
    seed: int = 0                   # sampling checks
    enum_budget: int = 2_000_000    # candidate portraits per enumeration
    deck_max_degree: int = 8
    triple_max_degree: int = 6
    parse_max_degree: int = 1000    # largest exponent, and degree of a power, in parsed text
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> Settings:
        return cls(
            precision=int(os.environ.get("PULLBACK_PRECISION", "256")),
            seed=int(os.environ.get("PULLBACK_SEED", "0")),
            enum_budget=int(os.environ.get("PULLBACK_ENUM_BUDGET", "2000000")),
            deck_max_degree=int(os.environ.get("PULLBACK_DECK_MAX_DEGREE", "8")),
            triple_max_degree=int(
                os.environ.get("PULLBACK_TRIPLE_MAX_DEGREE", "6")
            ),
            parse_max_degree=int(os.environ.get("PULLBACK_PARSE_MAX_DEGREE", "1000")),
            log_level=os.environ.get("PULLBACK_LOG_LEVEL", "WARNING").upper(),
        )

    def override(self, **changes) -> Settings:
        """Return a copy with the non-None values of *changes* applied."""
        return replace(
            self, **{k: v for k, v in changes.items() if v is not None}
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logger.debug("settings loaded: %s", settings)
    return settings
