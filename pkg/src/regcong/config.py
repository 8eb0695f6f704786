"""Runtime configuration shared by the series builders and the CLI."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

ENV_PREFIX = "REGCONG_"

# Default ceiling on coefficients held in one series array.  Large enough for
# the heavy mod-11 certificate (~2.49e7 terms), small enough to reject jobs
# that would not fit a desktop by accident.
DEFAULT_MEMORY_CAP = 26_000_000

# Cap applied when the caller explicitly opts into huge jobs.
HUGE_MEMORY_CAP = 4_000_000_000


def _env(name: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + name)


@dataclass(frozen=True)
class Config:
    memory_cap: int = DEFAULT_MEMORY_CAP  # max coefficients per series array
    threads: int = 1                      # worker threads for prime scans
    cache_dir: Optional[Path] = None      # directory for binary series caches
    output: str = "text"                  # CLI rendering: "text" or "json"
    huge: bool = False                    # opt-in to jobs beyond the default cap

    def __post_init__(self):
        if self.memory_cap < 1000:
            raise ValueError("memory_cap must be at least 1000 coefficients")
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")

    @property
    def effective_cap(self) -> int:
        return max(self.memory_cap, HUGE_MEMORY_CAP) if self.huge else self.memory_cap

    def with_huge(self) -> "Config":
        return replace(self, huge=True)

    @classmethod
    def from_env(cls) -> "Config":
        """Build a config from REGCONG_* environment variables."""
        kwargs = {}
        if (v := _env("MEMORY_CAP")) is not None:
            kwargs["memory_cap"] = int(v)
        if (v := _env("THREADS")) is not None:
            kwargs["threads"] = int(v)
        if (v := _env("CACHE_DIR")) is not None:
            kwargs["cache_dir"] = Path(v)
        if (v := _env("OUTPUT")) is not None:
            kwargs["output"] = v
        if (v := _env("HUGE")) is not None:
            kwargs["huge"] = v.lower() in ("1", "true", "yes", "on")
        return cls(**kwargs)


DEFAULT_CONFIG = Config()
