"""Run-wide limits and output options.

Kept in its own module so core/solver/abduction can import it without
touching the CLI.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field


def _universe_default() -> int:
    raw = os.environ.get("ABDUKIT_MAX_UNIVERSE")
    if raw is None:
        return 18
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(
            "ABDUKIT_MAX_UNIVERSE must be an integer, got %r" % raw
        ) from None
    if value < 1:
        raise ValueError("ABDUKIT_MAX_UNIVERSE must be positive, got %d" % value)
    return value


@dataclass(frozen=True)
class RunConfig:
    """Limits and switches shared by the library and the CLI.

    max_ground_rules bounds grounding; max_universe bounds the number of
    distinct ground literals the solver may enumerate over.  The budgets
    exist to fail loudly instead of hanging: this toolkit targets
    desk-scale programs, not industrial ones.
    """

    max_ground_rules: int = 5000
    max_universe: int = field(default_factory=_universe_default)
    encoding: str = "naf-pair"  # or "disjunctive-fact"
    output: str = "text"  # or "machine"
    trace: bool = False

    def __post_init__(self) -> None:
        if self.encoding not in ("naf-pair", "disjunctive-fact"):
            raise ValueError("unknown encoding %r" % self.encoding)
        if self.output not in ("text", "machine"):
            raise ValueError("unknown output mode %r" % self.output)
        if self.max_ground_rules < 1 or self.max_universe < 1:
            raise ValueError("budgets must be positive")


DEFAULT_CONFIG = RunConfig()
