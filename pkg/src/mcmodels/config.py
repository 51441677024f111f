"""Run configuration shared by the command line and the experiment scripts."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .core import InvalidInput


@dataclass
class RunConfig:
    subcommand: str
    cap: int = 3            # weight cap
    arity_cap: int = 3
    degree_cap: int = 6     # t-degree for ODEs, polynomial degree for forms
    seed: int = 0
    out: str | None = None  # None or "json" means stdout
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("cap", "arity_cap", "degree_cap"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")

    def to_json(self):
        return asdict(self)
