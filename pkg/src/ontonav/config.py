"""Runtime configuration with environment fallbacks.

Every knob has a flag on the CLI; the matching environment variable uses
the ONTONAV_ prefix (for example ONTONAV_DATA_DIR for --data-dir).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

ENV_PREFIX = "ONTONAV_"


@dataclass
class EngineConfig:
    # Classification: minimum keyword overlap before a record is assigned.
    tau: int = 2
    # Orphan promotion: group size and required common lemma count.
    promotion_min_members: int = 5
    promotion_min_shared: int = 2
    # A lemma pair must co-occur in at least this many node labels to link.
    cooccurrence_min_labels: int = 2
    # Query resolution keeps candidates at or above this Jaccard score.
    resolve_threshold: float = 0.5
    # Cap on terms handed to outbound search providers.
    max_query_terms: int = 8
    # When true, node keywords added after load also feed meta-queries.
    metaquery_include_added: bool = False
    # Evaluation cut-off.
    eval_k: int = 10
    # Stemmer variant per language (see textproc.STEMMERS).
    en_stemmer: str = "plural"
    fr_stemmer: str = "light"

    @classmethod
    def from_env(cls, **overrides) -> "EngineConfig":
        """Build a config from ONTONAV_* variables, then apply overrides.

        Overrides with value None are ignored so CLI flags can pass through
        unset optionals without clobbering the environment.
        """
        values = {}
        for f in fields(cls):
            raw = os.environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.type in ("int", int):
                values[f.name] = int(raw)
            elif f.type in ("float", float):
                values[f.name] = float(raw)
            elif f.type in ("bool", bool):
                values[f.name] = raw.strip().lower() in ("1", "true", "yes", "on")
            else:
                values[f.name] = raw
        for key, value in overrides.items():
            if value is not None:
                values[key] = value
        return cls(**values)


def env_default(name: str, fallback: str | None = None) -> str | None:
    """Environment fallback for CLI flags that are not part of EngineConfig."""
    return os.environ.get(ENV_PREFIX + name.upper(), fallback)
