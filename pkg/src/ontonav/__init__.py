"""Bilingual domain-map retrieval over a computing classification tree."""

__version__ = "0.1.0"

from .config import EngineConfig
from .engine import Engine
from .taxonomy import Taxonomy
from .textproc import Pipeline

__all__ = ["Engine", "EngineConfig", "Pipeline", "Taxonomy", "__version__"]
