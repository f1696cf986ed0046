import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ontonav.engine import Engine
from ontonav.lexicon import FixtureTranslator
from ontonav.textproc import default_pipeline


@pytest.fixture(scope="session")
def pipeline():
    return default_pipeline()


@pytest.fixture()
def engine(tmp_path):
    """Fresh engine on the bundled tree with translated labels."""
    e = Engine.open(str(tmp_path / "work"))
    e.load_taxonomy()
    e.bootstrap(FixtureTranslator())
    return e


@pytest.fixture()
def bare_engine(tmp_path):
    """Engine with nothing loaded, for workspace lifecycle tests."""
    return Engine.open(str(tmp_path / "work"))


@pytest.fixture()
def taxonomy(engine):
    return engine.taxonomy


@pytest.fixture()
def lexicon(engine):
    return engine.lexicon
