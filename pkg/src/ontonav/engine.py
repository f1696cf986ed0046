"""Workspace wiring: one object owning taxonomy, lexicon, corpus, providers.

State persists as three files in a data directory: taxonomy.json and
lexicon.json are rewritten whole (they are small), corpus.jsonl is an
append-friendly upsert log replayed last-wins at load time. No external
database is involved.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Callable, Iterable

from .config import EngineConfig
from .corpus import CorpusStore, IngestStats
from .errors import NotFound
from .lexicon import BootstrapReport, FixtureTranslator, Lexicon
from .metaquery import ProviderTemplate, load_providers
from .records import ArticleRecord, ParseReport, parse_records
from .taxonomy import Taxonomy
from .textproc import Pipeline, cooccurrence_links

TAXONOMY_FILE = "taxonomy.json"
LEXICON_FILE = "lexicon.json"
CORPUS_FILE = "corpus.jsonl"
STATE_VERSION = 1


def bundled_taxonomy_text() -> str:
    return resources.files("ontonav").joinpath("data/ccs_core.json").read_text(
        encoding="utf-8"
    )


@dataclass
class Engine:
    config: EngineConfig = field(default_factory=EngineConfig)
    pipeline: Pipeline = None  # type: ignore[assignment]
    taxonomy: Taxonomy | None = None
    lexicon: Lexicon | None = None
    corpus: CorpusStore | None = None
    providers: dict[str, ProviderTemplate] = field(default_factory=dict)
    data_dir: Path | None = None

    def __post_init__(self):
        if self.pipeline is None:
            self.pipeline = Pipeline(
                stemmer_names={
                    "en": self.config.en_stemmer,
                    "fr": self.config.fr_stemmer,
                }
            )
        if not self.providers:
            self.providers = load_providers()

    @property
    def ready(self) -> bool:
        return self.taxonomy is not None

    def require_ready(self) -> None:
        if not self.ready:
            raise NotFound("no taxonomy loaded; run the load step first")

    # ------------------------------------------------------------------
    # lifecycle

    def load_taxonomy(self, source: str | bytes | IO | None = None) -> Taxonomy:
        """Load an interchange document (None means the bundled tree)."""
        if source is None:
            source = bundled_taxonomy_text()
        self.taxonomy = Taxonomy.load(source, self.pipeline)
        self.lexicon = Lexicon(
            self.taxonomy, self.pipeline, self.config.resolve_threshold
        )
        self.lexicon.sync_canonical_en()
        self.corpus = CorpusStore(self.taxonomy, self.pipeline, self.config)
        return self.taxonomy

    def bootstrap(self, translator: Callable[[str], str] | None = None) -> BootstrapReport:
        self.require_ready()
        return self.lexicon.bootstrap_translations(translator or FixtureTranslator())

    def ingest_source(
        self, source: str | bytes | IO, format: str = "bibtex"
    ) -> tuple[IngestStats, ParseReport]:
        self.require_ready()
        records, report = parse_records(source, format)
        stats = self.ingest(records)
        return stats, report

    def ingest(self, records: Iterable[ArticleRecord]) -> IngestStats:
        self.require_ready()
        return self.corpus.ingest(records)

    def build_links(self) -> tuple[int, int]:
        """Run both link derivation passes; returns (cooccurrence, dual) counts."""
        self.require_ready()
        label_links = cooccurrence_links(
            self.taxonomy, self.config.cooccurrence_min_labels
        )
        dual_links = self.corpus.derive_dual_links()
        return len(label_links), len(dual_links)

    # ------------------------------------------------------------------
    # persistence

    def _paths(self) -> tuple[Path, Path, Path]:
        assert self.data_dir is not None
        return (
            self.data_dir / TAXONOMY_FILE,
            self.data_dir / LEXICON_FILE,
            self.data_dir / CORPUS_FILE,
        )

    def save(self) -> None:
        """Rewrite the whole workspace (compacts the corpus log)."""
        if self.data_dir is None:
            return
        self.require_ready()
        self.data_dir.mkdir(parents=True, exist_ok=True)
        tax_path, lex_path, corpus_path = self._paths()
        tax_state = {"version": STATE_VERSION, **self.taxonomy.to_state()}
        tax_path.write_text(
            json.dumps(tax_state, ensure_ascii=False, indent=1), encoding="utf-8"
        )
        lex_state = {"version": STATE_VERSION, **self.lexicon.to_state()}
        lex_path.write_text(
            json.dumps(lex_state, ensure_ascii=False, indent=1), encoding="utf-8"
        )
        with corpus_path.open("w", encoding="utf-8") as fh:
            for row in self.corpus.record_rows():
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")

    def append_corpus_rows(self, keys: Iterable[str]) -> None:
        """Append upserts for the given keys without rewriting the log."""
        if self.data_dir is None:
            return
        _, _, corpus_path = self._paths()
        corpus_path.parent.mkdir(parents=True, exist_ok=True)
        with corpus_path.open("a", encoding="utf-8") as fh:
            for row in self.corpus.record_rows(keys):
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")

    @classmethod
    def open(
        cls,
        data_dir: str | Path | None,
        config: EngineConfig | None = None,
        providers_source: str | Path | None = None,
    ) -> "Engine":
        """Open a workspace; missing state files leave the engine unloaded."""
        providers = (
            load_providers(Path(providers_source).read_text(encoding="utf-8"))
            if providers_source
            else load_providers()
        )
        engine = cls(
            config=config or EngineConfig(),
            providers=providers,
            data_dir=Path(data_dir) if data_dir else None,
        )
        if engine.data_dir is None:
            return engine
        tax_path, lex_path, corpus_path = engine._paths()
        if not tax_path.exists():
            return engine
        tax_state = json.loads(tax_path.read_text(encoding="utf-8"))
        engine.taxonomy = Taxonomy.from_state(tax_state, engine.pipeline)
        if lex_path.exists():
            lex_state = json.loads(lex_path.read_text(encoding="utf-8"))
            engine.lexicon = Lexicon.from_state(
                lex_state,
                engine.taxonomy,
                engine.pipeline,
                engine.config.resolve_threshold,
            )
        else:
            engine.lexicon = Lexicon(
                engine.taxonomy, engine.pipeline, engine.config.resolve_threshold
            )
            engine.lexicon.sync_canonical_en()
        rows: dict[str, dict] = {}
        if corpus_path.exists():
            with corpus_path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        row = json.loads(line)
                        rows[row["key"]] = row  # last write wins
        engine.corpus = CorpusStore.from_rows(
            rows.values(), engine.taxonomy, engine.pipeline, engine.config
        )
        return engine

    # ------------------------------------------------------------------
    # introspection

    def state_digest(self) -> str:
        """Stable hash over everything mutable; unchanged reads keep it fixed."""
        self.require_ready()
        blob = json.dumps(
            {
                "taxonomy": self.taxonomy.to_state(),
                "lexicon": self.lexicon.to_state(),
                "corpus": self.corpus.record_rows(),
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()
