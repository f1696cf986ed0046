"""Outbound search-provider queries built from node vocabulary.

Providers are plain config rows (name, URL template with one {terms}
placeholder, joiner, term cap) so operators can retarget them without
touching code. Terms are percent-encoded individually before joining.
"""

from __future__ import annotations

import json
import urllib.parse
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable

from .config import EngineConfig
from .errors import ConfigError, NoQueryableTerms, ValidationError
from .records import ArticleRecord
from .taxonomy import CcsNode
from .textproc import Pipeline

SCHOLAR = "scholar"


@dataclass(frozen=True)
class ProviderTemplate:
    name: str
    url_template: str
    term_joiner: str
    max_terms: int = 8

    def __post_init__(self):
        if not self.name:
            raise ConfigError("provider needs a name")
        if self.url_template.count("{terms}") != 1:
            raise ConfigError(
                f"provider {self.name!r} template must contain {{terms}} exactly once"
            )
        if not self.term_joiner:
            raise ConfigError(f"provider {self.name!r} needs a term joiner")
        if self.max_terms < 1:
            raise ConfigError(f"provider {self.name!r} max_terms must be positive")


@dataclass(frozen=True)
class MetaQuery:
    provider: str
    terms: tuple[str, ...]
    url: str


def load_providers(source: str | bytes | IO | None = None) -> dict[str, ProviderTemplate]:
    """Provider registry from JSON config; None loads the packaged defaults."""
    if source is None:
        source = resources.files("ontonav").joinpath("data/providers.json").read_text(
            encoding="utf-8"
        )
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        rows = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"provider config is not valid JSON: {exc.msg}") from None
    if not isinstance(rows, list):
        raise ConfigError("provider config must be an array")
    providers: dict[str, ProviderTemplate] = {}
    for row in rows:
        template = ProviderTemplate(
            name=row.get("name", ""),
            url_template=row.get("url_template", ""),
            term_joiner=row.get("term_joiner", "+"),
            max_terms=int(row.get("max_terms", 8)),
        )
        if template.name in providers:
            raise ConfigError(f"duplicate provider {template.name!r}")
        providers[template.name] = template
    return providers


def node_query_terms(
    node: CcsNode,
    pipeline: Pipeline,
    config: EngineConfig | None = None,
) -> list[str]:
    """English query terms for a node: label lemmas in label order.

    Duplicates collapse to their first occurrence; the list is capped at
    config.max_query_terms. With metaquery_include_added set, keywords
    added after load are appended (sorted) before capping.
    """
    config = config or EngineConfig()
    terms: list[str] = []
    seen: set[str] = set()
    for lemma in pipeline.analyze(node.label_en, "en"):
        if lemma.normalized not in seen:
            seen.add(lemma.normalized)
            terms.append(lemma.normalized)
    if config.metaquery_include_added:
        # proposal keywords hold French lemmas; remote engines expect English
        added = sorted(
            k.lemma
            for k in node.keywords.values()
            if k.origin == "added" and k.source != "proposal"
        )
        for lemma in added:
            if lemma not in seen:
                seen.add(lemma)
                terms.append(lemma)
    terms = terms[: config.max_query_terms]
    if not terms:
        raise NoQueryableTerms(f"node {node.code!r} has no queryable terms")
    return terms


def render_metaquery(
    providers: dict[str, ProviderTemplate], name: str, terms: Iterable[str]
) -> MetaQuery:
    """Substitute percent-encoded terms into one provider's template."""
    provider = providers.get(name)
    if provider is None:
        raise ConfigError(f"unknown provider {name!r}")
    used = tuple(terms)[: provider.max_terms]
    if not used:
        raise ValidationError("cannot render a meta-query without terms")
    encoded = provider.term_joiner.join(
        urllib.parse.quote(term, safe="") for term in used
    )
    return MetaQuery(
        provider=provider.name,
        terms=used,
        url=provider.url_template.replace("{terms}", encoded),
    )


def render_all(
    providers: dict[str, ProviderTemplate], terms: Iterable[str]
) -> list[MetaQuery]:
    terms = list(terms)
    return [render_metaquery(providers, name, terms) for name in sorted(providers)]


def scholar_fallback(
    record: ArticleRecord,
    providers: dict[str, ProviderTemplate],
    pipeline: Pipeline,
) -> MetaQuery:
    """Web-search escape hatch for records without a stored locator.

    Terms are the title lemmas plus the first author's family name; one
    term slot is reserved for the name so the cap never squeezes it out.
    """
    if record.uri:
        raise ValidationError(
            f"article {record.key!r} already has a locator: {record.uri}"
        )
    provider = providers.get(SCHOLAR)
    if provider is None:
        raise ConfigError("no scholar provider configured")
    terms = [l.normalized for l in pipeline.analyze(record.title, "en")]
    deduped: list[str] = []
    for term in terms:
        if term not in deduped:
            deduped.append(term)
    if record.authors:
        name = record.authors[0]
        family = name.split(",")[0].strip() if "," in name else name.split()[-1]
        deduped = deduped[: provider.max_terms - 1] + [family]
    return render_metaquery(providers, SCHOLAR, deduped)
