#!/usr/bin/env python3
"""Freeze API payloads the frontend tests compare against byte for byte.

Writes JSON fixtures under frontend/test/fixtures/ so the TypeScript
suite can assert its URL building and tree handling match the service
exactly without a live server.

    python scripts/dump_ui_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, "src")

sys.path.insert(0, "tests")

from ontonav.engine import Engine
from ontonav.lexicon import FixtureTranslator
from ontonav.metaquery import node_query_terms, render_all
from ontonav.service import ApiRequest, Service

from corpusdata import TITLES, as_bibtex

OUT = Path("frontend/test/fixtures")


def dump(name: str, payload) -> None:
    (OUT / name).write_text(
        json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )


def main() -> int:
    import tempfile

    with tempfile.TemporaryDirectory() as workdir:
        engine = Engine.open(workdir)
        engine.load_taxonomy()
        engine.bootstrap(FixtureTranslator())
        engine.ingest_source(as_bibtex(TITLES))
        engine.build_links()
        service = Service(engine)

        OUT.mkdir(parents=True, exist_ok=True)

        dump("tree.json", service.dispatch(ApiRequest("GET", "/tree")).body)
        dump("node_h3.json", service.dispatch(ApiRequest("GET", "/node/H.3")).body)
        dump(
            "search_h3.json",
            service.dispatch(
                ApiRequest(
                    "GET",
                    "/search",
                    {"q": "information storage and retrieval", "lang": "en"},
                )
            ).body,
        )
        # t03 has no locator, so its payload carries the fallback URL
        dump("article_t03.json", service.dispatch(ApiRequest("GET", "/articles/t03")).body)

        expected = {}
        for code in ("H.3", "G.3", "I.3.3", "A.2"):
            terms = node_query_terms(engine.taxonomy.get(code), engine.pipeline, engine.config)
            expected[code] = {
                "terms": list(terms),
                "urls": {q.provider: q.url for q in render_all(engine.providers, terms)},
            }
        (OUT / "metaqueries.json").write_text(
            json.dumps(expected, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
        )

    print(f"wrote fixtures to {OUT}/", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
