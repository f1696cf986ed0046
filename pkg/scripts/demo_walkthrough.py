#!/usr/bin/env python3
"""End-to-end walkthrough against a throwaway workspace.

Loads the bundled tree, ingests a few records, derives links, runs a
bilingual query, then pushes a label proposal through review. Prints
each step so the output doubles as living documentation.

    python scripts/demo_walkthrough.py
"""

from __future__ import annotations

import sys
import tempfile

sys.path.insert(0, "src")

from ontonav.engine import Engine
from ontonav.lexicon import FixtureTranslator

DEMO_BIB = """
@article{demo:ir1,
  title = {Information storage and retrieval on magnetic disk},
  author = {Moreau, Ana},
  year = {1999},
  journal = {Journal of Systems Research},
}
@article{demo:ds1,
  title = {Data structures for information storage},
  author = {Tanaka, Kaori and Silva, Bruno},
  year = {2001},
  journal = {Symposium on Data Engineering},
}
@article{demo:gfx1,
  title = {Picture and image generation for games},
  author = {Novak, Lena},
  year = {2003},
  journal = {Workshop on Applied Computing},
}
"""


def step(title: str) -> None:
    print(f"\n== {title} ==")


def main() -> int:
    with tempfile.TemporaryDirectory() as workdir:
        engine = Engine.open(workdir)

        step("load bundled tree")
        engine.load_taxonomy()
        report = engine.bootstrap(FixtureTranslator())
        print(f"{len(engine.taxonomy.nodes)} nodes, {report.translated} translated labels")

        step("ingest records")
        stats, parse_report = engine.ingest_source(DEMO_BIB, "bibtex")
        print(f"inserted {stats.inserted}, skipped {len(parse_report.skipped)}")
        for rec in sorted(engine.corpus.records.values(), key=lambda r: r.key):
            place = sorted(rec.assigned_nodes) or [f"orphan@{rec.orphan_host}"]
            print(f"  {rec.key}: {', '.join(place)}")

        step("derive links")
        label_links, dual_links = engine.build_links()
        print(f"label-cooccurrence: {label_links}, dual-indexing: {dual_links}")
        for link in engine.taxonomy.all_links():
            print(f"  {link.node_a} -- {link.node_b}  w={link.weight} ({link.provenance})")

        step("bilingual resolve")
        for query, lang in [
            ("recherche d'information", "fr"),
            ("storage retrieval", "en"),
        ]:
            result = engine.lexicon.resolve_query(query, lang)
            if result.is_miss:
                print(f"  {lang} {query!r}: {result.miss_message}")
            else:
                best = result.hits[0]
                print(f"  {lang} {query!r}: {best.node} (score {best.score:.2f})")

        step("corpus search")
        for record, score in engine.corpus.search("information storage"):
            print(f"  {score:>2}  {record.key}  {record.title}")

        step("proposal lifecycle")
        proposal = engine.lexicon.submit_proposal(
            node="I.3.3",
            text="rendu non-photorealiste",
            kind="specification",
            proposer="marie",
        )
        print(f"  submitted {proposal.id} ({proposal.status})")
        engine.lexicon.vote(proposal.id, "pierre", "approve")
        engine.lexicon.vote(proposal.id, "sofia", "approve")
        print(f"  after two approvals: {proposal.status}")
        result = engine.lexicon.resolve_query("rendu non-photorealiste", "fr")
        print(f"  fr query now resolves to: {result.hits[0].node}")

        step("persist")
        engine.save()
        print(f"  state digest {engine.state_digest()[:16]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
