"""Article store: classification against the tree, indexing and search.

Classification scores a record's title lemmas against each standard
node's keyword cluster. Records reaching the overlap threshold are
assigned to every top-scoring node; the rest land in an orphan bin under
the best node's lazily created miscellaneous child (under the root's when
nothing scores at all). Every record therefore sits in exactly one of
{standard assignment, orphan bin}.

Orphan bins are periodically mined: a group of bin members sharing enough
title lemmas is promoted into a fresh branch next to the bin, named after
the two most frequent shared lemmas.
"""

from __future__ import annotations

import urllib.parse
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable

from .config import EngineConfig
from .errors import NotFound, UnanalyzableQuery
from .records import ArticleRecord, render_bibtex
from .taxonomy import MISCELLANEOUS, STANDARD, Taxonomy, code_key
from .textproc import Pipeline

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
DC_NS = "http://purl.org/dc/elements/1.1/"
NAV_NS = "urn:x-ontonav:schema#"


@dataclass
class IngestStats:
    inserted: int = 0
    updated: int = 0
    unchanged: int = 0


@dataclass
class ClassificationResult:
    assigned: frozenset[str]
    orphan_host: str | None
    score: int


@dataclass(frozen=True)
class IndexPosting:
    lemma: str
    postings: tuple[tuple[str, int], ...]  # (key, term frequency), key-sorted


@dataclass
class PromotedBranch:
    code: str
    label: str
    members: tuple[str, ...]


class CorpusStore:
    def __init__(
        self,
        taxonomy: Taxonomy,
        pipeline: Pipeline | None = None,
        config: EngineConfig | None = None,
    ):
        self.taxonomy = taxonomy
        self.pipeline = pipeline or taxonomy.pipeline
        self.config = config or EngineConfig()
        self.records: dict[str, ArticleRecord] = {}
        self._index: dict[str, dict[str, int]] = {}  # lemma -> key -> tf
        self.bins: dict[str, set[str]] = {}  # misc host code -> member keys

    def __len__(self) -> int:
        return len(self.records)

    # ------------------------------------------------------------------
    # indexing

    def _index_record(self, record: ArticleRecord) -> None:
        counts = Counter(
            l.normalized for l in self.pipeline.analyze(record.title, "en")
        )
        for lemma, tf in counts.items():
            self._index.setdefault(lemma, {})[record.key] = tf

    def _unindex_record(self, record: ArticleRecord) -> None:
        for lemma in record.title_lemmas:
            postings = self._index.get(lemma)
            if postings is not None:
                postings.pop(record.key, None)
                if not postings:
                    del self._index[lemma]

    def posting(self, lemma: str) -> IndexPosting:
        postings = self._index.get(lemma, {})
        return IndexPosting(lemma, tuple(sorted(postings.items())))

    # ------------------------------------------------------------------
    # classification

    def classify_article(self, record: ArticleRecord) -> ClassificationResult:
        """Score against every standard node and place the record.

        Pure function of (title lemmas, taxonomy state, tau); the placement
        side effects (bin membership, lazy miscellaneous creation) are
        applied to this store.
        """
        scores: dict[str, int] = {}
        for node in self.taxonomy.nodes.values():
            if node.kind != STANDARD:
                continue
            overlap = len(record.title_lemmas & node.all_lemmas())
            if overlap:
                scores[node.code] = overlap
        best = max(scores.values(), default=0)
        self._remove_placement(record)
        if best >= self.config.tau:
            assigned = frozenset(c for c, s in scores.items() if s == best)
            record.assigned_nodes = assigned
            record.orphan_host = None
            return ClassificationResult(assigned, None, best)
        if best > 0:
            host_std = min(
                (c for c, s in scores.items() if s == best), key=code_key
            )
        else:
            host_std = self.taxonomy.root
        misc = self.taxonomy.ensure_miscellaneous_child(host_std)
        record.assigned_nodes = frozenset()
        record.orphan_host = misc
        self.bins.setdefault(misc, set()).add(record.key)
        return ClassificationResult(frozenset(), misc, best)

    def _remove_placement(self, record: ArticleRecord) -> None:
        if record.orphan_host is not None:
            members = self.bins.get(record.orphan_host)
            if members is not None:
                members.discard(record.key)
                if not members:
                    del self.bins[record.orphan_host]
        record.assigned_nodes = frozenset()
        record.orphan_host = None

    # ------------------------------------------------------------------
    # ingest

    def ingest(self, incoming: Iterable[ArticleRecord]) -> IngestStats:
        """Upsert by key. Unchanged records are left entirely alone."""
        stats = IngestStats()
        for rec in incoming:
            existing = self.records.get(rec.key)
            if existing is not None and existing.same_fields(rec):
                stats.unchanged += 1
                continue
            if existing is not None:
                self._unindex_record(existing)
                self._remove_placement(existing)
                stats.updated += 1
            else:
                stats.inserted += 1
            record = replace(
                rec,
                title_lemmas=self.pipeline.lemma_set(rec.title, "en"),
                assigned_nodes=frozenset(),
                orphan_host=None,
            )
            self.records[record.key] = record
            self._index_record(record)
            self.classify_article(record)
        if stats.inserted or stats.updated:
            self.derive_dual_links()
        return stats

    # ------------------------------------------------------------------
    # orphan promotion

    def promote_orphans(self) -> list[PromotedBranch]:
        """Mine each bin for large groups sharing common title lemmas.

        A qualifying group needs at least promotion_min_members records
        whose titles share at least promotion_min_shared lemmas. The new
        branch hangs off the bin host's parent (the standard node), is
        labeled by the two most frequent shared lemmas (lexicographic
        tie-break) and absorbs the group's members.
        """
        min_members = self.config.promotion_min_members
        min_shared = self.config.promotion_min_shared
        promoted: list[PromotedBranch] = []
        for misc_code in sorted(self.bins, key=code_key):
            std_code = self.taxonomy.get(misc_code).parent
            while True:
                members = sorted(self.bins.get(misc_code, ()))
                if len(members) < min_members:
                    break
                group = self._find_group(members, min_members, min_shared)
                if group is None:
                    break
                group_keys, shared = group
                bin_freq = Counter()
                for key in members:
                    bin_freq.update(self.records[key].title_lemmas & shared)
                label_lemmas = sorted(shared, key=lambda l: (-bin_freq[l], l))[:2]
                label = " ".join(label_lemmas)
                new_code = self.taxonomy.add_branch(std_code, label)
                for lemma in sorted(shared):
                    self.taxonomy.add_keyword(
                        new_code, lemma, source="orphan-promotion"
                    )
                for key in group_keys:
                    record = self.records[key]
                    self._remove_placement(record)
                    record.assigned_nodes = frozenset({new_code})
                promoted.append(PromotedBranch(new_code, label, tuple(group_keys)))
        return promoted

    def _find_group(
        self, members: list[str], min_members: int, min_shared: int
    ) -> tuple[list[str], frozenset[str]] | None:
        pair_members: dict[tuple[str, str], list[str]] = {}
        for key in members:
            lemmas = self.records[key].title_lemmas
            for pair in combinations(sorted(lemmas), 2):
                pair_members.setdefault(pair, []).append(key)
        candidates = [
            (pair, keys)
            for pair, keys in pair_members.items()
            if len(keys) >= min_members
        ]
        if not candidates:
            return None
        candidates.sort(key=lambda item: (-len(item[1]), item[0]))
        _, group_keys = candidates[0]
        shared = frozenset.intersection(
            *(self.records[k].title_lemmas for k in group_keys)
        )
        if len(shared) < min_shared:
            return None
        return sorted(group_keys), shared

    # ------------------------------------------------------------------
    # dual-index links

    def derive_dual_links(self):
        """Recompute dual-indexing links from current assignments.

        Weight counts the records assigned to both nodes of a pair;
        ancestor pairs never link. Recomputation replaces the previous
        dual-indexing set, so repeated passes are stable.
        """
        counts: dict[tuple[str, str], int] = {}
        for record in self.records.values():
            if len(record.assigned_nodes) < 2:
                continue
            for a, b in combinations(sorted(record.assigned_nodes, key=code_key), 2):
                if self.taxonomy.in_ancestry(a, b):
                    continue
                counts[(a, b)] = counts.get((a, b), 0) + 1
        return self.taxonomy.replace_links("dual-indexing", counts)

    # ------------------------------------------------------------------
    # search

    def search(self, text: str) -> list[tuple[ArticleRecord, int]]:
        """Rank by matched distinct query lemmas, then summed tf, then key."""
        query = sorted(self.pipeline.lemma_set(text, "en"))
        if not query:
            raise UnanalyzableQuery(f"query {text!r} has no searchable terms")
        matched: dict[str, int] = {}
        tf_sum: dict[str, int] = {}
        for lemma in query:
            for key, tf in self._index.get(lemma, {}).items():
                matched[key] = matched.get(key, 0) + 1
                tf_sum[key] = tf_sum.get(key, 0) + tf
        ranked = sorted(matched, key=lambda k: (-matched[k], -tf_sum[k], k))
        return [(self.records[k], matched[k]) for k in ranked]

    # ------------------------------------------------------------------
    # exports

    def export_bibtex(self, keys: Iterable[str]) -> str:
        records = []
        for key in keys:
            record = self.records.get(key)
            if record is None:
                raise NotFound(f"unknown article {key!r}")
            records.append(record)
        return render_bibtex(records)

    def keys_for_branch(self, code: str) -> list[str]:
        """Keys assigned anywhere in the subtree rooted at code."""
        wanted = set(self.taxonomy.subtree(code))
        return sorted(
            k
            for k, r in self.records.items()
            if r.assigned_nodes & wanted or r.orphan_host in wanted
        )

    def rdf_snapshot(self) -> str:
        """RDF/XML document with one resource per stored record."""
        ET.register_namespace("rdf", RDF_NS)
        ET.register_namespace("dc", DC_NS)
        ET.register_namespace("nav", NAV_NS)
        rdf = ET.Element(f"{{{RDF_NS}}}RDF")
        for key in sorted(self.records):
            record = self.records[key]
            about = "urn:x-ontonav:article:" + urllib.parse.quote(key, safe="")
            desc = ET.SubElement(
                rdf, f"{{{RDF_NS}}}Description", {f"{{{RDF_NS}}}about": about}
            )
            ET.SubElement(desc, f"{{{DC_NS}}}title").text = record.title
            for author in record.authors:
                ET.SubElement(desc, f"{{{DC_NS}}}creator").text = author
            if record.year is not None:
                ET.SubElement(desc, f"{{{DC_NS}}}date").text = str(record.year)
            if record.venue:
                ET.SubElement(desc, f"{{{NAV_NS}}}venue").text = record.venue
            for code in sorted(record.assigned_nodes, key=code_key):
                ET.SubElement(desc, f"{{{NAV_NS}}}classification").text = code
            if record.orphan_host is not None:
                ET.SubElement(desc, f"{{{NAV_NS}}}classification").text = (
                    record.orphan_host
                )
            if record.uri:
                ET.SubElement(
                    desc, f"{{{NAV_NS}}}resource", {f"{{{RDF_NS}}}resource": record.uri}
                )
        ET.indent(rdf)
        return ET.tostring(rdf, encoding="unicode", xml_declaration=True)

    # ------------------------------------------------------------------
    # state

    def record_rows(self, keys: Iterable[str] | None = None) -> list[dict]:
        chosen = sorted(self.records) if keys is None else sorted(keys)
        rows = []
        for key in chosen:
            r = self.records[key]
            rows.append(
                {
                    "key": r.key,
                    "title": r.title,
                    "authors": list(r.authors),
                    "year": r.year,
                    "venue": r.venue,
                    "uri": r.uri,
                    "assigned": sorted(r.assigned_nodes, key=code_key),
                    "orphan_host": r.orphan_host,
                }
            )
        return rows

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[dict],
        taxonomy: Taxonomy,
        pipeline: Pipeline | None = None,
        config: EngineConfig | None = None,
    ) -> "CorpusStore":
        store = cls(taxonomy, pipeline, config)
        for row in rows:
            record = ArticleRecord(
                key=row["key"],
                title=row["title"],
                authors=tuple(row.get("authors", ())),
                year=row.get("year"),
                venue=row.get("venue", ""),
                uri=row.get("uri"),
                assigned_nodes=frozenset(row.get("assigned", ())),
                orphan_host=row.get("orphan_host"),
            )
            record.title_lemmas = store.pipeline.lemma_set(record.title, "en")
            store.records[record.key] = record
            store._index_record(record)
            if record.orphan_host is not None:
                store.bins.setdefault(record.orphan_host, set()).add(record.key)
        return store
