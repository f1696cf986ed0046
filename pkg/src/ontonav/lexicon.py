"""Bilingual lexicon over the taxonomy, with committee-moderated growth.

Every node carries one canonical entry per language plus any number of
aliases. French coverage is bootstrapped through a translation adapter;
afterwards the vocabulary only grows through proposals that two distinct
committee members (other than the proposer) must approve. Pending
proposals are published as an RSS 1.0 feed so reviewers can subscribe.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from typing import Callable

from .errors import Conflict, NotFound, Rejected, UnanalyzableQuery, ValidationError
from .taxonomy import Taxonomy, code_key
from .textproc import Pipeline

CANONICAL = "canonical"
ALIAS = "alias"
PROPOSAL_KINDS = ("correction", "specification")
VERDICTS = ("approve", "reject")
APPROVALS_REQUIRED = 2
REJECTIONS_REQUIRED = 2

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RSS_NS = "http://purl.org/rss/1.0/"
DC_NS = "http://purl.org/dc/elements/1.1/"


@dataclass
class LexiconEntry:
    node: str
    language: str
    text: str
    kind: str  # canonical | alias
    lemma_key: frozenset[str]


@dataclass
class Vote:
    member: str
    verdict: str
    at: str


@dataclass
class TranslationProposal:
    id: str
    node: str
    proposed_text: str
    kind: str  # correction | specification
    proposer: str
    status: str = "pending"  # pending | accepted | rejected
    language: str = "fr"
    submitted_at: str = ""
    votes: list[Vote] = field(default_factory=list)

    def voters(self) -> set[str]:
        return {v.member for v in self.votes}

    def count(self, verdict: str) -> int:
        return len({v.member for v in self.votes if v.verdict == verdict})


@dataclass
class ResolveHit:
    node: str
    score: float
    exact: bool


@dataclass
class ResolveResult:
    query: str
    language: str
    hits: list[ResolveHit]

    @property
    def is_miss(self) -> bool:
        return not self.hits

    @property
    def miss_message(self) -> str | None:
        if self.hits:
            return None
        return f"no match for {self.query!r} in language {self.language!r}"


@dataclass
class BootstrapReport:
    translated: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)


class FixtureTranslator:
    """Offline adapter backed by a fixed table; unknown labels pass through."""

    def __init__(self, table: dict[str, str] | None = None):
        if table is None:
            raw = resources.files("ontonav").joinpath("data/translations_fr.json")
            table = json.loads(raw.read_text(encoding="utf-8"))
        self.table = dict(table)

    def __call__(self, label_en: str) -> str:
        return self.table.get(label_en, label_en)


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class Lexicon:
    def __init__(
        self,
        taxonomy: Taxonomy,
        pipeline: Pipeline | None = None,
        resolve_threshold: float = 0.5,
        clock: Callable[[], str] = _now_iso,
    ):
        self.taxonomy = taxonomy
        self.pipeline = pipeline or taxonomy.pipeline
        self.resolve_threshold = resolve_threshold
        self.clock = clock
        self.canonical: dict[tuple[str, str], LexiconEntry] = {}
        self.aliases: list[LexiconEntry] = []
        self.proposals: dict[str, TranslationProposal] = {}
        self._next_id = 1
        # Audit trail of applied proposal side effects, one tuple per event.
        self.mutation_log: list[tuple[str, str]] = []

    # ------------------------------------------------------------------
    # canonical entries and bootstrap

    def _set_canonical(self, node: str, language: str, text: str) -> None:
        key = self.pipeline.lemma_set(text, language)
        if not key:
            raise Rejected(f"text {text!r} yields no lemmas in {language!r}")
        self.canonical[(node, language)] = LexiconEntry(
            node=node, language=language, text=text, kind=CANONICAL, lemma_key=key
        )

    def sync_canonical_en(self) -> None:
        """Mirror every node's English label into the lexicon."""
        for node in self.taxonomy.nodes.values():
            if self.pipeline.lemma_set(node.label_en, "en"):
                self._set_canonical(node.code, "en", node.label_en)

    def bootstrap_translations(self, translator: Callable[[str], str]) -> BootstrapReport:
        """Fill French labels for untranslated nodes; never aborts midway."""
        report = BootstrapReport()
        for code in sorted(self.taxonomy.nodes, key=code_key):
            node = self.taxonomy.nodes[code]
            if node.label_fr:
                continue
            try:
                text = translator(node.label_en)
            except Exception as exc:
                report.skipped.append((code, f"adapter failure: {exc}"))
                continue
            if not text or not text.strip():
                report.skipped.append((code, "adapter returned no translation"))
                continue
            if not self.pipeline.lemma_set(text, "fr"):
                report.skipped.append((code, "translation yields no lemmas"))
                continue
            node.label_fr = text
            self._set_canonical(code, "fr", text)
            report.translated += 1
        return report

    def entries_for(self, language: str) -> list[LexiconEntry]:
        out = [e for e in self.canonical.values() if e.language == language]
        out.extend(e for e in self.aliases if e.language == language)
        return out

    def aliases_for(self, node: str, language: str) -> list[LexiconEntry]:
        return [e for e in self.aliases if e.node == node and e.language == language]

    # ------------------------------------------------------------------
    # resolution

    def resolve_query(self, text: str, language: str) -> ResolveResult:
        """Rank nodes by lemma-set similarity against entries of one language.

        Exact lemma-set matches come first; candidates below the threshold
        are dropped. An empty analysis is an error, not a miss.
        """
        key = self.pipeline.lemma_set(text, language)
        if not key:
            raise UnanalyzableQuery(
                f"query {text!r} has no searchable terms in {language!r}"
            )
        best: dict[str, ResolveHit] = {}
        for entry in self.entries_for(language):
            union = key | entry.lemma_key
            score = len(key & entry.lemma_key) / len(union)
            if score < self.resolve_threshold:
                continue
            exact = entry.lemma_key == key
            hit = best.get(entry.node)
            if hit is None or (exact, score) > (hit.exact, hit.score):
                best[entry.node] = ResolveHit(entry.node, score, exact)
        hits = sorted(
            best.values(), key=lambda h: (not h.exact, -h.score, code_key(h.node))
        )
        return ResolveResult(query=text, language=language, hits=hits)

    # ------------------------------------------------------------------
    # proposals

    def submit_proposal(
        self, node: str, text: str, kind: str, proposer: str
    ) -> TranslationProposal:
        self.taxonomy.get(node)
        if kind not in PROPOSAL_KINDS:
            raise ValidationError(f"unknown proposal kind {kind!r}")
        if not proposer or not proposer.strip():
            raise ValidationError("proposals need a named proposer")
        if not self.pipeline.lemma_set(text, "fr"):
            raise Rejected(f"proposed text {text!r} yields no lemmas")
        proposal = TranslationProposal(
            id=f"p{self._next_id}",
            node=node,
            proposed_text=text,
            kind=kind,
            proposer=proposer,
            submitted_at=self.clock(),
        )
        self._next_id += 1
        self.proposals[proposal.id] = proposal
        return proposal

    def get_proposal(self, proposal_id: str) -> TranslationProposal:
        proposal = self.proposals.get(proposal_id)
        if proposal is None:
            raise NotFound(f"unknown proposal {proposal_id!r}")
        return proposal

    def pending_proposals(self) -> list[TranslationProposal]:
        return sorted(
            (p for p in self.proposals.values() if p.status == "pending"),
            key=lambda p: int(p.id[1:]),
        )

    def vote(self, proposal_id: str, member: str, verdict: str) -> TranslationProposal:
        """Record one vote; acceptance and rejection both need two members.

        Proposers may not approve their own proposal. Each member votes at
        most once; a second vote, or any vote on a settled proposal, is a
        conflict.
        """
        proposal = self.get_proposal(proposal_id)
        if verdict not in VERDICTS:
            raise ValidationError(f"unknown verdict {verdict!r}")
        if not member or not member.strip():
            raise ValidationError("votes need a named member")
        if proposal.status != "pending":
            raise Conflict(
                f"proposal {proposal_id} is already {proposal.status}"
            )
        if member in proposal.voters():
            raise Conflict(f"member {member!r} already voted on {proposal_id}")
        if verdict == "approve" and member == proposal.proposer:
            raise Rejected("proposers cannot approve their own proposal")
        proposal.votes.append(Vote(member=member, verdict=verdict, at=self.clock()))
        if proposal.count("approve") >= APPROVALS_REQUIRED:
            proposal.status = "accepted"
            self._apply_acceptance(proposal)
        elif proposal.count("reject") >= REJECTIONS_REQUIRED:
            proposal.status = "rejected"
        return proposal

    def _apply_acceptance(self, proposal: TranslationProposal) -> None:
        node = self.taxonomy.get(proposal.node)
        key = self.pipeline.lemma_set(proposal.proposed_text, "fr")
        if proposal.kind == "correction":
            old = self.canonical.get((proposal.node, "fr"))
            if old is not None:
                # The displaced label stays findable as an alias.
                self.aliases.append(
                    LexiconEntry(
                        node=proposal.node,
                        language="fr",
                        text=old.text,
                        kind=ALIAS,
                        lemma_key=old.lemma_key,
                    )
                )
            self._set_canonical(proposal.node, "fr", proposal.proposed_text)
            node.label_fr = proposal.proposed_text
            self.mutation_log.append((proposal.id, "canonical-replaced"))
        else:
            self.aliases.append(
                LexiconEntry(
                    node=proposal.node,
                    language="fr",
                    text=proposal.proposed_text,
                    kind=ALIAS,
                    lemma_key=key,
                )
            )
            for lemma in sorted(key):
                self.taxonomy.add_keyword(
                    proposal.node, lemma, source="proposal", language="fr"
                )
            self.mutation_log.append((proposal.id, "alias-added"))

    # ------------------------------------------------------------------
    # feed

    def render_feed(self, base_url: str = "https://ontonav.local") -> str:
        """RSS 1.0 document listing exactly the pending proposals."""
        ET.register_namespace("rdf", RDF_NS)
        ET.register_namespace("", RSS_NS)
        ET.register_namespace("dc", DC_NS)
        rdf = ET.Element(f"{{{RDF_NS}}}RDF")
        feed_url = f"{base_url}/feeds/proposals"
        channel = ET.SubElement(rdf, f"{{{RSS_NS}}}channel", {f"{{{RDF_NS}}}about": feed_url})
        ET.SubElement(channel, f"{{{RSS_NS}}}title").text = "Pending label proposals"
        ET.SubElement(channel, f"{{{RSS_NS}}}link").text = feed_url
        ET.SubElement(channel, f"{{{RSS_NS}}}description").text = (
            "Label proposals awaiting committee review"
        )
        items = ET.SubElement(channel, f"{{{RSS_NS}}}items")
        seq = ET.SubElement(items, f"{{{RDF_NS}}}Seq")
        pending = self.pending_proposals()
        for proposal in pending:
            ET.SubElement(
                seq,
                f"{{{RDF_NS}}}li",
                {f"{{{RDF_NS}}}resource": f"{base_url}/proposals/{proposal.id}"},
            )
        for proposal in pending:
            about = f"{base_url}/proposals/{proposal.id}"
            item = ET.SubElement(rdf, f"{{{RSS_NS}}}item", {f"{{{RDF_NS}}}about": about})
            ET.SubElement(item, f"{{{RSS_NS}}}title").text = (
                f"[{proposal.kind}] {proposal.node}: {proposal.proposed_text}"
            )
            ET.SubElement(item, f"{{{RSS_NS}}}link").text = about
            current = self.taxonomy.get(proposal.node).label_fr or "(untranslated)"
            ET.SubElement(item, f"{{{RSS_NS}}}description").text = (
                f"node {proposal.node}; current fr label: {current}; "
                f"proposed: {proposal.proposed_text} ({proposal.kind})"
            )
            ET.SubElement(item, f"{{{DC_NS}}}date").text = proposal.submitted_at
        ET.indent(rdf)
        return ET.tostring(rdf, encoding="unicode", xml_declaration=True)

    # ------------------------------------------------------------------
    # state

    def to_state(self) -> dict:
        def entry_row(e: LexiconEntry) -> dict:
            return {
                "node": e.node,
                "language": e.language,
                "text": e.text,
                "kind": e.kind,
                "lemma_key": sorted(e.lemma_key),
            }

        return {
            "canonical": [
                entry_row(self.canonical[k]) for k in sorted(self.canonical)
            ],
            "aliases": [entry_row(e) for e in self.aliases],
            "proposals": [
                {
                    "id": p.id,
                    "node": p.node,
                    "proposed_text": p.proposed_text,
                    "kind": p.kind,
                    "proposer": p.proposer,
                    "status": p.status,
                    "language": p.language,
                    "submitted_at": p.submitted_at,
                    "votes": [
                        {"member": v.member, "verdict": v.verdict, "at": v.at}
                        for v in p.votes
                    ],
                }
                for p in sorted(self.proposals.values(), key=lambda p: int(p.id[1:]))
            ],
            "next_id": self._next_id,
            "mutation_log": [list(event) for event in self.mutation_log],
        }

    @classmethod
    def from_state(
        cls,
        state: dict,
        taxonomy: Taxonomy,
        pipeline: Pipeline | None = None,
        resolve_threshold: float = 0.5,
    ) -> "Lexicon":
        lexicon = cls(taxonomy, pipeline, resolve_threshold)
        for row in state.get("canonical", []):
            entry = LexiconEntry(
                node=row["node"],
                language=row["language"],
                text=row["text"],
                kind=CANONICAL,
                lemma_key=frozenset(row["lemma_key"]),
            )
            lexicon.canonical[(entry.node, entry.language)] = entry
        for row in state.get("aliases", []):
            lexicon.aliases.append(
                LexiconEntry(
                    node=row["node"],
                    language=row["language"],
                    text=row["text"],
                    kind=ALIAS,
                    lemma_key=frozenset(row["lemma_key"]),
                )
            )
        for row in state.get("proposals", []):
            proposal = TranslationProposal(
                id=row["id"],
                node=row["node"],
                proposed_text=row["proposed_text"],
                kind=row["kind"],
                proposer=row["proposer"],
                status=row["status"],
                language=row.get("language", "fr"),
                submitted_at=row.get("submitted_at", ""),
                votes=[
                    Vote(v["member"], v["verdict"], v.get("at", ""))
                    for v in row.get("votes", [])
                ],
            )
            lexicon.proposals[proposal.id] = proposal
        lexicon._next_id = state.get("next_id", len(lexicon.proposals) + 1)
        lexicon.mutation_log = [tuple(e) for e in state.get("mutation_log", [])]
        return lexicon
