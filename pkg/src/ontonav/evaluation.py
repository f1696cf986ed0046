"""Retrieval quality harness over judged query sets.

Each evaluation row resolves a French query to a node, searches the
internal corpus with the node's English terms and scores the top k
results against a judgment set. Row relevance is the percentage of
judged-relevant hits among min(k, results returned); the report mean is
rounded half away from zero. A bypass mode recomputes the mean over
pre-scored rows without touching the corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .engine import Engine


@dataclass(frozen=True)
class EvalQuery:
    id: str
    node: str
    text: str


@dataclass
class JudgmentSet:
    entries: dict[tuple[str, str], bool] = field(default_factory=dict)
    k: int = 10

    def relevant(self, query_id: str, article_key: str) -> bool:
        # Unjudged pairs default to not-relevant.
        return self.entries.get((query_id, article_key), False)

    @classmethod
    def from_dict(cls, data: dict) -> "JudgmentSet":
        entries = {
            (row["query"], row["article"]): bool(row["relevant"])
            for row in data.get("entries", [])
        }
        return cls(entries=entries, k=int(data.get("k", 10)))


@dataclass
class EvalRow:
    node: str
    label_en: str
    query_fr: str
    percent: int
    note: str = ""


@dataclass
class EvalReport:
    rows: list[EvalRow]
    mean: int


def round_half_away(value: float) -> int:
    if value >= 0:
        return math.floor(value + 0.5)
    return math.ceil(value - 0.5)


def _mean(percents: list[int]) -> int:
    if not percents:
        return 0
    return round_half_away(sum(percents) / len(percents))


def run_eval(engine: "Engine", queries: list[EvalQuery], judgments: JudgmentSet) -> EvalReport:
    from .metaquery import node_query_terms

    rows: list[EvalRow] = []
    for query in queries:
        resolved = None
        try:
            result = engine.lexicon.resolve_query(query.text, "fr")
            if not result.is_miss:
                resolved = result.hits[0].node
        except Exception:
            resolved = None
        if resolved is None:
            rows.append(
                EvalRow(
                    node=query.node,
                    label_en="",
                    query_fr=query.text,
                    percent=0,
                    note="no node",
                )
            )
            continue
        node = engine.taxonomy.get(resolved)
        terms = node_query_terms(node, engine.pipeline, engine.config)
        results = engine.corpus.search(" ".join(terms))
        top = results[: judgments.k]
        if not top:
            rows.append(
                EvalRow(resolved, node.label_en, query.text, 0, note="no results")
            )
            continue
        hits = sum(
            1 for record, _ in top if judgments.relevant(query.id, record.key)
        )
        percent = round_half_away(100 * hits / min(judgments.k, len(results)))
        rows.append(EvalRow(resolved, node.label_en, query.text, percent))
    return EvalReport(rows=rows, mean=_mean([r.percent for r in rows]))


def bypass_report(rows: list[dict]) -> EvalReport:
    """Recompute the mean over externally scored rows."""
    parsed = [
        EvalRow(
            node=row.get("node", ""),
            label_en=row.get("label_en", ""),
            query_fr=row.get("query_fr", ""),
            percent=int(row["percent"]),
            note=row.get("note", ""),
        )
        for row in rows
    ]
    return EvalReport(rows=parsed, mean=_mean([r.percent for r in parsed]))


def format_table(report: EvalReport) -> str:
    headers = ("node", "label", "query", "percent", "note")
    table = [headers]
    for row in report.rows:
        table.append(
            (row.node, row.label_en, row.query_fr, str(row.percent), row.note)
        )
    widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in table
    ]
    lines.append(f"mean relevance: {report.mean}")
    return "\n".join(lines)
