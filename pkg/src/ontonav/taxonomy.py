"""The classification tree: nodes, keywords and proximity links.

The canonical interchange format is a JSON array of
{"code", "label_en", "label_fr"?, "parent"?} objects with exactly one
parentless root. Children of the root may carry arbitrary fresh codes
(the historical top-level categories are single letters); every deeper
node's code must extend its parent's code by a dot suffix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .errors import NotFound, ParseError, Rejected, ValidationError
from .textproc import Pipeline, default_pipeline

STANDARD = "standard"
MISCELLANEOUS = "miscellaneous"

KEYWORD_ORIGINS = ("native", "added")
KEYWORD_SOURCES = ("label", "orphan-promotion", "dual-index", "proposal")
LINK_PROVENANCES = ("label-cooccurrence", "dual-indexing")


def code_key(code: str):
    """Sort key giving natural order: B.5 before B.5.2, I.9 before I.10."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part) for part in code.split(".")
    )


@dataclass(frozen=True)
class Keyword:
    lemma: str
    origin: str  # native | added
    source: str  # label | orphan-promotion | dual-index | proposal


@dataclass
class ProximityLink:
    node_a: str
    node_b: str
    weight: int
    provenance: str  # label-cooccurrence | dual-indexing


@dataclass
class CcsNode:
    code: str
    label_en: str
    label_fr: str = ""
    kind: str = STANDARD
    parent: str | None = None
    children: list[str] = field(default_factory=list)
    keywords: dict[str, Keyword] = field(default_factory=dict)

    def native_lemmas(self) -> set[str]:
        return {k.lemma for k in self.keywords.values() if k.origin == "native"}

    def all_lemmas(self) -> set[str]:
        """The keyword cluster: native plus added lemmas."""
        return set(self.keywords)


@dataclass
class NeighborView:
    node: CcsNode
    weight: int
    provenance: str


@dataclass
class NodeView:
    node: CcsNode
    parent: CcsNode | None
    children: list[CcsNode]
    neighbors: list[NeighborView]


class Taxonomy:
    def __init__(self, pipeline: Pipeline | None = None):
        self.pipeline = pipeline or default_pipeline()
        self.nodes: dict[str, CcsNode] = {}
        self.root: str = ""
        # Links are stored once per (pair, provenance) with node_a < node_b.
        self.links: dict[tuple[str, str, str], ProximityLink] = {}

    # ------------------------------------------------------------------
    # loading and validation

    @classmethod
    def load(cls, source: str | bytes | IO, pipeline: Pipeline | None = None) -> "Taxonomy":
        """Parse and validate an interchange document.

        Raises ParseError with line/column on malformed JSON and
        ValidationError naming the offending code on structural faults.
        """
        if hasattr(source, "read"):
            source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
        try:
            entries = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"taxonomy document is not valid JSON: {exc.msg} "
                f"(line {exc.lineno}, column {exc.colno})"
            ) from None
        return cls.from_entries(entries, pipeline)

    @classmethod
    def from_entries(
        cls, entries: list[dict], pipeline: Pipeline | None = None
    ) -> "Taxonomy":
        if not isinstance(entries, list):
            raise ValidationError("taxonomy document must be an array of nodes")
        taxonomy = cls(pipeline)
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise ValidationError(f"entry #{i} is not an object")
            code = entry.get("code")
            label_en = entry.get("label_en")
            if not code or not isinstance(code, str):
                raise ValidationError(f"entry #{i} is missing a code")
            if not label_en or not isinstance(label_en, str):
                raise ValidationError(f"node {code!r} is missing label_en")
            if code in taxonomy.nodes:
                raise ValidationError(f"duplicate node code {code!r}")
            kind = entry.get("kind", STANDARD)
            if kind not in (STANDARD, MISCELLANEOUS):
                raise ValidationError(f"node {code!r} has unknown kind {kind!r}")
            taxonomy.nodes[code] = CcsNode(
                code=code,
                label_en=label_en,
                label_fr=entry.get("label_fr", "") or "",
                kind=kind,
                parent=entry.get("parent"),
            )
        taxonomy._wire_and_validate()
        for node in taxonomy.nodes.values():
            taxonomy._regenerate_native_keywords(node)
        return taxonomy

    def _wire_and_validate(self) -> None:
        roots = [n.code for n in self.nodes.values() if n.parent is None]
        if not self.nodes:
            raise ValidationError("taxonomy document is empty (no root)")
        if not roots:
            raise ValidationError("taxonomy has no root node")
        if len(roots) > 1:
            raise ValidationError(f"taxonomy has multiple roots: {sorted(roots)}")
        self.root = roots[0]
        for node in self.nodes.values():
            if node.parent is None:
                continue
            parent = self.nodes.get(node.parent)
            if parent is None:
                raise ValidationError(
                    f"node {node.code!r} names unknown parent {node.parent!r}"
                )
            # Top-level categories hang off the root with fresh codes;
            # everything deeper must extend the parent's code.
            if parent.code != self.root and not node.code.startswith(parent.code + "."):
                raise ValidationError(
                    f"node {node.code!r} does not extend parent code {parent.code!r}"
                )
            parent.children.append(node.code)
        for node in self.nodes.values():
            node.children.sort(key=code_key)
            self._check_acyclic(node.code)
            if node.kind == MISCELLANEOUS:
                if node.children:
                    raise ValidationError(
                        f"miscellaneous node {node.code!r} must be a leaf"
                    )
                parent = self.nodes.get(node.parent or "")
                if parent is None or parent.kind != STANDARD:
                    raise ValidationError(
                        f"miscellaneous node {node.code!r} must hang off a standard node"
                    )

    def _check_acyclic(self, code: str) -> None:
        seen = set()
        current: str | None = code
        while current is not None:
            if current in seen:
                raise ValidationError(f"parent cycle through node {current!r}")
            seen.add(current)
            current = self.nodes[current].parent

    def _regenerate_native_keywords(self, node: CcsNode) -> None:
        natives = self.pipeline.extract_native_keywords(node.label_en)
        kept = {
            lemma: kw for lemma, kw in node.keywords.items() if kw.origin == "added"
        }
        node.keywords = {
            lemma: Keyword(lemma, "native", "label") for lemma in sorted(natives)
        }
        for lemma, kw in kept.items():
            node.keywords.setdefault(lemma, kw)

    # ------------------------------------------------------------------
    # queries

    def get(self, code: str) -> CcsNode:
        node = self.nodes.get(code)
        if node is None:
            raise NotFound(f"unknown node {code!r}")
        return node

    def query_node(self, code: str) -> NodeView:
        node = self.get(code)
        parent = self.nodes[node.parent] if node.parent else None
        children = [self.nodes[c] for c in node.children]
        neighbors = []
        for link in self.links.values():
            other = None
            if link.node_a == code:
                other = link.node_b
            elif link.node_b == code:
                other = link.node_a
            if other is not None:
                neighbors.append(
                    NeighborView(self.nodes[other], link.weight, link.provenance)
                )
        neighbors.sort(key=lambda n: (-n.weight, code_key(n.node.code), n.provenance))
        return NodeView(node, parent, children, neighbors)

    def ancestors(self, code: str) -> Iterator[str]:
        current = self.get(code).parent
        while current is not None:
            yield current
            current = self.nodes[current].parent

    def in_ancestry(self, a: str, b: str) -> bool:
        """True when one node lies on the other's path to the root."""
        return a in self.ancestors(b) or b in self.ancestors(a)

    def subtree(self, code: str) -> Iterator[str]:
        self.get(code)
        stack = [code]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(reversed(self.nodes[current].children))

    # ------------------------------------------------------------------
    # growth

    def next_child_code(self, parent_code: str) -> str:
        """Next free integer-suffix code under parent (parent.1, parent.2...)."""
        parent = self.get(parent_code)
        used = []
        prefix = parent.code + "."
        for child in parent.children:
            suffix = child[len(prefix):] if child.startswith(prefix) else ""
            if suffix.isdigit():
                used.append(int(suffix))
        return f"{parent.code}.{max(used, default=0) + 1}"

    def _add_child(self, parent_code: str, label_en: str, kind: str) -> CcsNode:
        parent = self.get(parent_code)
        code = self.next_child_code(parent_code)
        node = CcsNode(code=code, label_en=label_en, kind=kind, parent=parent.code)
        self._regenerate_native_keywords(node)
        self.nodes[code] = node
        parent.children.append(code)
        parent.children.sort(key=code_key)
        return node

    def add_branch(self, parent_code: str, label_en: str) -> str:
        """Create a standard child with a fresh code; returns the new code."""
        if not self.pipeline.extract_native_keywords(label_en):
            raise Rejected(
                f"label {label_en!r} yields no keywords after stop-filtering"
            )
        return self._add_child(parent_code, label_en, STANDARD).code

    def ensure_miscellaneous_child(self, code: str) -> str:
        """Lazy bin host under a standard node; created once, then reused."""
        node = self.get(code)
        if node.kind != STANDARD:
            raise ValidationError(f"node {code!r} cannot host a miscellaneous child")
        for child in node.children:
            if self.nodes[child].kind == MISCELLANEOUS:
                return child
        return self._add_child(code, "miscellaneous", MISCELLANEOUS).code

    def add_keyword(
        self, code: str, token: str, source: str, language: str = "en"
    ) -> CcsNode:
        """Attach one keyword. Re-adding an existing lemma is a no-op."""
        node = self.get(code)
        if source not in KEYWORD_SOURCES:
            raise ValidationError(f"unknown keyword source {source!r}")
        lemma = self.pipeline.normalize_token(token, language)
        if lemma is None:
            raise Rejected(
                f"{token!r} does not normalize to a single non-stop keyword"
            )
        if lemma not in node.keywords:
            node.keywords[lemma] = Keyword(lemma, "added", source)
        return node

    # ------------------------------------------------------------------
    # proximity links

    def _normalize_pair(self, a: str, b: str) -> tuple[str, str]:
        return (a, b) if code_key(a) <= code_key(b) else (b, a)

    def add_proximity_link(
        self, a: str, b: str, weight: int = 1, provenance: str = "label-cooccurrence"
    ) -> ProximityLink:
        """Accumulate weight on an undirected link; ancestor pairs refused."""
        self.get(a)
        self.get(b)
        if provenance not in LINK_PROVENANCES:
            raise ValidationError(f"unknown link provenance {provenance!r}")
        if a == b:
            raise Rejected("a node cannot link to itself")
        if self.in_ancestry(a, b):
            raise Rejected(f"nodes {a!r} and {b!r} are in ancestor relation")
        if weight < 1:
            raise ValidationError("link weight must be positive")
        a, b = self._normalize_pair(a, b)
        key = (a, b, provenance)
        link = self.links.get(key)
        if link is None:
            link = ProximityLink(a, b, 0, provenance)
            self.links[key] = link
        link.weight += weight
        return link

    def replace_links(
        self, provenance: str, weights: dict[tuple[str, str], int]
    ) -> list[ProximityLink]:
        """Swap out every link of one provenance; used by derivation passes."""
        if provenance not in LINK_PROVENANCES:
            raise ValidationError(f"unknown link provenance {provenance!r}")
        self.links = {
            key: link for key, link in self.links.items() if key[2] != provenance
        }
        fresh = []
        for (a, b), weight in sorted(weights.items()):
            a, b = self._normalize_pair(a, b)
            link = ProximityLink(a, b, weight, provenance)
            self.links[(a, b, provenance)] = link
            fresh.append(link)
        return fresh

    def all_links(self) -> list[ProximityLink]:
        return sorted(
            self.links.values(),
            key=lambda l: (code_key(l.node_a), code_key(l.node_b), l.provenance),
        )

    # ------------------------------------------------------------------
    # interchange and state

    def export(self) -> list[dict]:
        """Interchange document; load(export(t)) reproduces nodes and labels."""
        rows = []
        ordering = sorted(self.nodes, key=code_key)
        ordering.remove(self.root)
        for code in [self.root] + ordering:
            node = self.nodes[code]
            row: dict = {"code": node.code, "label_en": node.label_en}
            if node.label_fr:
                row["label_fr"] = node.label_fr
            if node.parent is not None:
                row["parent"] = node.parent
            if node.kind != STANDARD:
                row["kind"] = node.kind
            rows.append(row)
        return rows

    def to_state(self) -> dict:
        return {
            "root": self.root,
            "nodes": [
                {
                    "code": n.code,
                    "label_en": n.label_en,
                    "label_fr": n.label_fr,
                    "kind": n.kind,
                    "parent": n.parent,
                    "keywords": [
                        {"lemma": k.lemma, "origin": k.origin, "source": k.source}
                        for k in sorted(n.keywords.values(), key=lambda k: k.lemma)
                    ],
                }
                for n in (self.nodes[c] for c in sorted(self.nodes, key=code_key))
            ],
            "links": [
                {
                    "a": l.node_a,
                    "b": l.node_b,
                    "weight": l.weight,
                    "provenance": l.provenance,
                }
                for l in self.all_links()
            ],
        }

    @classmethod
    def from_state(cls, state: dict, pipeline: Pipeline | None = None) -> "Taxonomy":
        taxonomy = cls(pipeline)
        for row in state["nodes"]:
            taxonomy.nodes[row["code"]] = CcsNode(
                code=row["code"],
                label_en=row["label_en"],
                label_fr=row.get("label_fr", ""),
                kind=row.get("kind", STANDARD),
                parent=row.get("parent"),
                keywords={
                    k["lemma"]: Keyword(k["lemma"], k["origin"], k["source"])
                    for k in row.get("keywords", [])
                },
            )
        taxonomy._wire_and_validate()
        for link in state.get("links", []):
            key = (link["a"], link["b"], link["provenance"])
            taxonomy.links[key] = ProximityLink(
                link["a"], link["b"], link["weight"], link["provenance"]
            )
        return taxonomy
