"""Request dispatch over the engine, plus a small stdlib HTTP adapter.

The service itself is framework-free: dispatch maps an ApiRequest onto a
handler and returns an ApiResponse whose body is a JSON-compatible
document (the feed and snapshot endpoints return XML text instead). One
lock serializes dispatch so readers always observe settled state; at desk
scale that is the whole concurrency story.
"""

from __future__ import annotations

import json
import re
import threading
import urllib.parse
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Callable

from .engine import Engine
from .errors import (
    Conflict,
    NavError,
    NoQueryableTerms,
    NotFound,
    ValidationError,
)
from .metaquery import node_query_terms, render_all, scholar_fallback
from .records import parse_records
from .taxonomy import CcsNode, code_key

JSON = "application/json"
XML = "application/xml"


@dataclass
class ApiRequest:
    method: str
    path: str
    query: dict[str, str] = field(default_factory=dict)
    body: Any = None


@dataclass
class ApiResponse:
    status: int
    body: Any
    content_type: str = JSON


def _status_for(error: NavError) -> int:
    if isinstance(error, NotFound):
        return 404
    if isinstance(error, Conflict):
        return 409
    return 400


def _lang(request: ApiRequest) -> str:
    lang = request.query.get("lang", "en")
    if lang not in ("en", "fr"):
        raise ValidationError(f"unsupported language {lang!r}")
    return lang


class Service:
    def __init__(self, engine: Engine, allow_ingest: bool = False, base_url: str = ""):
        self.engine = engine
        self.allow_ingest = allow_ingest
        self.base_url = base_url or "https://ontonav.local"
        self._lock = threading.RLock()
        self._routes: list[tuple[str, re.Pattern, Callable]] = [
            ("GET", re.compile(r"^/tree$"), self._get_tree),
            ("GET", re.compile(r"^/node/(?P<code>[^/]+)$"), self._get_node),
            (
                "GET",
                re.compile(r"^/node/(?P<code>[^/]+)/metaqueries$"),
                self._get_metaqueries,
            ),
            ("GET", re.compile(r"^/search$"), self._get_search),
            ("GET", re.compile(r"^/articles/(?P<key>.+)$"), self._get_article),
            ("POST", re.compile(r"^/proposals$"), self._post_proposal),
            (
                "POST",
                re.compile(r"^/proposals/(?P<pid>[^/]+)/votes$"),
                self._post_vote,
            ),
            ("GET", re.compile(r"^/feeds/proposals$"), self._get_feed),
            ("GET", re.compile(r"^/snapshot$"), self._get_snapshot),
            ("POST", re.compile(r"^/ingest$"), self._post_ingest),
        ]

    def dispatch(self, request: ApiRequest) -> ApiResponse:
        with self._lock:
            try:
                self.engine.require_ready()
                for method, pattern, handler in self._routes:
                    match = pattern.match(request.path)
                    if match and method == request.method:
                        params = {
                            k: urllib.parse.unquote(v)
                            for k, v in match.groupdict().items()
                        }
                        return handler(request, **params)
                return self._error(404, "not-found", f"no route for {request.path}")
            except NavError as exc:
                return self._error(_status_for(exc), exc.code, str(exc))
            except Exception as exc:  # pragma: no cover - defensive
                return self._error(500, "internal", f"{type(exc).__name__}: {exc}")

    @staticmethod
    def _error(status: int, code: str, message: str) -> ApiResponse:
        return ApiResponse(status, {"error": {"code": code, "message": message}})

    # ------------------------------------------------------------------
    # payload builders

    def _node_summary(self, node: CcsNode) -> dict:
        return {
            "code": node.code,
            "label_en": node.label_en,
            "label_fr": node.label_fr,
            "kind": node.kind,
        }

    def _metaqueries_payload(self, code: str) -> list[dict]:
        node = self.engine.taxonomy.get(code)
        terms = node_query_terms(node, self.engine.pipeline, self.engine.config)
        return [
            {"provider": mq.provider, "terms": list(mq.terms), "url": mq.url}
            for mq in render_all(self.engine.providers, terms)
        ]

    # ------------------------------------------------------------------
    # handlers

    def _get_tree(self, request: ApiRequest) -> ApiResponse:
        taxonomy = self.engine.taxonomy
        nodes = []
        for code in sorted(taxonomy.nodes, key=code_key):
            node = taxonomy.nodes[code]
            row = self._node_summary(node)
            row["parent"] = node.parent
            row["children"] = list(node.children)
            nodes.append(row)
        return ApiResponse(200, {"root": taxonomy.root, "nodes": nodes})

    def _get_node(self, request: ApiRequest, code: str) -> ApiResponse:
        view = self.engine.taxonomy.query_node(code)
        try:
            metaqueries = self._metaqueries_payload(code)
        except NoQueryableTerms:
            metaqueries = []
        body = self._node_summary(view.node)
        body.update(
            {
                "keywords": [
                    {"lemma": k.lemma, "origin": k.origin, "source": k.source}
                    for k in sorted(
                        view.node.keywords.values(), key=lambda k: k.lemma
                    )
                ],
                "parent": self._node_summary(view.parent) if view.parent else None,
                "children": [self._node_summary(c) for c in view.children],
                "neighbors": [
                    {
                        "code": n.node.code,
                        "label_en": n.node.label_en,
                        "weight": n.weight,
                        "provenance": n.provenance,
                    }
                    for n in view.neighbors
                ],
                "metaqueries": metaqueries,
            }
        )
        return ApiResponse(200, body)

    def _get_metaqueries(self, request: ApiRequest, code: str) -> ApiResponse:
        self.engine.taxonomy.get(code)
        return ApiResponse(
            200, {"node": code, "metaqueries": self._metaqueries_payload(code)}
        )

    def _get_search(self, request: ApiRequest) -> ApiResponse:
        lang = _lang(request)
        text = request.query.get("q", "")
        result = self.engine.lexicon.resolve_query(text, lang)
        nodes = []
        for hit in result.hits:
            node = self.engine.taxonomy.get(hit.node)
            row = self._node_summary(node)
            row["score"] = round(hit.score, 4)
            nodes.append(row)
        # Corpus hits: English text searches directly; French queries reach
        # the corpus through the top node's English terms (the bridge).
        articles: list[tuple] = []
        if lang == "en":
            articles = self.engine.corpus.search(text)
        elif result.hits:
            node = self.engine.taxonomy.get(result.hits[0].node)
            try:
                terms = node_query_terms(
                    node, self.engine.pipeline, self.engine.config
                )
                articles = self.engine.corpus.search(" ".join(terms))
            except NoQueryableTerms:
                articles = []
        body = {
            "query": text,
            "lang": lang,
            "nodes": nodes,
            "articles": [
                {
                    "key": record.key,
                    "title": record.title,
                    "year": record.year,
                    "venue": record.venue,
                    "score": score,
                }
                for record, score in articles
            ],
            "miss": None
            if result.hits
            else {"query": text, "lang": lang, "message": result.miss_message},
        }
        return ApiResponse(200, body)

    def _get_article(self, request: ApiRequest, key: str) -> ApiResponse:
        record = self.engine.corpus.records.get(key)
        if record is None:
            raise NotFound(f"unknown article {key!r}")
        body = {
            "key": record.key,
            "title": record.title,
            "authors": list(record.authors),
            "year": record.year,
            "venue": record.venue,
            "uri": record.uri,
            "assigned": sorted(record.assigned_nodes, key=code_key),
            "orphan_host": record.orphan_host,
            "scholar_url": None,
        }
        if not record.uri:
            fallback = scholar_fallback(
                record, self.engine.providers, self.engine.pipeline
            )
            body["scholar_url"] = fallback.url
        return ApiResponse(200, body)

    def _post_proposal(self, request: ApiRequest) -> ApiResponse:
        body = request.body or {}
        if not isinstance(body, dict):
            raise ValidationError("proposal body must be an object")
        proposal = self.engine.lexicon.submit_proposal(
            node=body.get("node", ""),
            text=body.get("text", ""),
            kind=body.get("kind", ""),
            proposer=body.get("member", ""),
        )
        return ApiResponse(201, self._proposal_payload(proposal))

    def _post_vote(self, request: ApiRequest, pid: str) -> ApiResponse:
        body = request.body or {}
        if not isinstance(body, dict):
            raise ValidationError("vote body must be an object")
        proposal = self.engine.lexicon.vote(
            pid, member=body.get("member", ""), verdict=body.get("verdict", "")
        )
        return ApiResponse(200, self._proposal_payload(proposal))

    @staticmethod
    def _proposal_payload(proposal) -> dict:
        return {
            "id": proposal.id,
            "node": proposal.node,
            "text": proposal.proposed_text,
            "kind": proposal.kind,
            "proposer": proposal.proposer,
            "status": proposal.status,
            "submitted_at": proposal.submitted_at,
            "votes": [
                {"member": v.member, "verdict": v.verdict, "at": v.at}
                for v in proposal.votes
            ],
        }

    def _get_feed(self, request: ApiRequest) -> ApiResponse:
        return ApiResponse(
            200, self.engine.lexicon.render_feed(self.base_url), content_type=XML
        )

    def _get_snapshot(self, request: ApiRequest) -> ApiResponse:
        return ApiResponse(200, self.engine.corpus.rdf_snapshot(), content_type=XML)

    def _post_ingest(self, request: ApiRequest) -> ApiResponse:
        if not self.allow_ingest:
            return self._error(403, "forbidden", "ingest is disabled on this service")
        body = request.body or {}
        if not isinstance(body, dict) or "content" not in body:
            raise ValidationError("ingest body needs format and content")
        records, report = parse_records(
            body["content"], body.get("format", "bibtex")
        )
        stats = self.engine.ingest(records)
        self.engine.save()
        return ApiResponse(
            200,
            {
                "inserted": stats.inserted,
                "updated": stats.updated,
                "unchanged": stats.unchanged,
                "skipped": [
                    {"position": s.position, "key": s.key, "reason": s.reason}
                    for s in report.skipped
                ],
            },
        )


# ----------------------------------------------------------------------
# HTTP adapter


def _extract_multipart(body: bytes, content_type: str) -> str:
    """First file part of a multipart/form-data payload, decoded as text."""
    match = re.search(r"boundary=([^;]+)", content_type)
    if not match:
        raise ValidationError("multipart body without boundary")
    boundary = match.group(1).strip('"').encode()
    for part in body.split(b"--" + boundary):
        if b"\r\n\r\n" not in part:
            continue
        headers, _, payload = part.partition(b"\r\n\r\n")
        if b"content-disposition" not in headers.lower():
            continue
        payload = payload.rstrip(b"\r\n-")
        try:
            return payload.decode("utf-8")
        except UnicodeDecodeError:
            return payload.decode("latin-1")
    raise ValidationError("multipart body without a file part")


def make_http_handler(service: Service):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _respond(self, response: ApiResponse) -> None:
            if response.content_type == JSON:
                payload = json.dumps(response.body, ensure_ascii=False).encode("utf-8")
            else:
                payload = str(response.body).encode("utf-8")
            self.send_response(response.status)
            self.send_header("Content-Type", f"{response.content_type}; charset=utf-8")
            self.send_header("Content-Length", str(len(payload)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(payload)

        def _request(self, method: str) -> ApiRequest:
            parts = urllib.parse.urlsplit(self.path)
            query = {
                k: v[0] for k, v in urllib.parse.parse_qs(parts.query).items()
            }
            body = None
            length = int(self.headers.get("Content-Length") or 0)
            if length:
                raw = self.rfile.read(length)
                ctype = self.headers.get("Content-Type", "")
                if ctype.startswith("multipart/form-data"):
                    body = {
                        "format": query.get("format", "bibtex"),
                        "content": _extract_multipart(raw, ctype),
                    }
                elif ctype.startswith(JSON):
                    body = json.loads(raw.decode("utf-8"))
                else:
                    body = {
                        "format": query.get("format", "bibtex"),
                        "content": raw.decode("utf-8"),
                    }
            return ApiRequest(
                method=method, path=parts.path, query=query, body=body
            )

        def do_GET(self):
            self._respond(service.dispatch(self._request("GET")))

        def do_POST(self):
            try:
                request = self._request("POST")
            except (ValidationError, json.JSONDecodeError) as exc:
                self._respond(
                    ApiResponse(
                        400, {"error": {"code": "validation-error", "message": str(exc)}}
                    )
                )
                return
            self._respond(service.dispatch(request))

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()

    return Handler


def serve(service: Service, host: str = "127.0.0.1", port: int = 8765) -> ThreadingHTTPServer:
    """Bind and return the server; the caller decides when to serve_forever."""
    return ThreadingHTTPServer((host, port), make_http_handler(service))
