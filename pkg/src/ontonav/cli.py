"""Command line front end.

Exit codes: 0 for success (a query miss is still success), 1 for user
errors (bad arguments, unknown nodes, missing workspace), 2 for internal
faults. Read subcommands take --format json for machine consumption.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import EngineConfig, env_default
from .engine import Engine
from .errors import NavError
from .evaluation import EvalQuery, JudgmentSet, bypass_report, format_table, run_eval
from .lexicon import FixtureTranslator
from .metaquery import node_query_terms, render_all, render_metaquery
from .service import Service, serve


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontonav", description=__doc__)
    parser.add_argument(
        "--data-dir",
        default=env_default("data_dir"),
        help="workspace directory holding taxonomy, lexicon and corpus state",
    )
    parser.add_argument(
        "--providers",
        default=env_default("providers"),
        help="path to a provider template config (defaults to the bundled one)",
    )
    parser.add_argument(
        "--format",
        choices=("table", "json"),
        default=env_default("format", "table"),
        help="output mode for read subcommands",
    )
    parser.add_argument("--tau", type=int, default=env_default("tau"))
    parser.add_argument(
        "--promotion-n", type=int, default=env_default("promotion_n")
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("load", help="load and validate a taxonomy document")
    p.add_argument("path", nargs="?", help="interchange JSON (omit for bundled tree)")

    p = sub.add_parser("ingest", help="parse and classify bibliographic records")
    p.add_argument("path")
    p.add_argument("--input-format", choices=("bibtex", "dblp-xml"), default="bibtex")

    sub.add_parser("link", help="derive co-occurrence and dual-index links")

    p = sub.add_parser("search", help="search the internal corpus")
    p.add_argument("query")

    p = sub.add_parser("resolve", help="resolve query text to tree nodes")
    p.add_argument("query")
    p.add_argument("--lang", choices=("en", "fr"), default=env_default("lang", "en"))

    p = sub.add_parser("metaquery", help="render provider search URLs for a node")
    p.add_argument("code")
    p.add_argument("--provider")

    p = sub.add_parser("propose", help="submit a label proposal")
    p.add_argument("text")
    p.add_argument("--node", required=True)
    p.add_argument("--kind", choices=("correction", "specification"), required=True)
    p.add_argument("--member", required=True)

    p = sub.add_parser("vote", help="vote on a pending proposal")
    p.add_argument("proposal_id")
    p.add_argument("--member", required=True)
    p.add_argument("--verdict", choices=("approve", "reject"), required=True)

    sub.add_parser("feed", help="print the pending-proposal feed (RSS 1.0)")
    sub.add_parser("snapshot", help="print the corpus snapshot (RDF/XML)")

    p = sub.add_parser("export-bibtex", help="export records as BibTeX")
    p.add_argument("keys", nargs="*")
    p.add_argument("--node", help="export every record under this branch")

    p = sub.add_parser("eval", help="score retrieval quality over a query set")
    p.add_argument("--queries", help="JSON list of {id, node, text}")
    p.add_argument("--judgments", help="JSON {k, entries: [{query, article, relevant}]}")
    p.add_argument("--bypass", help="JSON list of pre-scored rows; mean only")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8765")
    p.add_argument("--allow-ingest", action="store_true")
    return parser


def _open_engine(args) -> Engine:
    config = EngineConfig.from_env(tau=args.tau, promotion_min_members=args.promotion_n)
    return Engine.open(args.data_dir, config, args.providers)


def _require_loaded(engine: Engine) -> None:
    if not engine.ready:
        raise NavError("no workspace loaded yet; run: ontonav load")


def _emit(args, payload, table: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=1))
    else:
        print(table)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except NavError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception as exc:  # internal fault
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    command = args.command
    engine = _open_engine(args)

    if command == "load":
        source = Path(args.path).read_text(encoding="utf-8") if args.path else None
        engine.load_taxonomy(source)
        report = engine.bootstrap(FixtureTranslator())
        engine.save()
        print(
            f"loaded {len(engine.taxonomy.nodes)} nodes; "
            f"{report.translated} translated, {len(report.skipped)} skipped"
        )
        for code, reason in report.skipped:
            print(f"  skipped {code}: {reason}", file=sys.stderr)
        return 0

    _require_loaded(engine)

    if command == "ingest":
        data = Path(args.path).read_bytes()
        stats, report = engine.ingest_source(data, args.input_format)
        engine.save()
        print(
            f"inserted {stats.inserted}, updated {stats.updated}, "
            f"unchanged {stats.unchanged}"
        )
        for skip in report.skipped:
            print(
                f"  skipped ({skip.position}): {skip.reason}"
                + (f" [{skip.key}]" if skip.key else ""),
                file=sys.stderr,
            )
        for note in report.notes:
            print(f"  note: {note}", file=sys.stderr)
        return 0

    if command == "link":
        label_count, dual_count = engine.build_links()
        engine.save()
        print(f"label-cooccurrence links: {label_count}, dual-indexing links: {dual_count}")
        return 0

    if command == "search":
        if not args.query.strip():
            raise NavError("empty query")
        results = engine.corpus.search(args.query)
        payload = [
            {"key": r.key, "title": r.title, "year": r.year, "score": score}
            for r, score in results
        ]
        lines = [f"{row['score']:>3}  {row['key']}  {row['title']}" for row in payload]
        _emit(args, payload, "\n".join(lines) if lines else "no results")
        return 0

    if command == "resolve":
        result = engine.lexicon.resolve_query(args.query, args.lang)
        if result.is_miss:
            payload = {"hits": [], "miss": result.miss_message}
            _emit(args, payload, result.miss_message)
            return 0
        payload = {
            "hits": [
                {
                    "code": h.node,
                    "label_en": engine.taxonomy.get(h.node).label_en,
                    "score": round(h.score, 4),
                }
                for h in result.hits
            ],
            "miss": None,
        }
        table = "\n".join(
            f"{h['code']}  {h['label_en']}  ({h['score']})" for h in payload["hits"]
        )
        _emit(args, payload, table)
        return 0

    if command == "metaquery":
        node = engine.taxonomy.get(args.code)
        terms = node_query_terms(node, engine.pipeline, engine.config)
        if args.provider:
            queries = [render_metaquery(engine.providers, args.provider, terms)]
        else:
            queries = render_all(engine.providers, terms)
        payload = [
            {"provider": q.provider, "terms": list(q.terms), "url": q.url}
            for q in queries
        ]
        _emit(args, payload, "\n".join(f"{q.provider}: {q.url}" for q in queries))
        return 0

    if command == "propose":
        proposal = engine.lexicon.submit_proposal(
            node=args.node, text=args.text, kind=args.kind, proposer=args.member
        )
        engine.save()
        print(proposal.id)
        return 0

    if command == "vote":
        proposal = engine.lexicon.vote(args.proposal_id, args.member, args.verdict)
        engine.save()
        print(f"{proposal.id}: {proposal.status}")
        return 0

    if command == "feed":
        document = engine.lexicon.render_feed()
        if args.format == "json":
            print(json.dumps({"document": document}, ensure_ascii=False))
        else:
            print(document)
        return 0

    if command == "snapshot":
        document = engine.corpus.rdf_snapshot()
        if args.format == "json":
            print(json.dumps({"document": document}, ensure_ascii=False))
        else:
            print(document)
        return 0

    if command == "export-bibtex":
        keys = list(args.keys)
        if args.node:
            keys.extend(engine.corpus.keys_for_branch(args.node))
        if not keys:
            raise NavError("nothing to export: give keys or --node")
        seen = set()
        keys = [k for k in keys if not (k in seen or seen.add(k))]
        print(engine.corpus.export_bibtex(keys), end="")
        return 0

    if command == "eval":
        if args.bypass:
            rows = json.loads(Path(args.bypass).read_text(encoding="utf-8"))
            report = bypass_report(rows)
        else:
            if not args.queries or not args.judgments:
                raise NavError("eval needs --queries and --judgments, or --bypass")
            query_rows = json.loads(Path(args.queries).read_text(encoding="utf-8"))
            queries = [
                EvalQuery(row["id"], row.get("node", ""), row["text"])
                for row in query_rows
            ]
            judgments = JudgmentSet.from_dict(
                json.loads(Path(args.judgments).read_text(encoding="utf-8"))
            )
            report = run_eval(engine, queries, judgments)
        payload = {
            "rows": [
                {
                    "node": r.node,
                    "label_en": r.label_en,
                    "query_fr": r.query_fr,
                    "percent": r.percent,
                    "note": r.note,
                }
                for r in report.rows
            ],
            "mean": report.mean,
        }
        _emit(args, payload, format_table(report))
        return 0

    if command == "serve":
        host, _, port = args.listen.partition(":")
        service = Service(engine, allow_ingest=args.allow_ingest)
        server = serve(service, host or "127.0.0.1", int(port or 8765))
        print(f"listening on http://{server.server_address[0]}:{server.server_address[1]}")
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
        return 0

    raise NavError(f"unknown command {command!r}")


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
