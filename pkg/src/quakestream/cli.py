"""Command-line entry points: validate, query, export, serve.

Machine-readable output goes to stdout, diagnostics to stderr. Exit codes:
0 success, 1 usage or parameter error, 2 data error (unreadable corpus,
fatal taxonomy problem, unwritable output, busy port). ``query`` writes
exactly the HTTP response body bytes for the same parameters, with no
trailing newline.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from collections import Counter
from typing import Optional, Sequence

from .corpus import CorpusError, load_corpus_path
from .service import (
    ENDPOINTS,
    Engine,
    QueryError,
    compute_wordstream,
    evaluate_query,
    load_engine,
)
from .svg import layout_to_svg
from .taxonomy import TaxonomyError, classify_message, default_taxonomy, load_taxonomy_path

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for data errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail_data(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_DATA


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, help="path to the message CSV")
    parser.add_argument(
        "--taxonomy", help="path to a taxonomy config JSON (default: built-in)"
    )


def _add_query_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--from", dest="from_", metavar="INSTANT", help="window start, ISO-8601 UTC")
    parser.add_argument("--to", metavar="INSTANT", help="window end, ISO-8601 UTC")
    parser.add_argument("--labels", help="comma-separated subcategory names")
    parser.add_argument("--bin", help="bin width in seconds (summary)")
    parser.add_argument("--boxes", help="number of boxes (wordstream)")
    parser.add_argument("--top-k", dest="top_k", help="terms per box (wordstream)")
    parser.add_argument("--limit", help="ranking length")
    parser.add_argument("--term", help="messages filter: token")
    parser.add_argument("--location", help="messages filter: exact neighborhood")
    parser.add_argument("--account", help="messages filter: exact author")
    parser.add_argument("--page", help="messages page number")
    parser.add_argument("--page-size", dest="page_size", help="messages page size")


def _collect_params(args: argparse.Namespace) -> dict[str, str]:
    mapping = {
        "from": args.from_,
        "to": args.to,
        "labels": args.labels,
        "bin": args.bin,
        "boxes": args.boxes,
        "top_k": args.top_k,
        "limit": args.limit,
        "term": args.term,
        "location": args.location,
        "account": args.account,
        "page": args.page,
        "page_size": args.page_size,
    }
    return {key: value for key, value in mapping.items() if value is not None}


def _load_engine_or_fail(args: argparse.Namespace) -> Engine:
    return load_engine(args.corpus, args.taxonomy, getattr(args, "neighborhoods", None))


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        corpus, skipped = load_corpus_path(args.corpus)
    except OSError as exc:
        return _fail_data(f"cannot read corpus {args.corpus}: {exc}")
    except CorpusError as exc:
        return _fail_data(f"corpus {args.corpus}: {exc}")
    try:
        taxonomy = load_taxonomy_path(args.taxonomy) if args.taxonomy else default_taxonomy()
    except OSError as exc:
        return _fail_data(f"cannot read taxonomy {args.taxonomy}: {exc}")
    except TaxonomyError as exc:
        return _fail_data(f"taxonomy {args.taxonomy or '(built-in)'}: {exc}")

    coverage = Counter()
    unclassified = 0
    for message in corpus.messages:
        labels = classify_message(message, taxonomy)
        if not labels:
            unclassified += 1
        for label in labels:
            coverage[label[1]] += 1

    report = {
        "messages": len(corpus),
        "skipped_rows": skipped,
        "time_extent": {
            "min": corpus.time_extent[0].strftime("%Y-%m-%dT%H:%M:%SZ"),
            "max": corpus.time_extent[1].strftime("%Y-%m-%dT%H:%M:%SZ"),
        },
        "label_coverage": {
            sub: coverage.get(sub, 0)
            for _, sub in taxonomy.labels()
        },
        "unclassified": unclassified,
        "distinct_accounts": len({m.account for m in corpus.messages}),
        "distinct_locations": len({m.location for m in corpus.messages if m.location}),
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    try:
        engine = _load_engine_or_fail(args)
    except (OSError, CorpusError, TaxonomyError) as exc:
        return _fail_data(str(exc))
    try:
        body = evaluate_query(engine, args.endpoint, _collect_params(args))
    except QueryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(body)
    sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    try:
        engine = _load_engine_or_fail(args)
    except (OSError, CorpusError, TaxonomyError) as exc:
        return _fail_data(str(exc))
    try:
        layout, _ = compute_wordstream(engine, _collect_params(args))
    except QueryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    document = layout_to_svg(layout)
    try:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(document)
    except OSError as exc:
        return _fail_data(f"cannot write {args.output}: {exc}")
    print(f"wrote {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    try:
        engine = _load_engine_or_fail(args)
    except (OSError, CorpusError, TaxonomyError) as exc:
        return _fail_data(str(exc))

    # Check the port before loading uvicorn's machinery so a busy port is a
    # clean data error rather than a log dump.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        return _fail_data(f"cannot bind {args.host}:{args.port}: {exc}")
    finally:
        probe.close()

    app = create_app(engine, cors_origins=args.cors_origin or None)
    print(
        f"ready: {len(engine.corpus)} messages, listening on http://{args.host}:{args.port}",
        file=sys.stderr,
        flush=True,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="quakestream", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check a corpus and taxonomy, print a report")
    _add_corpus_args(validate)
    validate.set_defaults(func=cmd_validate)

    query = commands.add_parser("query", help="run one endpoint query, print the response body")
    query.add_argument("endpoint", choices=ENDPOINTS)
    _add_corpus_args(query)
    _add_query_params(query)
    query.set_defaults(func=cmd_query)

    export = commands.add_parser("export", help="export a WordStream window as SVG")
    _add_corpus_args(export)
    _add_query_params(export)
    export.add_argument("--output", required=True, help="output SVG path")
    export.set_defaults(func=cmd_export)

    serve = commands.add_parser("serve", help="serve the query API over HTTP")
    _add_corpus_args(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8787)
    serve.add_argument("--neighborhoods", help="neighborhood geometry GeoJSON path")
    serve.add_argument(
        "--cors-origin",
        action="append",
        help="allowed CORS origin (repeatable; default: any)",
    )
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
