"""Stateless HTTP query API over an immutable corpus + taxonomy.

Both the HTTP handlers and the CLI ``query`` command call
:func:`evaluate_query`, which turns raw string parameters into canonical
JSON bytes; identical parameters therefore produce byte-identical bodies
on either surface. Response JSON is serialized with sorted keys and
compact separators. Every windowed response embeds the effective
(post-clamp) window alongside the requested one.

Wire conventions: instants are ISO-8601 UTC (``2020-04-06T00:00:00Z``);
labels travel as bare subcategory names (unique taxonomy-wide) plus
``unclassified`` for the synthetic label-free series; durations are whole
seconds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Mapping, Optional

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .aggregate import (
    AccountRanking,
    GeoCounts,
    StackedSeries,
    account_ranking,
    clamp_window,
    geo_counts,
    matches_filter,
    stacked_series,
)
from .corpus import Corpus, Message, TimeWindow, filter_window, load_corpus_path
from .network import MentionGraph, build_graph
from .taxonomy import (
    UNCLASSIFIED,
    Label,
    Taxonomy,
    classify_message,
    default_taxonomy,
    load_taxonomy_path,
    tokenize,
)
from .wordstream import StreamLayout, layout_stream, load_stopwords, term_frequencies

DEFAULT_BIN_SECONDS = 3600
DEFAULT_BOXES = 8
DEFAULT_TOP_K = 20
DEFAULT_LIMIT = 15
DEFAULT_PAGE_SIZE = 50
MAX_PAGE_SIZE = 500
DEFAULT_CANVAS = (1600.0, 900.0)
DEFAULT_MIN_FONT = 8.0
DEFAULT_MAX_FONT = 22.0

UNCLASSIFIED_WIRE_NAME = "unclassified"


class QueryError(ValueError):
    """Parameter violation; carries the offending field for diagnostics."""

    def __init__(self, field: str, detail: str):
        super().__init__(f"{field}: {detail}")
        self.field = field
        self.detail = detail


@dataclass(frozen=True)
class Engine:
    """Immutable query state: corpus, taxonomy, stopwords, map geometry."""

    corpus: Corpus
    taxonomy: Taxonomy
    stopwords: frozenset[str]
    neighborhood_geometry: Optional[bytes] = None
    skipped_rows: int = 0


def default_neighborhood_geometry() -> bytes:
    from importlib import resources

    return resources.files("quakestream").joinpath("assets/neighborhoods.geojson").read_bytes()


def load_engine(
    corpus_path: Path | str,
    taxonomy_path: Path | str | None = None,
    neighborhoods_path: Path | str | None = None,
) -> Engine:
    corpus, skipped = load_corpus_path(corpus_path)
    taxonomy = (
        load_taxonomy_path(taxonomy_path) if taxonomy_path else default_taxonomy()
    )
    geometry = (
        Path(neighborhoods_path).read_bytes()
        if neighborhoods_path
        else default_neighborhood_geometry()
    )
    return Engine(
        corpus=corpus,
        taxonomy=taxonomy,
        stopwords=load_stopwords(),
        neighborhood_geometry=geometry,
        skipped_rows=skipped,
    )


def canonical_json(payload: object) -> bytes:
    return json.dumps(
        payload, ensure_ascii=False, sort_keys=True, separators=(",", ":")
    ).encode("utf-8")


def format_instant(instant: datetime) -> str:
    return instant.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_instant(value: str, field: str) -> datetime:
    try:
        parsed = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise QueryError(field, f"cannot parse instant {value!r}") from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_int(params: Mapping[str, str], field: str, default: int, minimum: int = 1) -> int:
    raw = params.get(field)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise QueryError(field, f"expected an integer, got {raw!r}") from None
    if value < minimum:
        raise QueryError(field, f"must be >= {minimum}, got {value}")
    return value


def _parse_window(params: Mapping[str, str]) -> tuple[TimeWindow, TimeWindow]:
    for field in ("from", "to"):
        if field not in params:
            raise QueryError(field, "missing required parameter")
    start = parse_instant(params["from"], "from")
    end = parse_instant(params["to"], "to")
    if start >= end:
        raise QueryError("to", f"'from' ({params['from']}) must precede 'to' ({params['to']})")
    requested = TimeWindow(start, end)
    return requested, clamp_window(requested)


def _parse_labels(params: Mapping[str, str], taxonomy: Taxonomy) -> frozenset[Label] | None:
    raw = params.get("labels")
    if raw is None:
        return None
    labels: set[Label] = set()
    for name in raw.split(","):
        name = name.strip()
        if not name:
            continue
        if name == UNCLASSIFIED_WIRE_NAME:
            labels.add(UNCLASSIFIED)
            continue
        label = taxonomy.label_for(name)
        if label is None:
            raise QueryError("labels", f"unknown label {name!r}")
        labels.add(label)
    return frozenset(labels)


def _window_envelope(requested: TimeWindow, effective: TimeWindow) -> dict:
    return {
        "from": format_instant(effective.start),
        "to": format_instant(effective.end),
        "clamped": effective != requested,
        "requested": {
            "from": format_instant(requested.start),
            "to": format_instant(requested.end),
        },
    }


def _wire_label(label: Label) -> str:
    return UNCLASSIFIED_WIRE_NAME if label == UNCLASSIFIED else label[1]


# ---------------------------------------------------------------------------
# Payload builders (plain dicts; canonical_json handles serialization)
# ---------------------------------------------------------------------------


def series_payload(series: StackedSeries) -> dict:
    return {
        "bin_seconds": int(series.bin_width.total_seconds()),
        "labels": [_wire_label(label) for label in series.selected_labels],
        "bins": [
            {
                "start": format_instant(bin.start),
                "counts": {_wire_label(label): n for label, n in bin.counts.items()},
                "total": bin.total,
            }
            for bin in series.bins
        ],
    }


def geo_payload(counts: GeoCounts) -> dict:
    return {"counts": dict(counts.counts), "unknown_count": counts.unknown_count}


def ranking_payload(ranking: AccountRanking) -> dict:
    return {
        "entries": [
            {"account": account, "count": count} for account, count in ranking.entries
        ]
    }


def graph_payload(graph: MentionGraph) -> dict:
    return {
        "nodes": [
            {
                "account": account,
                "out_posts": stats.out_posts,
                "weighted_degree": stats.weighted_degree,
                "component": stats.component_id,
            }
            for account, stats in sorted(graph.nodes.items())
        ],
        "edges": [
            {"source": source, "target": target, "weight": weight}
            for (source, target), weight in sorted(graph.edges.items())
        ],
    }


def layout_payload(layout: StreamLayout) -> dict:
    return {
        "canvas": [layout.canvas[0], layout.canvas[1]],
        "boxes": len(layout.tables[0].boxes),
        "bands": {
            topic: [{"top": band.top, "bottom": band.bottom} for band in bands]
            for topic, bands in layout.bands.items()
        },
        "words": [
            {
                "term": word.term,
                "topic": word.topic,
                "box": word.box_index,
                "frequency": word.frequency,
                "font_size": word.font_size,
                "x": word.bounding_box[0],
                "y": word.bounding_box[1],
                "width": word.bounding_box[2],
                "height": word.bounding_box[3],
            }
            for word in layout.words
        ],
        "dropped": {topic: list(counts) for topic, counts in layout.dropped.items()},
        "tables": {
            table.topic: {
                "boxes": [
                    {
                        "from": format_instant(box.window.start),
                        "to": format_instant(box.window.end),
                        "freqs": dict(box.freqs),
                        "post_count": box.post_count,
                    }
                    for box in table.boxes
                ]
            }
            for table in layout.tables
        },
    }


def message_payload(message: Message, taxonomy: Taxonomy) -> dict:
    labels = classify_message(message, taxonomy)
    return {
        "id": message.id,
        "timestamp": format_instant(message.timestamp),
        "location": message.location,
        "account": message.account,
        "content": message.content,
        "labels": sorted(_wire_label(label) for label in labels),
    }


# ---------------------------------------------------------------------------
# Endpoint evaluation
# ---------------------------------------------------------------------------


def compute_wordstream(engine: Engine, params: Mapping[str, str]) -> tuple[StreamLayout, dict]:
    """Shared by /api/wordstream and the SVG export command."""
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy)
    boxes = _parse_int(params, "boxes", DEFAULT_BOXES)
    top_k = _parse_int(params, "top_k", DEFAULT_TOP_K)
    messages = filter_window(engine.corpus, effective)
    if selected is not None:
        messages = [
            m
            for m in messages
            if matches_filter(classify_message(m, engine.taxonomy), selected)
        ]
    tables = term_frequencies(messages, effective, boxes, top_k, engine.stopwords)
    layout = layout_stream(
        tables, canvas=DEFAULT_CANVAS, min_font=DEFAULT_MIN_FONT, max_font=DEFAULT_MAX_FONT
    )
    return layout, _window_envelope(requested, effective)


def _eval_extent(engine: Engine, params: Mapping[str, str]) -> dict:
    low, high = engine.corpus.time_extent
    return {
        "min": format_instant(low),
        "max": format_instant(high),
        "message_count": len(engine.corpus),
    }


def _eval_summary(engine: Engine, params: Mapping[str, str]) -> dict:
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy)
    if selected is None:
        selected = frozenset(engine.taxonomy.labels())
    bin_seconds = _parse_int(params, "bin", DEFAULT_BIN_SECONDS)
    if 3600 % bin_seconds != 0 and bin_seconds % 3600 != 0:
        raise QueryError("bin", f"{bin_seconds}s must divide or be a multiple of 3600s")
    series = stacked_series(
        engine.corpus,
        engine.taxonomy,
        effective,
        selected,
        bin_width=timedelta(seconds=bin_seconds),
    )
    return {"window": _window_envelope(requested, effective), **series_payload(series)}


def _eval_wordstream(engine: Engine, params: Mapping[str, str]) -> dict:
    layout, envelope = compute_wordstream(engine, params)
    return {"window": envelope, **layout_payload(layout)}


def _eval_geo(engine: Engine, params: Mapping[str, str]) -> dict:
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy) or frozenset()
    counts = geo_counts(engine.corpus, engine.taxonomy, effective, selected)
    return {"window": _window_envelope(requested, effective), **geo_payload(counts)}


def _eval_network(engine: Engine, params: Mapping[str, str]) -> dict:
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy) or frozenset()
    messages = filter_window(engine.corpus, effective)
    if selected:
        messages = [
            m
            for m in messages
            if matches_filter(classify_message(m, engine.taxonomy), selected)
        ]
    graph = build_graph(messages)
    return {"window": _window_envelope(requested, effective), **graph_payload(graph)}


def _eval_ranking(engine: Engine, params: Mapping[str, str]) -> dict:
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy) or frozenset()
    limit = _parse_int(params, "limit", DEFAULT_LIMIT)
    ranking = account_ranking(
        engine.corpus, engine.taxonomy, effective, selected, limit=limit
    )
    return {"window": _window_envelope(requested, effective), **ranking_payload(ranking)}


_MESSAGE_FILTER_KEYS = ("term", "location", "account")


def _eval_messages(engine: Engine, params: Mapping[str, str]) -> dict:
    requested, effective = _parse_window(params)
    selected = _parse_labels(params, engine.taxonomy) or frozenset()
    present = [key for key in _MESSAGE_FILTER_KEYS if key in params]
    if len(present) != 1:
        raise QueryError(
            "filter", f"exactly one of {', '.join(_MESSAGE_FILTER_KEYS)} required"
        )
    kind = present[0]
    value = params[kind]
    page = _parse_int(params, "page", 1)
    page_size = _parse_int(params, "page_size", DEFAULT_PAGE_SIZE)
    if page_size > MAX_PAGE_SIZE:
        raise QueryError("page_size", f"must be <= {MAX_PAGE_SIZE}, got {page_size}")

    term = value.lower() if kind == "term" else None
    matched: list[Message] = []
    for message in filter_window(engine.corpus, effective):
        if selected and not matches_filter(
            classify_message(message, engine.taxonomy), selected
        ):
            continue
        if kind == "term":
            if term not in tokenize(message.content):
                continue
        elif kind == "location":
            if message.location != value:
                continue
        elif message.account != value:
            continue
        matched.append(message)

    start = (page - 1) * page_size
    page_messages = matched[start : start + page_size]
    return {
        "window": _window_envelope(requested, effective),
        "total": len(matched),
        "page": page,
        "page_size": page_size,
        "filter": {kind: value},
        "messages": [message_payload(m, engine.taxonomy) for m in page_messages],
    }


_BUILDERS: dict[str, Callable[[Engine, Mapping[str, str]], dict]] = {
    "extent": _eval_extent,
    "summary": _eval_summary,
    "wordstream": _eval_wordstream,
    "geo": _eval_geo,
    "network": _eval_network,
    "ranking": _eval_ranking,
    "messages": _eval_messages,
}

ENDPOINTS = tuple(sorted(_BUILDERS))


def evaluate_query(engine: Engine, endpoint: str, params: Mapping[str, str]) -> bytes:
    """Evaluate one endpoint query to its canonical JSON response body."""
    try:
        builder = _BUILDERS[endpoint]
    except KeyError:
        raise QueryError("endpoint", f"unknown endpoint {endpoint!r}") from None
    return canonical_json(builder(engine, params))


# ---------------------------------------------------------------------------
# HTTP app
# ---------------------------------------------------------------------------


def create_app(engine: Engine | None = None, cors_origins: list[str] | None = None) -> FastAPI:
    """FastAPI app serving /api/*; responses come from evaluate_query bytes."""
    app = FastAPI(title="quakestream", docs_url=None, redoc_url=None)
    app.state.engine = engine
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins if cors_origins is not None else ["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    def _engine() -> Engine:
        current = app.state.engine
        if current is None:
            raise HTTPException(status_code=503, detail="corpus not loaded")
        return current

    def _respond(endpoint: str, request: Request) -> Response:
        try:
            body = evaluate_query(_engine(), endpoint, dict(request.query_params))
        except QueryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return Response(content=body, media_type="application/json")

    for endpoint in ENDPOINTS:

        def handler(request: Request, endpoint: str = endpoint) -> Response:
            return _respond(endpoint, request)

        app.get(f"/api/{endpoint}")(handler)

    @app.get("/api/neighborhoods")
    def neighborhoods() -> Response:
        current = _engine()
        if current.neighborhood_geometry is None:
            raise HTTPException(status_code=404, detail="no neighborhood geometry configured")
        return Response(
            content=current.neighborhood_geometry,
            media_type="application/geo+json",
        )

    return app
