"""WordStream layout: stacked topic streams with collision-free word boxes.

Two topic bands share the canvas: content terms (top, 70% of the usable
height) and message locations (bottom, 30%), separated by a gutter of 2%
of the canvas height. The query window is split into equal-duration boxes;
within each box a topic's band thickness is post_count / max_post_count of
that topic's region height, centered on the region's centerline (a
symmetric silhouette). Words are placed greedily per box in descending
frequency order on a grid, never overlapping and never leaving their band;
placement in a box stops at the first word that does not fit, so dropped
words are always that box's lowest-frequency tail.

Geometry is renderer-independent: a glyph is approximated as a fixed-aspect
box 0.6 * font_size wide per character and font_size tall, so identical
inputs always produce an identical layout.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from datetime import datetime, timedelta
from importlib import resources
from math import ceil
from typing import Sequence

from .corpus import Message, TimeWindow

TOPIC_TERMS = "terms"
TOPIC_LOCATIONS = "locations"

#: Vertical share of the usable canvas per topic.
TOPIC_SHARES = {TOPIC_TERMS: 0.7, TOPIC_LOCATIONS: 0.3}
GUTTER_FRACTION = 0.02
GLYPH_ASPECT = 0.6  # bounding-box width per character, in font-size units
MIN_TOKEN_LENGTH = 3

_EPS = 1e-9
_US = timedelta(microseconds=1)


@dataclass(frozen=True)
class FrequencyBox:
    """Term counts for one time box, plus the post count driving thickness."""

    window: TimeWindow
    freqs: dict[str, int]
    post_count: int


@dataclass(frozen=True)
class FrequencyTable:
    topic: str
    boxes: tuple[FrequencyBox, ...]


@dataclass(frozen=True)
class Band:
    """Vertical extent of a topic's stream within one box (y grows downward)."""

    top: float
    bottom: float

    @property
    def thickness(self) -> float:
        return self.bottom - self.top


@dataclass(frozen=True)
class WordPlacement:
    term: str
    topic: str
    box_index: int
    frequency: int
    font_size: float
    bounding_box: tuple[float, float, float, float]  # x, y, width, height


@dataclass(frozen=True)
class StreamLayout:
    canvas: tuple[float, float]
    bands: dict[str, tuple[Band, ...]]
    words: tuple[WordPlacement, ...]
    dropped: dict[str, tuple[int, ...]]
    tables: tuple[FrequencyTable, FrequencyTable]

    def table(self, topic: str) -> FrequencyTable:
        for table in self.tables:
            if table.topic == topic:
                return table
        raise KeyError(topic)


def load_stopwords() -> frozenset[str]:
    """Stopword list shipped with the package."""
    text = resources.files("quakestream").joinpath("assets/stopwords.txt").read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def _box_boundaries(window: TimeWindow, num_boxes: int) -> list[datetime]:
    total_us = window.duration // _US
    if num_boxes < 1:
        raise ValueError(f"num_boxes must be >= 1, got {num_boxes}")
    if total_us < num_boxes:
        raise ValueError(f"window too narrow for {num_boxes} boxes")
    return [
        window.start + timedelta(microseconds=(total_us * i) // num_boxes)
        for i in range(num_boxes + 1)
    ]


def _truncate_top_k(freqs: dict[str, int], top_k: int) -> dict[str, int]:
    if len(freqs) <= top_k:
        return dict(freqs)
    ranked = sorted(freqs.items(), key=lambda entry: (-entry[1], entry[0]))
    return dict(ranked[:top_k])


def term_frequencies(
    messages: Sequence[Message],
    window: TimeWindow,
    num_boxes: int,
    top_k: int,
    stopwords: frozenset[str],
) -> tuple[FrequencyTable, FrequencyTable]:
    """Per-box term and location frequencies over a windowed collection.

    The window is split into ``num_boxes`` equal-duration boxes. The terms
    table counts token occurrences from message content, skipping stopwords
    and tokens shorter than 3 characters, and keeps the top_k per box
    (ties lexicographic). The locations table counts message locations the
    same way; messages with no location are skipped there and excluded
    from that topic's post count.
    """
    from .taxonomy import tokenize  # local import to avoid a module cycle

    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    boundaries = _box_boundaries(window, num_boxes)
    box_windows = [
        TimeWindow(boundaries[i], boundaries[i + 1]) for i in range(num_boxes)
    ]

    term_counts: list[dict[str, int]] = [{} for _ in range(num_boxes)]
    location_counts: list[dict[str, int]] = [{} for _ in range(num_boxes)]
    post_counts = [0] * num_boxes
    located_counts = [0] * num_boxes

    for message in messages:
        if not (window.start <= message.timestamp < window.end):
            continue
        index = bisect_right(boundaries, message.timestamp) - 1
        index = min(index, num_boxes - 1)
        post_counts[index] += 1
        for token in tokenize(message.content):
            if len(token) >= MIN_TOKEN_LENGTH and token not in stopwords:
                term_counts[index][token] = term_counts[index].get(token, 0) + 1
        if message.location:
            located_counts[index] += 1
            location_counts[index][message.location] = (
                location_counts[index].get(message.location, 0) + 1
            )

    terms = FrequencyTable(
        topic=TOPIC_TERMS,
        boxes=tuple(
            FrequencyBox(
                window=box_windows[i],
                freqs=_truncate_top_k(term_counts[i], top_k),
                post_count=post_counts[i],
            )
            for i in range(num_boxes)
        ),
    )
    locations = FrequencyTable(
        topic=TOPIC_LOCATIONS,
        boxes=tuple(
            FrequencyBox(
                window=box_windows[i],
                freqs=_truncate_top_k(location_counts[i], top_k),
                post_count=located_counts[i],
            )
            for i in range(num_boxes)
        ),
    )
    return terms, locations


def _font_size(
    frequency: int, f_min: int, f_max: int, min_font: float, max_font: float
) -> float:
    if f_max == f_min:
        return max_font
    return min_font + (max_font - min_font) * (frequency - f_min) / (f_max - f_min)


def _overlaps(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return ax < bx + bw and bx < ax + aw and ay < by + bh and by < ay + ah


def _place_in_cell(
    width: float,
    height: float,
    cell_x0: float,
    cell_x1: float,
    band: Band,
    step: float,
    placed: list[tuple[float, float, float, float]],
) -> tuple[float, float] | None:
    """First collision-free grid position in reading order, or None.

    Scans rows top to bottom and columns left to right on a grid of the
    given step. On a collision the column jumps past the blocking box's
    right edge (every skipped position would collide with the same box).
    """
    if height > band.thickness + _EPS or width > (cell_x1 - cell_x0) + _EPS:
        return None
    y = band.top
    while y + height <= band.bottom + _EPS:
        x = cell_x0
        while x + width <= cell_x1 + _EPS:
            candidate = (x, y, width, height)
            blocker_edge = None
            for box in placed:
                if _overlaps(candidate, box):
                    edge = box[0] + box[2]
                    if blocker_edge is None or edge > blocker_edge:
                        blocker_edge = edge
            if blocker_edge is None:
                return x, y
            jump = cell_x0 + ceil((blocker_edge - cell_x0) / step - _EPS) * step
            x = max(x + step, jump)
        y += step
    return None


def layout_stream(
    tables: tuple[FrequencyTable, FrequencyTable],
    canvas: tuple[float, float] = (1600.0, 900.0),
    min_font: float = 8.0,
    max_font: float = 22.0,
) -> StreamLayout:
    """Compute band geometry and collision-free word placements.

    Box j spans x in [j*W/B, (j+1)*W/B). For each topic the band thickness
    in box j is post_count_j / max_post_count of the topic's region height,
    centered on the region centerline; a zero maximum yields zero-thickness
    bands. Font sizes interpolate linearly between min_font and max_font
    over each box's frequency range (single-frequency boxes get max_font).
    """
    width, height = canvas
    if width <= 0 or height <= 0:
        raise ValueError(f"canvas must be positive, got {canvas}")
    if not 0 < min_font < max_font:
        raise ValueError(f"fonts must satisfy 0 < min_font < max_font, got {min_font}, {max_font}")
    num_boxes = {len(table.boxes) for table in tables}
    if len(num_boxes) != 1:
        raise ValueError("both topics must have the same number of boxes")
    boxes = num_boxes.pop()
    if boxes < 1:
        raise ValueError("layout requires at least one box")

    gutter = GUTTER_FRACTION * height
    usable = height - gutter
    region_top = 0.0
    bands: dict[str, tuple[Band, ...]] = {}
    words: list[WordPlacement] = []
    dropped: dict[str, list[int]] = {}

    for table in tables:
        region_height = TOPIC_SHARES[table.topic] * usable
        centerline = region_top + region_height / 2.0
        v_max = max((box.post_count for box in table.boxes), default=0)

        topic_bands: list[Band] = []
        topic_dropped = [0] * boxes
        for j, box in enumerate(table.boxes):
            thickness = region_height * box.post_count / v_max if v_max > 0 else 0.0
            band = Band(top=centerline - thickness / 2.0, bottom=centerline + thickness / 2.0)
            topic_bands.append(band)

            cell_x0 = j * width / boxes
            cell_x1 = (j + 1) * width / boxes
            ranked = sorted(box.freqs.items(), key=lambda entry: (-entry[1], entry[0]))
            if not ranked:
                continue
            f_min = ranked[-1][1]
            f_max = ranked[0][1]
            placed: list[tuple[float, float, float, float]] = []
            for position, (term, frequency) in enumerate(ranked):
                font = (
                    max_font
                    if len(ranked) == 1
                    else _font_size(frequency, f_min, f_max, min_font, max_font)
                )
                box_width = font * GLYPH_ASPECT * len(term)
                spot = _place_in_cell(
                    box_width, font, cell_x0, cell_x1, band, font / 4.0, placed
                )
                if spot is None:
                    # Greedy order: everything after the first failure is
                    # lower-frequency and is dropped with it.
                    topic_dropped[j] = len(ranked) - position
                    break
                bounding_box = (spot[0], spot[1], box_width, font)
                placed.append(bounding_box)
                words.append(
                    WordPlacement(
                        term=term,
                        topic=table.topic,
                        box_index=j,
                        frequency=frequency,
                        font_size=font,
                        bounding_box=bounding_box,
                    )
                )

        bands[table.topic] = tuple(topic_bands)
        dropped[table.topic] = topic_dropped
        region_top += region_height + gutter

    return StreamLayout(
        canvas=canvas,
        bands=bands,
        words=tuple(words),
        dropped={topic: tuple(counts) for topic, counts in dropped.items()},
        tables=tables,
    )


def term_trace(
    layout: StreamLayout, term: str, topic: str | None = None
) -> list[tuple[int, int, bool]]:
    """A term's per-box (box_index, frequency, placed) trail, in box order.

    Searches the terms topic first, then locations, unless a topic is
    given. Unknown terms yield an empty list.
    """
    placed_keys = {(w.topic, w.box_index, w.term) for w in layout.words}
    topics = [topic] if topic is not None else [TOPIC_TERMS, TOPIC_LOCATIONS]
    for candidate in topics:
        table = layout.table(candidate)
        trace = [
            (i, box.freqs[term], (candidate, i, term) in placed_keys)
            for i, box in enumerate(table.boxes)
            if term in box.freqs
        ]
        if trace:
            return trace
    return []
