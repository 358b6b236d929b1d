"""Windowed aggregations: stacked time series, neighborhood counts, rankings.

All three aggregations share the same label-filter semantics: an empty
filter matches every message; a nonempty filter matches messages whose
label set intersects it, with the synthetic ``UNCLASSIFIED`` label standing
in for label-free messages. Everything here is a pure function of
(corpus, taxonomy, window, filter).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .corpus import Corpus, TimeWindow, filter_window
from .taxonomy import UNCLASSIFIED, Label, LabelSet, Taxonomy, classify_message

HOUR = timedelta(hours=1)
MIN_WINDOW_WIDTH = HOUR
MAX_WINDOW_WIDTH = timedelta(hours=31)

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_US = timedelta(microseconds=1)


@dataclass(frozen=True)
class SeriesBin:
    """One time bin: per-label counts plus the distinct matching message count.

    A multi-label message contributes to each of its selected labels, so the
    stacked sum of ``counts`` can exceed ``total``.
    """

    start: datetime
    counts: dict[Label, int]
    total: int


@dataclass(frozen=True)
class StackedSeries:
    bin_width: timedelta
    bins: tuple[SeriesBin, ...]
    selected_labels: tuple[Label, ...]


@dataclass(frozen=True)
class GeoCounts:
    """Per-neighborhood message counts; empty locations land in unknown_count."""

    counts: dict[str, int]
    unknown_count: int


@dataclass(frozen=True)
class AccountRanking:
    """Accounts by post count, descending, ties broken lexicographically."""

    entries: tuple[tuple[str, int], ...]


def clamp_window(requested: TimeWindow) -> TimeWindow:
    """Clamp the window width into [1h, 31h] by moving the end; idempotent."""
    width = requested.duration
    if width < MIN_WINDOW_WIDTH:
        return TimeWindow(requested.start, requested.start + MIN_WINDOW_WIDTH)
    if width > MAX_WINDOW_WIDTH:
        return TimeWindow(requested.start, requested.start + MAX_WINDOW_WIDTH)
    return requested


def matches_filter(labels: LabelSet, selected: frozenset[Label]) -> bool:
    """Empty filter matches everything; UNCLASSIFIED matches label-free messages."""
    if not selected:
        return True
    if labels & selected:
        return True
    return not labels and UNCLASSIFIED in selected


def _validate_labels(selected: frozenset[Label], taxonomy: Taxonomy) -> None:
    known = set(taxonomy.labels()) | {UNCLASSIFIED}
    unknown = selected - known
    if unknown:
        raise ValueError(f"unknown labels: {sorted(unknown)}")


def _canonical_label_order(selected: frozenset[Label], taxonomy: Taxonomy) -> tuple[Label, ...]:
    ordered = [label for label in taxonomy.labels() if label in selected]
    if UNCLASSIFIED in selected:
        ordered.append(UNCLASSIFIED)
    return tuple(ordered)


def _validate_bin_width(bin_width: timedelta) -> int:
    """Bin width must divide one hour or be a whole multiple of it."""
    bin_us = bin_width // _US
    hour_us = HOUR // _US
    if bin_us <= 0 or (hour_us % bin_us != 0 and bin_us % hour_us != 0):
        raise ValueError(
            f"bin width {bin_width} must divide 1 hour or be a multiple of 1 hour"
        )
    return bin_us


def _floor_to_bin(instant: datetime, bin_us: int) -> datetime:
    # Bin boundaries sit at whole multiples of the bin width from the epoch,
    # which keeps every boundary aligned to the top of the hour.
    offset_us = (instant - _EPOCH) // _US
    return _EPOCH + timedelta(microseconds=offset_us - offset_us % bin_us)


def stacked_series(
    corpus: Corpus,
    taxonomy: Taxonomy,
    window: TimeWindow,
    selected_labels: frozenset[Label],
    bin_width: timedelta = HOUR,
) -> StackedSeries:
    """Per-bin, per-label counts over the window.

    Bins are contiguous, aligned to the bin width from the top of the hour,
    and span the whole window even when empty. A message is counted once in
    each of its labels that appear in ``selected_labels``; label-free
    messages are counted under ``UNCLASSIFIED`` when it is selected.
    """
    bin_us = _validate_bin_width(bin_width)
    _validate_labels(selected_labels, taxonomy)
    ordered_labels = _canonical_label_order(selected_labels, taxonomy)

    first_start = _floor_to_bin(window.start, bin_us)
    bin_starts: list[datetime] = []
    cursor = first_start
    while cursor < window.end:
        bin_starts.append(cursor)
        cursor += bin_width

    label_counts: list[Counter[Label]] = [Counter() for _ in bin_starts]
    totals = [0] * len(bin_starts)
    for message in filter_window(corpus, window):
        index = ((message.timestamp - first_start) // _US) // bin_us
        labels = classify_message(message, taxonomy)
        hit = labels & selected_labels
        if not labels and UNCLASSIFIED in selected_labels:
            hit = {UNCLASSIFIED}
        if hit:
            totals[index] += 1
            for label in hit:
                label_counts[index][label] += 1

    bins = tuple(
        SeriesBin(
            start=start,
            counts={label: label_counts[i][label] for label in ordered_labels},
            total=totals[i],
        )
        for i, start in enumerate(bin_starts)
    )
    return StackedSeries(bin_width=bin_width, bins=bins, selected_labels=ordered_labels)


def geo_counts(
    corpus: Corpus,
    taxonomy: Taxonomy,
    window: TimeWindow,
    selected_labels: frozenset[Label] = frozenset(),
) -> GeoCounts:
    """Message counts by neighborhood over the filtered window."""
    counts: Counter[str] = Counter()
    unknown = 0
    for message in filter_window(corpus, window):
        if not matches_filter(classify_message(message, taxonomy), selected_labels):
            continue
        if message.location:
            counts[message.location] += 1
        else:
            unknown += 1
    return GeoCounts(counts=dict(counts), unknown_count=unknown)


def account_ranking(
    corpus: Corpus,
    taxonomy: Taxonomy,
    window: TimeWindow,
    selected_labels: frozenset[Label] = frozenset(),
    limit: int = 15,
) -> AccountRanking:
    """Top accounts by post count under the label filter."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    counts: Counter[str] = Counter()
    for message in filter_window(corpus, window):
        if matches_filter(classify_message(message, taxonomy), selected_labels):
            counts[message.account] += 1
    ranked = sorted(counts.items(), key=lambda entry: (-entry[1], entry[0]))
    return AccountRanking(entries=tuple(ranked[:limit]))
