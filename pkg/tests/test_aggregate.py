import random
from collections import Counter
from datetime import datetime, timedelta

import pytest

from quakestream.aggregate import (
    account_ranking,
    clamp_window,
    geo_counts,
    stacked_series,
)
from quakestream.corpus import Corpus, Message, TimeWindow
from quakestream.taxonomy import UNCLASSIFIED, classify_message

from conftest import T0, UTC, make_corpus

HOUR = timedelta(hours=1)


def _mini_corpus(rows):
    messages = [
        Message(id=i + 2, timestamp=ts, location=loc, account=acct, content=text)
        for i, (ts, loc, acct, text) in enumerate(rows)
    ]
    return Corpus.from_messages(messages)


# --- clamp_window -----------------------------------------------------------


def test_clamp_keeps_six_hours():
    window = TimeWindow(T0, T0 + timedelta(hours=6))
    assert clamp_window(window) == window


def test_clamp_raises_half_hour_to_one_hour():
    window = TimeWindow(T0, T0 + timedelta(minutes=30))
    assert clamp_window(window) == TimeWindow(T0, T0 + HOUR)


def test_clamp_cuts_forty_hours_to_thirty_one():
    window = TimeWindow(T0, T0 + timedelta(hours=40))
    assert clamp_window(window) == TimeWindow(T0, T0 + timedelta(hours=31))


def test_clamp_is_idempotent():
    rng = random.Random(5)
    for _ in range(50):
        window = TimeWindow(T0, T0 + timedelta(minutes=rng.randrange(1, 3000)))
        once = clamp_window(window)
        assert clamp_window(once) == once


# --- stacked_series ---------------------------------------------------------


def test_multi_label_message_counts_in_both_series(taxonomy):
    corpus = _mini_corpus([(T0 + timedelta(minutes=10), "Downtown", "u1", "need water and food")])
    window = TimeWindow(T0, T0 + HOUR)
    selected = frozenset({("resource", "water"), ("resource", "food")})
    series = stacked_series(corpus, taxonomy, window, selected)
    assert len(series.bins) == 1
    bin0 = series.bins[0]
    assert bin0.counts[("resource", "water")] == 1
    assert bin0.counts[("resource", "food")] == 1
    assert sum(bin0.counts.values()) == 2  # stack height 2
    assert bin0.total == 1  # for one distinct message


def test_empty_window_yields_zero_bins_spanning_window(taxonomy):
    corpus = _mini_corpus([(T0, "Downtown", "u1", "water")])
    window = TimeWindow(T0 + timedelta(hours=10), T0 + timedelta(hours=13))
    series = stacked_series(corpus, taxonomy, window, frozenset(taxonomy.labels()))
    assert [b.start for b in series.bins] == [
        T0 + timedelta(hours=10 + i) for i in range(3)
    ]
    assert all(count == 0 for b in series.bins for count in b.counts.values())


def test_bins_align_to_clock_hours(taxonomy):
    corpus = _mini_corpus([(T0 + timedelta(minutes=40), "", "u1", "water")])
    window = TimeWindow(T0 + timedelta(minutes=30), T0 + timedelta(minutes=90))
    series = stacked_series(corpus, taxonomy, window, frozenset(taxonomy.labels()))
    assert series.bins[0].start == T0  # floor of 00:30 to the hour
    assert series.bins[0].counts[("resource", "water")] == 1


def test_unclassified_series_counts_label_free_messages(taxonomy):
    corpus = _mini_corpus(
        [
            (T0 + timedelta(minutes=5), "", "u1", "water please"),
            (T0 + timedelta(minutes=6), "", "u2", "good morning everyone"),
        ]
    )
    window = TimeWindow(T0, T0 + HOUR)
    series = stacked_series(
        corpus, taxonomy, window, frozenset({UNCLASSIFIED, ("resource", "water")})
    )
    bin0 = series.bins[0]
    assert bin0.counts[UNCLASSIFIED] == 1
    assert bin0.counts[("resource", "water")] == 1


def test_invalid_bin_width_rejected(taxonomy):
    corpus = _mini_corpus([(T0, "", "u1", "hi")])
    window = TimeWindow(T0, T0 + HOUR)
    with pytest.raises(ValueError):
        stacked_series(corpus, taxonomy, window, frozenset(), bin_width=timedelta(minutes=7))


def test_unknown_selected_label_rejected(taxonomy):
    corpus = _mini_corpus([(T0, "", "u1", "hi")])
    with pytest.raises(ValueError):
        stacked_series(
            corpus, taxonomy, TimeWindow(T0, T0 + HOUR), frozenset({("x", "magma")})
        )


def _series_oracle(corpus, taxonomy, window, selected):
    """Nested-loop oracle: hour bins via datetime.replace, per (message, label)."""
    first = window.start.replace(minute=0, second=0, microsecond=0)
    starts = []
    cursor = first
    while cursor < window.end:
        starts.append(cursor)
        cursor += HOUR
    counts = {start: Counter() for start in starts}
    totals = {start: 0 for start in starts}
    for message in corpus.messages:
        if not (window.start <= message.timestamp < window.end):
            continue
        bin_start = message.timestamp.replace(minute=0, second=0, microsecond=0)
        labels = classify_message(message, taxonomy)
        hit = {label for label in labels if label in selected}
        if not labels and UNCLASSIFIED in selected:
            hit = {UNCLASSIFIED}
        if hit:
            totals[bin_start] += 1
        for label in hit:
            counts[bin_start][label] += 1
    return starts, counts, totals


def test_stacked_series_matches_nested_loop_oracle(taxonomy):
    corpus = make_corpus(seed=31, size=500, span_hours=20)
    window = TimeWindow(T0 + timedelta(hours=2), T0 + timedelta(hours=14))
    selected = frozenset(taxonomy.labels()) | {UNCLASSIFIED}
    series = stacked_series(corpus, taxonomy, window, selected)
    starts, counts, totals = _series_oracle(corpus, taxonomy, window, selected)
    assert [b.start for b in series.bins] == starts
    for bin in series.bins:
        assert bin.total == totals[bin.start]
        for label, count in bin.counts.items():
            assert count == counts[bin.start][label]


def test_label_bin_sums_equal_windowed_label_counts(taxonomy):
    corpus = make_corpus(seed=32, size=400, span_hours=12)
    window = TimeWindow(T0 + timedelta(hours=1), T0 + timedelta(hours=9))
    selected = frozenset(taxonomy.labels())
    series = stacked_series(corpus, taxonomy, window, selected)
    for label in selected:
        expected = sum(
            1
            for m in corpus.messages
            if window.start <= m.timestamp < window.end
            and label in classify_message(m, taxonomy)
        )
        assert sum(b.counts[label] for b in series.bins) == expected


def test_shrinking_selection_never_increases_counts(taxonomy):
    corpus = make_corpus(seed=33, size=300, span_hours=10)
    window = TimeWindow(T0, T0 + timedelta(hours=8))
    full = frozenset(taxonomy.labels())
    small = frozenset({("resource", "water"), ("resource", "food")})
    wide = stacked_series(corpus, taxonomy, window, full)
    narrow = stacked_series(corpus, taxonomy, window, small)
    for wide_bin, narrow_bin in zip(wide.bins, narrow.bins):
        for label, count in narrow_bin.counts.items():
            assert count <= wide_bin.counts[label]
        assert narrow_bin.total <= wide_bin.total


def test_aggregations_are_pure(taxonomy):
    corpus = make_corpus(seed=34, size=200, span_hours=8)
    window = TimeWindow(T0, T0 + timedelta(hours=6))
    selected = frozenset(taxonomy.labels())
    assert stacked_series(corpus, taxonomy, window, selected) == stacked_series(
        corpus, taxonomy, window, selected
    )
    assert geo_counts(corpus, taxonomy, window) == geo_counts(corpus, taxonomy, window)
    assert account_ranking(corpus, taxonomy, window) == account_ranking(
        corpus, taxonomy, window
    )


# --- geo_counts -------------------------------------------------------------


def test_geo_counts_by_location(taxonomy):
    rows = [
        (T0 + timedelta(minutes=i), "Downtown", f"u{i}", "quake")
        for i in range(3)
    ] + [(T0 + timedelta(minutes=10), "Weston", "u9", "quake")]
    counts = geo_counts(_mini_corpus(rows), taxonomy, TimeWindow(T0, T0 + HOUR))
    assert counts.counts == {"Downtown": 3, "Weston": 1}
    assert counts.unknown_count == 0


def test_geo_counts_all_unknown(taxonomy):
    rows = [(T0 + timedelta(minutes=i), "", f"u{i}", "hi") for i in range(4)]
    counts = geo_counts(_mini_corpus(rows), taxonomy, TimeWindow(T0, T0 + HOUR))
    assert counts.counts == {}
    assert counts.unknown_count == 4


def test_geo_conservation_on_synthetic_corpus(taxonomy):
    corpus = make_corpus(seed=35, size=600, span_hours=10)
    window = TimeWindow(T0 + timedelta(hours=1), T0 + timedelta(hours=7))
    counts = geo_counts(corpus, taxonomy, window)
    in_window = sum(1 for m in corpus.messages if window.start <= m.timestamp < window.end)
    assert sum(counts.counts.values()) + counts.unknown_count == in_window


def test_geo_label_filter_conservation(taxonomy):
    corpus = make_corpus(seed=36, size=500, span_hours=10)
    window = TimeWindow(T0, T0 + timedelta(hours=8))
    selected = frozenset({("resource", "water")})
    counts = geo_counts(corpus, taxonomy, window, selected)
    matching = sum(
        1
        for m in corpus.messages
        if window.start <= m.timestamp < window.end
        and ("resource", "water") in classify_message(m, taxonomy)
    )
    assert sum(counts.counts.values()) + counts.unknown_count == matching


def test_geo_argmax_downtown(taxonomy, scenario_corpus):
    window = TimeWindow(
        datetime(2020, 4, 8, 8, tzinfo=UTC), datetime(2020, 4, 8, 13, tzinfo=UTC)
    )
    counts = geo_counts(scenario_corpus, taxonomy, window)
    assert max(counts.counts, key=lambda name: counts.counts[name]) == "Downtown"


# --- account_ranking --------------------------------------------------------


def test_ranking_returns_all_when_limit_exceeds_accounts(taxonomy):
    rows = [
        (T0 + timedelta(minutes=1), "", "alice", "x"),
        (T0 + timedelta(minutes=2), "", "bob", "y"),
    ]
    ranking = account_ranking(_mini_corpus(rows), taxonomy, TimeWindow(T0, T0 + HOUR), limit=50)
    assert len(ranking.entries) == 2


def test_ranking_ties_break_lexicographically(taxonomy):
    rows = [
        (T0 + timedelta(minutes=1), "", "zed", "a"),
        (T0 + timedelta(minutes=2), "", "amy", "b"),
        (T0 + timedelta(minutes=3), "", "amy", "c"),
        (T0 + timedelta(minutes=4), "", "zed", "d"),
    ]
    ranking = account_ranking(_mini_corpus(rows), taxonomy, TimeWindow(T0, T0 + HOUR), limit=5)
    assert ranking.entries == (("amy", 2), ("zed", 2))


def test_ranking_matches_count_sort_oracle(taxonomy):
    corpus = make_corpus(seed=37, size=400, span_hours=10)
    window = TimeWindow(T0, T0 + timedelta(hours=9))
    ranking = account_ranking(corpus, taxonomy, window, limit=10)
    tally = Counter(
        m.account for m in corpus.messages if window.start <= m.timestamp < window.end
    )
    oracle = sorted(tally.items(), key=lambda e: (-e[1], e[0]))[:10]
    assert list(ranking.entries) == oracle


def test_ranking_rejects_zero_limit(taxonomy):
    corpus = _mini_corpus([(T0, "", "u", "hi")])
    with pytest.raises(ValueError):
        account_ranking(corpus, taxonomy, TimeWindow(T0, T0 + HOUR), limit=0)
