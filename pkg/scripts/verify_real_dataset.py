#!/usr/bin/env python3
"""Run the scenario assertions against a user-supplied dataset copy.

The shipped fixture is synthetic; this script points the same five checks
at a real ``time,location,account,message`` CSV (not redistributed here).
The exact 25/3 post counts are asserted only in this mode, via
``--strict-counts``; without it the top-account and runner-up counts are
just printed for inspection.

Usage:
    python scripts/verify_real_dataset.py --corpus YourDataset.csv \
        --from 2020-04-08T08:00:00Z --to 2020-04-08T13:00:00Z [--strict-counts]
"""

import argparse
import sys
from datetime import datetime, timezone

from quakestream.aggregate import account_ranking, geo_counts
from quakestream.corpus import TimeWindow, filter_window, load_corpus_path
from quakestream.network import build_graph, top_nodes
from quakestream.taxonomy import default_taxonomy, load_taxonomy_path
from quakestream.wordstream import load_stopwords, term_frequencies


def instant(value: str) -> datetime:
    return datetime.fromisoformat(value.replace("Z", "+00:00")).astimezone(timezone.utc)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", required=True)
    parser.add_argument("--taxonomy")
    parser.add_argument("--from", dest="from_", type=instant, required=True)
    parser.add_argument("--to", type=instant, required=True)
    parser.add_argument("--account", default="dot-sthimark")
    parser.add_argument("--neighborhood", default="Downtown")
    parser.add_argument("--terms", default="bridge,one-lane,routes")
    parser.add_argument(
        "--strict-counts",
        action="store_true",
        help="assert the 25/3 top-versus-runner-up post counts",
    )
    args = parser.parse_args()

    corpus, skipped = load_corpus_path(args.corpus)
    taxonomy = load_taxonomy_path(args.taxonomy) if args.taxonomy else default_taxonomy()
    window = TimeWindow(args.from_, args.to)
    messages = filter_window(corpus, window)
    print(f"loaded {len(corpus)} messages ({skipped} skipped), {len(messages)} in window")

    failures = []

    ranking = account_ranking(corpus, taxonomy, window, limit=15)
    print(f"top accounts: {ranking.entries[:3]}")
    if not ranking.entries or ranking.entries[0][0] != args.account:
        failures.append(f"top account is not {args.account!r}")
    if args.strict_counts:
        if ranking.entries[0][1] != 25:
            failures.append(f"top account count {ranking.entries[0][1]} != 25")
        if len(ranking.entries) < 2 or ranking.entries[1][1] != 3:
            failures.append("runner-up count != 3")

    geo = geo_counts(corpus, taxonomy, window)
    if geo.counts:
        argmax = max(geo.counts, key=lambda name: geo.counts[name])
        print(f"busiest neighborhood: {argmax} ({geo.counts[argmax]} posts)")
        if argmax != args.neighborhood:
            failures.append(f"argmax neighborhood {argmax!r} != {args.neighborhood!r}")
    else:
        failures.append("no located messages in window")

    terms, _ = term_frequencies(messages, window, 8, 20, load_stopwords())
    present = set()
    for box in terms.boxes:
        present.update(box.freqs)
    for term in args.terms.split(","):
        if term not in present:
            failures.append(f"term {term!r} missing from the terms-band top-k")

    graph = build_graph(messages)
    if graph.nodes:
        hub, degree = top_nodes(graph, 1)[0]
        print(f"highest weighted degree: {hub} ({degree})")
        if hub != args.account:
            failures.append(f"max-degree node {hub!r} != {args.account!r}")
    else:
        failures.append("mention graph is empty")

    if failures:
        for failure in failures:
            print(f"FAIL: {failure}", file=sys.stderr)
        return 1
    print("all scenario checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
