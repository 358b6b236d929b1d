"""Shared fixtures: default taxonomy, scenario corpus, synthetic corpora."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone
from importlib import resources

import pytest

from quakestream.corpus import Corpus, Message, load_corpus
from quakestream.taxonomy import default_taxonomy

UTC = timezone.utc
T0 = datetime(2020, 4, 6, 0, 0, 0, tzinfo=UTC)

# Vocabulary mixing taxonomy keywords, stopwords, short tokens and noise so
# synthetic corpora exercise classification, filtering and frequency paths.
VOCAB = [
    "water", "food", "bridge", "bridges", "fire", "flood", "power", "shelter",
    "quake", "aftershock", "routes", "one-lane", "hospital", "evacuate",
    "morning", "coffee", "harbor", "market", "library", "garden", "station",
    "the", "and", "ok", "go", "so", "windows", "river", "bakery", "tunnel",
]

ACCOUNTS = [f"user{i:02d}" for i in range(18)] + ["dot-sthimark", "city-hall"]

LOCATIONS = [
    "Downtown", "Old Town", "Weston", "Easton", "Northwest", "Broadview",
    "Oak Willow", "Safe Town", "", "",
]


def make_corpus(seed: int, size: int, span_hours: int = 48) -> Corpus:
    rng = random.Random(seed)
    messages = []
    for i in range(size):
        words = rng.choices(VOCAB, k=rng.randint(0, 10))
        if rng.random() < 0.3:
            words.append("@" + rng.choice(ACCOUNTS))
        if rng.random() < 0.1:
            words.append("@" + rng.choice(ACCOUNTS) + ".")
        messages.append(
            Message(
                id=i + 2,
                timestamp=T0 + timedelta(seconds=rng.randrange(span_hours * 3600)),
                location=rng.choice(LOCATIONS),
                account=rng.choice(ACCOUNTS),
                content=" ".join(words),
            )
        )
    return Corpus.from_messages(messages)


@pytest.fixture(scope="session")
def taxonomy():
    return default_taxonomy()


@pytest.fixture(scope="session")
def scenario_corpus() -> Corpus:
    with resources.files("quakestream").joinpath("assets/scenario.csv").open("rb") as fh:
        corpus, skipped = load_corpus(fh)
    assert skipped == 0
    return corpus


@pytest.fixture(scope="session")
def scenario_path() -> str:
    return str(resources.files("quakestream").joinpath("assets/scenario.csv"))
