"""Message corpus: CSV ingestion, immutable storage, time-window filtering.

The corpus is loaded once from a ``time,location,account,message`` CSV and
is immutable afterwards; every downstream query starts by slicing it with a
half-open :class:`TimeWindow`. Messages are kept sorted by
``(timestamp, id)`` so window queries are a binary search plus a contiguous
slice.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_left
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from functools import cached_property
from pathlib import Path
from typing import IO, Union

CSV_HEADER = ("time", "location", "account", "message")
TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"

MALFORMED_TIMESTAMP = "malformed_timestamp"
WRONG_FIELD_COUNT = "wrong_field_count"


class CorpusError(ValueError):
    """Fatal ingest failure: bad/missing header or zero valid records."""


class ParseError(ValueError):
    """One malformed CSV record. Collected by the loader, never raised by it."""

    def __init__(self, kind: str, line_number: int, detail: str):
        super().__init__(f"line {line_number}: {detail}")
        self.kind = kind
        self.line_number = line_number
        self.detail = detail


@dataclass(frozen=True)
class Message:
    """One social-media post. ``id`` is assigned at ingest, monotone in file order."""

    id: int
    timestamp: datetime
    location: str
    account: str
    content: str


@dataclass(frozen=True)
class TimeWindow:
    """Half-open interval [start, end); start must precede end."""

    start: datetime
    end: datetime

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ValueError(f"window start {self.start} must precede end {self.end}")

    @property
    def duration(self) -> timedelta:
        return self.end - self.start


@dataclass(frozen=True)
class Corpus:
    """Immutable, time-sorted message collection with its time extent."""

    messages: tuple[Message, ...]
    time_extent: tuple[datetime, datetime]

    @classmethod
    def from_messages(cls, messages: list[Message]) -> "Corpus":
        if not messages:
            raise CorpusError("corpus must contain at least one message")
        ordered = tuple(sorted(messages, key=lambda m: (m.timestamp, m.id)))
        return cls(ordered, (ordered[0].timestamp, ordered[-1].timestamp))

    @cached_property
    def _timestamps(self) -> list[datetime]:
        # Sorted key column backing the bisect-based window filter.
        return [m.timestamp for m in self.messages]

    def __len__(self) -> int:
        return len(self.messages)


def _message_from_fields(fields: list[str], line_number: int) -> Union[Message, ParseError]:
    if len(fields) != 4:
        return ParseError(
            WRONG_FIELD_COUNT, line_number, f"expected 4 fields, got {len(fields)}"
        )
    raw_time, location, account, content = fields
    try:
        timestamp = datetime.strptime(raw_time.strip(), TIMESTAMP_FORMAT).replace(
            tzinfo=timezone.utc
        )
    except ValueError:
        return ParseError(
            MALFORMED_TIMESTAMP, line_number, f"cannot parse timestamp {raw_time!r}"
        )
    return Message(
        id=line_number,
        timestamp=timestamp,
        location=location.strip(),
        account=account.strip(),
        content=content,
    )


def parse_csv_line(line: str, line_number: int) -> Union[Message, ParseError]:
    """Parse one CSV record into a Message.

    Timestamps are ``YYYY-MM-DD hh:mm:ss`` interpreted as UTC. Location and
    account are trimmed of surrounding whitespace; content is kept verbatim
    after CSV unquoting. The message id is the given line number.
    """
    fields = next(csv.reader([line]), [])
    return _message_from_fields(fields, line_number)


def message_to_csv_line(message: Message) -> str:
    """Serialize a Message back to its CSV record form (round-trips modulo id)."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="").writerow(
        [
            message.timestamp.strftime(TIMESTAMP_FORMAT),
            message.location,
            message.account,
            message.content,
        ]
    )
    return buffer.getvalue()


def load_corpus(source: Union[IO[bytes], IO[str]]) -> tuple[Corpus, int]:
    """Load a corpus from a CSV stream.

    Malformed records are skipped and counted, not fatal; a missing header
    or zero valid records raises :class:`CorpusError`. Returns the corpus
    (sorted by timestamp, ties by id) and the skipped-record count.
    """
    if isinstance(source, io.TextIOBase):
        text = source
    elif hasattr(source, "read") and isinstance(source.read(0), bytes):
        text = io.TextIOWrapper(source, encoding="utf-8", newline="")
    else:
        text = source  # already a text stream (StringIO etc.)

    reader = csv.reader(text)
    header = next(reader, None)
    if header is None:
        raise CorpusError("empty input: missing CSV header")
    normalized = tuple(h.strip().lstrip("﻿") for h in header)
    if normalized != CSV_HEADER:
        raise CorpusError(
            f"bad CSV header {header!r}, expected {','.join(CSV_HEADER)}"
        )

    messages: list[Message] = []
    skipped = 0
    for line_number, fields in enumerate(reader, start=2):
        if not fields:
            continue  # blank line
        result = _message_from_fields(fields, line_number)
        if isinstance(result, ParseError):
            skipped += 1
        else:
            messages.append(result)

    if not messages:
        raise CorpusError("no valid records after header")
    return Corpus.from_messages(messages), skipped


def load_corpus_path(path: Union[str, Path]) -> tuple[Corpus, int]:
    with open(path, "rb") as handle:
        return load_corpus(handle)


def filter_window(corpus: Corpus, window: TimeWindow) -> list[Message]:
    """Messages with ``start <= timestamp < end``, in corpus order."""
    timestamps = corpus._timestamps
    lo = bisect_left(timestamps, window.start)
    hi = bisect_left(timestamps, window.end)
    return list(corpus.messages[lo:hi])
