"""Two-level event/resource taxonomy and keyword classification.

A taxonomy is a small tree: categories ("event", "resource" in the shipped
config) each holding subcategories, each subcategory holding keyword
phrases of 1-3 tokens. A message receives the label of every subcategory
whose keyword phrase occurs as a contiguous token run in its content, so
one message can carry several labels (or none).

Keyword lists are configuration, not ground truth: the shipped
``assets/taxonomy.json`` can be replaced via CLI flag or service option.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Union

from .corpus import Message

# Token characters: letters, digits, apostrophe, '@', '#', '-'.
# [^\W_] is "word character except underscore", i.e. letters and digits.
_TOKEN_RE = re.compile(r"(?:[^\W_]|['@#-])+")

Label = tuple[str, str]
LabelSet = frozenset[Label]

#: Synthetic label under which label-free messages can be surfaced.
UNCLASSIFIED: Label = ("meta", "unclassified")


class TaxonomyError(ValueError):
    """Fatal taxonomy config problem, with a location diagnostic."""


@dataclass(frozen=True)
class Subcategory:
    name: str
    keywords: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class Category:
    name: str
    subcategories: tuple[Subcategory, ...]


@dataclass(frozen=True)
class Taxonomy:
    categories: tuple[Category, ...]

    def labels(self) -> list[Label]:
        """All (category, subcategory) labels in configuration order."""
        return [
            (category.name, sub.name)
            for category in self.categories
            for sub in category.subcategories
        ]

    def label_for(self, subcategory_name: str) -> Label | None:
        """Resolve a bare subcategory name (unique taxonomy-wide) to its label."""
        for category in self.categories:
            for sub in category.subcategories:
                if sub.name == subcategory_name:
                    return (category.name, sub.name)
        return None


def tokenize(content: str) -> list[str]:
    """Lowercased tokens of the content, in order.

    Splits on every character outside [letters, digits, ', @, #, -];
    empty tokens are dropped.
    """
    return _TOKEN_RE.findall(content.lower())


def _parse_subcategory(raw: object, category_name: str, seen: set[str]) -> Subcategory:
    where = f"category {category_name!r}"
    if not isinstance(raw, dict) or not isinstance(raw.get("name"), str):
        raise TaxonomyError(f"{where}: subcategory must be an object with a 'name' string")
    name = raw["name"]
    if name in seen:
        raise TaxonomyError(f"duplicate subcategory name {name!r} (in {where})")
    seen.add(name)
    raw_keywords = raw.get("keywords")
    if not isinstance(raw_keywords, list) or not raw_keywords:
        raise TaxonomyError(f"subcategory {name!r}: 'keywords' must be a nonempty list")
    keywords: list[tuple[str, ...]] = []
    for keyword in raw_keywords:
        if not isinstance(keyword, str):
            raise TaxonomyError(f"subcategory {name!r}: keyword {keyword!r} is not a string")
        tokens = tuple(tokenize(keyword))
        if not tokens:
            raise TaxonomyError(f"subcategory {name!r}: keyword {keyword!r} has no tokens")
        if len(tokens) > 3:
            raise TaxonomyError(
                f"subcategory {name!r}: keyword {keyword!r} exceeds 3 tokens"
            )
        keywords.append(tokens)
    return Subcategory(name=name, keywords=tuple(keywords))


def load_taxonomy(config: Union[IO[bytes], IO[str], bytes, str]) -> Taxonomy:
    """Load a taxonomy from its JSON config document.

    Schema: ``{"categories": [{"name": ..., "subcategories":
    [{"name": ..., "keywords": [...]}, ...]}, ...]}``. Keywords are
    lowercased and tokenized; schema violations, duplicate subcategory
    names and empty keyword lists are fatal.
    """
    if hasattr(config, "read"):
        config = config.read()  # type: ignore[union-attr]
    if isinstance(config, bytes):
        config = config.decode("utf-8")
    try:
        document = json.loads(config)
    except json.JSONDecodeError as exc:
        raise TaxonomyError(f"taxonomy config is not valid JSON: {exc}") from exc

    raw_categories = document.get("categories") if isinstance(document, dict) else None
    if not isinstance(raw_categories, list) or not raw_categories:
        raise TaxonomyError("taxonomy config must have a nonempty 'categories' list")

    seen_subcategories: set[str] = set()
    categories: list[Category] = []
    for raw_category in raw_categories:
        if not isinstance(raw_category, dict) or not isinstance(raw_category.get("name"), str):
            raise TaxonomyError("category must be an object with a 'name' string")
        name = raw_category["name"]
        raw_subs = raw_category.get("subcategories")
        if not isinstance(raw_subs, list) or not raw_subs:
            raise TaxonomyError(f"category {name!r}: 'subcategories' must be a nonempty list")
        subcategories = tuple(
            _parse_subcategory(raw, name, seen_subcategories) for raw in raw_subs
        )
        categories.append(Category(name=name, subcategories=subcategories))
    return Taxonomy(categories=tuple(categories))


def load_taxonomy_path(path: Union[str, Path]) -> Taxonomy:
    with open(path, "rb") as handle:
        return load_taxonomy(handle)


def default_taxonomy() -> Taxonomy:
    """The taxonomy shipped with the package."""
    data = resources.files("quakestream").joinpath("assets/taxonomy.json").read_bytes()
    return load_taxonomy(data)


def _contains_run(tokens: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    width = len(phrase)
    if width == 0 or width > len(tokens):
        return False
    first = phrase[0]
    for i in range(len(tokens) - width + 1):
        if tokens[i] == first and tokens[i : i + width] == phrase:
            return True
    return False


@lru_cache(maxsize=65536)
def _classify_tokens(tokens: tuple[str, ...], taxonomy: Taxonomy) -> LabelSet:
    labels: set[Label] = set()
    for category in taxonomy.categories:
        for sub in category.subcategories:
            if any(_contains_run(tokens, phrase) for phrase in sub.keywords):
                labels.add((category.name, sub.name))
    return frozenset(labels)


def classify_message(message: Message, taxonomy: Taxonomy) -> LabelSet:
    """Labels of every subcategory whose keyword phrase occurs contiguously
    in the tokenized content. Empty set if nothing matches."""
    return _classify_tokens(tuple(tokenize(message.content)), taxonomy)
