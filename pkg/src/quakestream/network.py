"""Mention graph: message author -> mentioned accounts, weighted by count.

Edges accumulate one unit of weight per mentioning message; self-mentions
are dropped. Node importance is weighted degree (sum of incident edge
weights in both directions) and "clusters" are weakly connected
components, computed with union-find over the undirected view.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Message

# '@' followed by letters/digits/'-'/'_'/'.' (\w covers letters, digits,
# underscore). Overridable for platforms with different handle syntax.
DEFAULT_MENTION_PATTERN = re.compile(r"@([\w.\-]+)")


@dataclass(frozen=True)
class NodeStats:
    out_posts: int
    weighted_degree: int
    component_id: int


@dataclass(frozen=True)
class MentionGraph:
    nodes: dict[str, NodeStats]
    edges: dict[tuple[str, str], int]


def extract_mentions(
    content: str, pattern: re.Pattern[str] = DEFAULT_MENTION_PATTERN
) -> list[str]:
    """Mentioned handles without the '@', deduplicated, first occurrence first.

    Trailing dots are stripped so sentence-final mentions parse cleanly.
    """
    seen: set[str] = set()
    mentions: list[str] = []
    for match in pattern.finditer(content):
        handle = match.group(1).rstrip(".")
        if handle and handle not in seen:
            seen.add(handle)
            mentions.append(handle)
    return mentions


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self._parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:  # path compression
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        root_a, root_b = self.find(a), self.find(b)
        if root_a != root_b:
            self._parent[root_b] = root_a


def build_graph(
    messages: Sequence[Message],
    pattern: re.Pattern[str] = DEFAULT_MENTION_PATTERN,
) -> MentionGraph:
    """Build the mention graph over a windowed message collection.

    Nodes are accounts that appear on at least one edge (as author or as
    target); ``out_posts`` counts every message the account authored in the
    window, mentions or not.
    """
    edge_weights: Counter[tuple[str, str]] = Counter()
    for message in messages:
        for target in extract_mentions(message.content, pattern):
            if target != message.account:
                edge_weights[(message.account, target)] += 1

    accounts = sorted({endpoint for edge in edge_weights for endpoint in edge})
    authored: Counter[str] = Counter(m.account for m in messages)

    degree: Counter[str] = Counter()
    for (source, target), weight in edge_weights.items():
        degree[source] += weight
        degree[target] += weight

    components = _UnionFind(accounts)
    for source, target in edge_weights:
        components.union(source, target)
    component_ids: dict[str, int] = {}
    for account in accounts:  # ids in order of first appearance among sorted accounts
        root = components.find(account)
        if root not in component_ids:
            component_ids[root] = len(component_ids)

    nodes = {
        account: NodeStats(
            out_posts=authored[account],
            weighted_degree=degree[account],
            component_id=component_ids[components.find(account)],
        )
        for account in accounts
    }
    return MentionGraph(nodes=nodes, edges=dict(edge_weights))


def top_nodes(graph: MentionGraph, k: int) -> list[tuple[str, int]]:
    """Top-k accounts by weighted degree, ties broken lexicographically."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(
        ((account, stats.weighted_degree) for account, stats in graph.nodes.items()),
        key=lambda entry: (-entry[1], entry[0]),
    )
    return ranked[:k]
