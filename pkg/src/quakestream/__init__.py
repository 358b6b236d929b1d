"""Windowed social-media analytics engine for earthquake situational awareness.

Ingests a timestamped message CSV, classifies messages against a two-level
event/resource keyword taxonomy, and serves windowed aggregations (stacked
series, WordStream layouts, neighborhood counts, mention graphs, account
rankings) to a linked-view dashboard over a stateless HTTP API.
"""

from .aggregate import (
    AccountRanking,
    GeoCounts,
    SeriesBin,
    StackedSeries,
    account_ranking,
    clamp_window,
    geo_counts,
    stacked_series,
)
from .corpus import (
    Corpus,
    CorpusError,
    Message,
    ParseError,
    TimeWindow,
    filter_window,
    load_corpus,
    load_corpus_path,
    message_to_csv_line,
    parse_csv_line,
)
from .network import MentionGraph, NodeStats, build_graph, extract_mentions, top_nodes
from .service import Engine, QueryError, create_app, evaluate_query, load_engine
from .taxonomy import (
    UNCLASSIFIED,
    Label,
    LabelSet,
    Taxonomy,
    TaxonomyError,
    classify_message,
    default_taxonomy,
    load_taxonomy,
    load_taxonomy_path,
    tokenize,
)
from .wordstream import (
    Band,
    FrequencyBox,
    FrequencyTable,
    StreamLayout,
    WordPlacement,
    layout_stream,
    load_stopwords,
    term_frequencies,
    term_trace,
)

__version__ = "0.1.0"
