"""Outfit recommendation engine.

Mines taxonomy-aware frequent itemsets and their cross-period histories from
purchase logs, estimates body measurements from grayscale silhouettes with
integral-image/Haar kernels, and ranks catalog outfits by size fit, budget,
and mined pattern support.
"""

from .taxonomy import Item, Itemset, Taxonomy, load_taxonomy, render_itemset
from .transactions import (
    PeriodSequence,
    TimePeriodDataset,
    Transaction,
    is_frequent,
    load_periods,
    relative_support,
    support,
)
from .mining import FrequentItemset, MinerConfig, enumerate_candidates, mine_frequent
from .higen import (
    Higen,
    HigenNode,
    Relation,
    extract_higens,
    minimal_frequent_generalizations,
    render_higen,
)

__version__ = "0.1.0"

__all__ = [
    "Item",
    "Itemset",
    "Taxonomy",
    "load_taxonomy",
    "render_itemset",
    "Transaction",
    "TimePeriodDataset",
    "PeriodSequence",
    "load_periods",
    "support",
    "relative_support",
    "is_frequent",
    "MinerConfig",
    "FrequentItemset",
    "enumerate_candidates",
    "mine_frequent",
    "Higen",
    "HigenNode",
    "Relation",
    "extract_higens",
    "minimal_frequent_generalizations",
    "render_higen",
    "__version__",
]
