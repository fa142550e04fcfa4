"""Frequent generalized-itemset mining within one time period.

Eager mode enumerates the full candidate space (leaf and generalized values)
level-wise with anti-monotone pruning and returns exactly the itemsets at or
above the support threshold. Lazy mode mines the leaf space only and
materializes generalizations just for the infrequent candidates it meets
(the negative border), trading completeness of the generalized tier for a
smaller result. Both agree on the frequent leaf-level itemsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .taxonomy import Item, Itemset, Taxonomy
from .transactions import TimePeriodDataset, matches

MODES = ("eager", "lazy")


@dataclass(frozen=True)
class MinerConfig:
    min_sup: int
    attributes: tuple[str, ...]
    max_itemset_size: int | None = None
    mode: str = "eager"

    def __post_init__(self):
        if self.min_sup < 1:
            raise ValueError("min_sup must be >= 1")
        if not self.attributes:
            raise ValueError("attributes must be non-empty")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("duplicate attribute")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise ValueError("max_itemset_size must be >= 1")
        object.__setattr__(self, "attributes", tuple(self.attributes))

    @property
    def size_cap(self) -> int:
        cap = len(self.attributes)
        if self.max_itemset_size is not None:
            cap = min(cap, self.max_itemset_size)
        return cap


@dataclass(frozen=True)
class FrequentItemset:
    itemset: Itemset
    support: int
    period_id: str

    def sort_key(self):
        return (len(self.itemset), self.itemset.key)


def pattern_line(fi: FrequentItemset) -> str:
    """Report line: ``{items}<TAB>sup=<n><TAB>period=<id>``, ascending attributes."""
    from .taxonomy import render_itemset

    return f"{render_itemset(fi.itemset)}\tsup={fi.support}\tperiod={fi.period_id}"


def enumerate_candidates(
    tax: Taxonomy, attributes: list[str] | tuple[str, ...], size: int
) -> list[Itemset]:
    """All valid itemsets of exactly ``size`` items over the attributes'
    leaf and generalized values, in deterministic order."""
    if size < 1:
        raise ValueError("size must be >= 1")
    attrs = sorted(set(attributes))
    if size > len(attrs):
        return []
    out: list[Itemset] = []
    for chosen in itertools.combinations(attrs, size):
        pools = [
            [tax.item(a, v) for v in tax.values(a)]
            for a in chosen
        ]
        for combo in itertools.product(*pools):
            out.append(Itemset(combo))
    out.sort(
        key=lambda s: tuple(tax.value_rank(i.attribute, i.value) for i in s.items)
    )
    return out


def _count_supports(
    candidates: list[Itemset], dataset: TimePeriodDataset, tax: Taxonomy
) -> dict[Itemset, int]:
    counts = dict.fromkeys(candidates, 0)
    for t in dataset:
        for cand in candidates:
            if matches(t, cand, tax):
                counts[cand] += 1
    return counts


def _grow(frequent_prev: list[Itemset], singles: list[Itemset]) -> list[Itemset]:
    """Apriori candidate generation: extend each frequent (k-1)-itemset with a
    frequent single item on a later attribute, then prune by the subset rule."""
    prev_set = set(frequent_prev)
    grown: list[Itemset] = []
    for base in frequent_prev:
        last_key = base.items[-1].attribute, base.items[-1].value
        for single in singles:
            item = single.items[0]
            if (item.attribute, item.value) <= last_key:
                continue
            if base.get(item.attribute) is not None:
                continue
            cand = base.union(single)
            if all(
                Itemset(sub) in prev_set
                for sub in itertools.combinations(cand.items, len(cand) - 1)
            ):
                grown.append(cand)
    return grown


def _mine_eager(
    dataset: TimePeriodDataset, tax: Taxonomy, cfg: MinerConfig
) -> dict[Itemset, int]:
    found: dict[Itemset, int] = {}
    singles = enumerate_candidates(tax, cfg.attributes, 1)
    counts = _count_supports(singles, dataset, tax)
    frequent = [s for s in singles if counts[s] >= cfg.min_sup]
    found.update({s: counts[s] for s in frequent})
    for _size in range(2, cfg.size_cap + 1):
        candidates = _grow(frequent, [s for s in singles if counts[s] >= cfg.min_sup])
        if not candidates:
            break
        level_counts = _count_supports(candidates, dataset, tax)
        frequent = [c for c in candidates if level_counts[c] >= cfg.min_sup]
        found.update({c: level_counts[c] for c in frequent})
        if not frequent:
            break
    return found


def _leaf_singles(tax: Taxonomy, attributes: tuple[str, ...]) -> list[Itemset]:
    return [
        Itemset([tax.item(a, v)])
        for a in sorted(set(attributes))
        for v in tax.leaves(a)
    ]


def _mine_lazy(
    dataset: TimePeriodDataset, tax: Taxonomy, cfg: MinerConfig
) -> dict[Itemset, int]:
    # Used only when a leaf candidate falls below threshold: climb to its
    # cheapest frequent generalizations instead of keeping the whole
    # generalized tier materialized.
    from .higen import minimal_frequent_generalizations

    found: dict[Itemset, int] = {}

    def climb(ref: Itemset) -> None:
        for gen, sup in minimal_frequent_generalizations(ref, dataset, tax, cfg.min_sup):
            found.setdefault(gen, sup)

    singles = _leaf_singles(tax, cfg.attributes)
    counts = _count_supports(singles, dataset, tax)
    frequent = [s for s in singles if counts[s] >= cfg.min_sup]
    found.update({s: counts[s] for s in frequent})
    for s in singles:
        if counts[s] < cfg.min_sup:
            climb(s)
    freq_singles = list(frequent)
    for _size in range(2, cfg.size_cap + 1):
        candidates = _grow(frequent, freq_singles)
        if not candidates:
            break
        level_counts = _count_supports(candidates, dataset, tax)
        frequent = []
        for c in candidates:
            if level_counts[c] >= cfg.min_sup:
                frequent.append(c)
                found[c] = level_counts[c]
            else:
                climb(c)
        if not frequent:
            break
    return found


def mine_frequent(
    dataset: TimePeriodDataset, tax: Taxonomy, cfg: MinerConfig
) -> list[FrequentItemset]:
    """Mine one period; deterministic order (size, then lexicographic)."""
    miner = _mine_eager if cfg.mode == "eager" else _mine_lazy
    found = miner(dataset, tax, cfg)
    out = [
        FrequentItemset(itemset, sup, dataset.period_id)
        for itemset, sup in found.items()
    ]
    out.sort(key=FrequentItemset.sort_key)
    return out
