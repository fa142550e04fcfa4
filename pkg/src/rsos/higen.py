"""History-of-generalization patterns across consecutive time periods.

For each leaf-level reference itemset that is frequent in at least one
period, the extractor emits its per-period history: the itemset itself where
it stays frequent, otherwise its cheapest frequent generalization (minimal
total level distance). Adjacent nodes are annotated with the direction of
the abstraction change — climbed (GEN), dropped back (SPEC), or unchanged
(SAME).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .mining import MinerConfig, _count_supports, _grow, _leaf_singles
from .taxonomy import Itemset, Taxonomy, render_itemset, total_level
from .transactions import PeriodSequence, TimePeriodDataset, support


class Relation(enum.Enum):
    GEN = "GEN"
    SPEC = "SPEC"
    SAME = "SAME"


ARROWS = {Relation.GEN: "↗", Relation.SPEC: "↘", Relation.SAME: "~>"}
ASCII_ARROWS = {Relation.GEN: "/>", Relation.SPEC: "\\>", Relation.SAME: "~>"}


@dataclass(frozen=True)
class HigenNode:
    itemset: Itemset
    support: int
    period_id: str


@dataclass(frozen=True)
class Higen:
    reference: Itemset
    nodes: tuple[HigenNode, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self):
        if len(self.relations) != len(self.nodes) - 1:
            raise ValueError("need exactly one relation per adjacent node pair")

    def sort_key(self):
        return (
            len(self.reference),
            self.reference.key,
            tuple(n.itemset.key for n in self.nodes),
        )


def is_generalization_of(tax: Taxonomy, general: Itemset, specific: Itemset) -> bool:
    """True iff ``general`` covers ``specific`` itemwise (ancestor-or-self on
    every shared attribute, same attribute set)."""
    if general.attributes() != specific.attributes():
        return False
    return all(
        tax.is_descendant_or_self(s, g)
        for s, g in zip(specific.items, general.items)
    )


def relation_between(tax: Taxonomy, a: Itemset, b: Itemset) -> Relation:
    """Direction of the abstraction change from node ``a`` to node ``b``."""
    if a == b:
        return Relation.SAME
    if is_generalization_of(tax, b, a):
        return Relation.GEN
    if is_generalization_of(tax, a, b):
        return Relation.SPEC
    # Incomparable nodes can only appear in the >= 3-period extension (two
    # different climbs from one reference); classify by total level change.
    la, lb = total_level(tax, a), total_level(tax, b)
    if lb > la:
        return Relation.GEN
    if lb < la:
        return Relation.SPEC
    return Relation.SAME


def minimal_frequent_generalizations(
    ref: Itemset, dataset: TimePeriodDataset, tax: Taxonomy, min_sup: int
) -> list[tuple[Itemset, int]]:
    """Frequent strict generalizations of ``ref`` at the smallest total level
    distance; empty when even the roots stay infrequent. Ties are returned in
    lexicographic order."""
    best_distance: int | None = None
    out: list[tuple[Itemset, int]] = []
    for gen in tax.generalizations_of(ref):
        dist = tax.generalization_distance(ref, gen)
        if best_distance is not None and dist > best_distance:
            break
        sup = support(gen, dataset, tax)
        if sup >= min_sup:
            best_distance = dist
            out.append((gen, sup))
    return out


def _frequent_leaf_itemsets(
    dataset: TimePeriodDataset, tax: Taxonomy, cfg: MinerConfig
) -> dict[Itemset, int]:
    """Apriori restricted to leaf values only."""
    singles = _leaf_singles(tax, cfg.attributes)
    counts = _count_supports(singles, dataset, tax)
    frequent = [s for s in singles if counts[s] >= cfg.min_sup]
    found = {s: counts[s] for s in frequent}
    freq_singles = list(frequent)
    for _size in range(2, cfg.size_cap + 1):
        candidates = _grow(frequent, freq_singles)
        if not candidates:
            break
        level_counts = _count_supports(candidates, dataset, tax)
        frequent = [c for c in candidates if level_counts[c] >= cfg.min_sup]
        found.update({c: level_counts[c] for c in frequent})
        if not frequent:
            break
    return found


def extract_higens(
    periods: PeriodSequence, tax: Taxonomy, cfg: MinerConfig
) -> list[Higen]:
    """Extract all HIGENs over ``cfg.attributes``.

    References are the leaf-level itemsets frequent in at least one period.
    In a period where the reference is infrequent the node is one of its
    minimal frequent generalizations — one Higen per combination when ties
    exist — and a reference with some period offering no frequent
    generalization at all is dropped. Output order is normalized.
    """
    if len(periods) < 2:
        raise ValueError("HIGEN extraction needs at least 2 periods")

    per_period_frequent = [
        _frequent_leaf_itemsets(ds, tax, cfg) for ds in periods
    ]
    references = sorted(
        set().union(*[set(f) for f in per_period_frequent]),
        key=lambda s: (len(s), s.key),
    )

    out: list[Higen] = []
    for ref in references:
        choices: list[list[HigenNode]] = []
        for ds, freq in zip(periods, per_period_frequent):
            if ref in freq:
                choices.append([HigenNode(ref, freq[ref], ds.period_id)])
                continue
            gens = minimal_frequent_generalizations(ref, ds, tax, cfg.min_sup)
            if not gens:
                choices = []
                break
            choices.append(
                [HigenNode(gen, sup, ds.period_id) for gen, sup in gens]
            )
        if not choices:
            continue
        for combo in itertools.product(*choices):
            relations = tuple(
                relation_between(tax, a.itemset, b.itemset)
                for a, b in zip(combo, combo[1:])
            )
            out.append(Higen(ref, tuple(combo), relations))
    out.sort(key=Higen.sort_key)
    return out


def render_higen(
    h: Higen, ascii_arrows: bool = False, mark_reference: bool = True
) -> str:
    """One report line: ``{items}[sup=n]`` nodes joined by relation arrows.

    Items inside the braces are ordered by attribute name descending — the
    layout of the published example table ({Jacket, 5800}, not {5800,
    Jacket}). Occurrences of the reference itemset are wrapped in ``*...*``
    in lieu of boldface unless ``mark_reference`` is false.
    """
    arrows = ASCII_ARROWS if ascii_arrows else ARROWS
    parts: list[str] = []
    for i, node in enumerate(h.nodes):
        text = f"{render_itemset(node.itemset, descending=True)}[sup={node.support}]"
        if mark_reference and node.itemset == h.reference:
            text = f"*{text}*"
        if i:
            parts.append(f" {arrows[h.relations[i - 1]]} ")
        parts.append(text)
    return "".join(parts)
