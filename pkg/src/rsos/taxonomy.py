"""Items, itemsets, and per-attribute generalization hierarchies.

An attribute's hierarchy is a forest: each value has at most one parent,
leaves sit at level 0, and a parent sits one level above its highest child.
Attributes with no edges are "flat": every registered value is simultaneously
a leaf and a root. Taxonomies are immutable once built (leaf registration
happens during loading) and all queries are read-only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import ParseError


class TaxonomyError(ValueError):
    """Structurally invalid taxonomy or a lookup of an unknown value."""


@dataclass(frozen=True, order=True)
class Item:
    """One attribute=value pair, e.g. Budget=5800.

    ``is_generalized`` is true iff the value is an internal (non-leaf) node
    of the attribute's hierarchy; it does not participate in equality, so an
    item compares the same however it was constructed.
    """

    attribute: str
    value: str
    is_generalized: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        return f"{self.attribute}={self.value}"


class Itemset:
    """An immutable set of items with at most one item per attribute.

    Items are kept in canonical order (attribute name, then value), which is
    also the order used for lexicographic comparison between itemsets.
    """

    __slots__ = ("items",)

    items: tuple[Item, ...]

    def __init__(self, items: Iterable[Item]):
        ordered = tuple(sorted(items))
        seen: set[str] = set()
        for it in ordered:
            if it.attribute in seen:
                raise ValueError(f"multiple items for attribute {it.attribute!r}")
            seen.add(it.attribute)
        object.__setattr__(self, "items", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("Itemset is immutable")

    @property
    def key(self) -> tuple[tuple[str, str], ...]:
        """Canonical sort key: ((attribute, value), ...)."""
        return tuple((i.attribute, i.value) for i in self.items)

    def attributes(self) -> tuple[str, ...]:
        return tuple(i.attribute for i in self.items)

    def get(self, attribute: str) -> Item | None:
        for i in self.items:
            if i.attribute == attribute:
                return i
        return None

    def union(self, other: "Itemset | Iterable[Item]") -> "Itemset":
        extra = other.items if isinstance(other, Itemset) else tuple(other)
        return Itemset(self.items + extra)

    def __iter__(self) -> Iterator[Item]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, item: Item) -> bool:
        return item in self.items

    def __eq__(self, other) -> bool:
        return isinstance(other, Itemset) and self.key == other.key

    def __lt__(self, other: "Itemset") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Itemset({render_itemset(self)})"


def render_itemset(itemset: Itemset, descending: bool = False) -> str:
    """Render ``{value, value}`` with items sorted by attribute name.

    ``descending=True`` reverses the attribute order; that is the layout the
    HIGEN report uses (outfit before budget), while pattern-report lines use
    the default ascending order.
    """
    items = itemset.items if not descending else tuple(reversed(itemset.items))
    return "{" + ", ".join(i.value for i in items) + "}"


class Taxonomy:
    """Per-attribute generalization forests plus the flat value domains.

    ``edges`` maps attribute -> {child value -> parent value}. Values never
    mentioned in edges but registered via ``register_leaves`` (normally the
    distinct values of a data column) are flat leaves at level 0.
    """

    def __init__(self, edges: Mapping[str, Mapping[str, str]] | None = None):
        self._parent: dict[str, dict[str, str]] = {
            attr: dict(chain) for attr, chain in (edges or {}).items()
        }
        self._children: dict[str, dict[str, list[str]]] = {}
        self._domain: dict[str, set[str]] = {}
        for attr, chain in self._parent.items():
            kids: dict[str, list[str]] = {}
            for child, parent in chain.items():
                kids.setdefault(parent, []).append(child)
            self._children[attr] = {p: sorted(cs) for p, cs in kids.items()}
        self._levels: dict[str, dict[str, int]] = {
            attr: self._compute_levels(attr) for attr in self._parent
        }

    def _compute_levels(self, attr: str) -> dict[str, int]:
        parent = self._parent[attr]
        children = self._children.get(attr, {})
        nodes = set(parent) | set(parent.values())
        levels: dict[str, int] = {}

        def level_of(value: str, trail: tuple[str, ...]) -> int:
            if value in trail:
                cycle = " -> ".join(trail[trail.index(value):] + (value,))
                raise TaxonomyError(f"cycle in {attr!r} taxonomy: {cycle}")
            if value in levels:
                return levels[value]
            kids = children.get(value)
            lvl = 0 if not kids else 1 + max(
                level_of(k, trail + (value,)) for k in kids
            )
            levels[value] = lvl
            return lvl

        for node in nodes:
            level_of(node, ())
        return levels

    # -- registration ------------------------------------------------------

    def register_leaves(self, attribute: str, values: Iterable[str]) -> None:
        """Register data-column values as leaves of ``attribute``.

        Called while a workspace is being loaded; a value that is an internal
        taxonomy node is rejected because transactions carry leaves only.
        """
        domain = self._domain.setdefault(attribute, set())
        for v in values:
            if self.is_generalized(attribute, v):
                raise TaxonomyError(
                    f"{attribute}={v!r} is a generalized value, not a leaf"
                )
            domain.add(v)

    # -- lookups -----------------------------------------------------------

    def attributes(self) -> tuple[str, ...]:
        return tuple(sorted(set(self._parent) | set(self._domain)))

    def edge_count(self) -> int:
        return sum(len(chain) for chain in self._parent.values())

    def is_known(self, attribute: str, value: str) -> bool:
        if value in self._domain.get(attribute, ()):
            return True
        levels = self._levels.get(attribute, {})
        return value in levels

    def is_generalized(self, attribute: str, value: str) -> bool:
        return value in self._children.get(attribute, {})

    def level(self, attribute: str, value: str) -> int:
        """Abstraction level; values outside the taxonomy count as flat
        leaves at level 0 (they can occur in scoring queries)."""
        return self._levels.get(attribute, {}).get(value, 0)

    def item(self, attribute: str, value: str) -> Item:
        """Build an Item with its generalization flag set from this taxonomy."""
        if not self.is_known(attribute, value):
            raise TaxonomyError(f"unknown value {attribute}={value!r}")
        return Item(attribute, value, self.is_generalized(attribute, value))

    def parent(self, item: Item) -> Item | None:
        """One-step generalization of ``item``; None for roots and flat values."""
        if not self.is_known(item.attribute, item.value):
            raise TaxonomyError(f"unknown value {item.attribute}={item.value!r}")
        up = self._parent.get(item.attribute, {}).get(item.value)
        return None if up is None else self.item(item.attribute, up)

    def ancestors(self, item: Item) -> list[Item]:
        """Strict ancestors, nearest first."""
        out = []
        cur = self.parent(item)
        while cur is not None:
            out.append(cur)
            cur = self.parent(cur)
        return out

    def is_descendant_or_self(self, leaf: Item, gen: Item) -> bool:
        """True iff ``gen`` is reachable from ``leaf`` by >= 0 parent steps."""
        if leaf.attribute != gen.attribute:
            raise ValueError(
                f"attribute mismatch: {leaf.attribute!r} vs {gen.attribute!r}"
            )
        value: str | None = leaf.value
        chain = self._parent.get(leaf.attribute, {})
        while value is not None:
            if value == gen.value:
                return True
            value = chain.get(value)
        return False

    # -- enumeration -------------------------------------------------------

    def leaves(self, attribute: str) -> list[str]:
        """All leaf values: taxonomy leaves plus the registered data domain."""
        levels = self._levels.get(attribute, {})
        vals = {v for v, lvl in levels.items() if lvl == 0}
        vals |= self._domain.get(attribute, set())
        return sorted(vals)

    def _min_leaf_under(self, attribute: str, value: str) -> str:
        kids = self._children.get(attribute, {}).get(value)
        if not kids:
            return value
        return min(self._min_leaf_under(attribute, k) for k in kids)

    def values(self, attribute: str) -> list[str]:
        """Every known value of ``attribute``, leaves first.

        Order: level ascending, then the smallest leaf the value covers,
        then the value itself — e.g. Fig-7-style budgets enumerate as
        2500, 2800, 5200, 5800, Medium, High.
        """
        vals = set(self._levels.get(attribute, {})) | self._domain.get(attribute, set())
        return sorted(
            vals,
            key=lambda v: (
                self.level(attribute, v),
                self._min_leaf_under(attribute, v),
                v,
            ),
        )

    def value_rank(self, attribute: str, value: str) -> tuple[int, str, str]:
        return (self.level(attribute, value), self._min_leaf_under(attribute, value), value)

    # -- itemset-level operations -------------------------------------------

    def validate_itemset(self, itemset: Itemset) -> None:
        """Check every value is known and every flag matches this taxonomy."""
        for it in itemset:
            if not self.is_known(it.attribute, it.value):
                raise TaxonomyError(f"unknown value {it.attribute}={it.value!r}")
            if it.is_generalized != self.is_generalized(it.attribute, it.value):
                raise TaxonomyError(
                    f"{it.attribute}={it.value!r}: is_generalized flag does not "
                    "match the taxonomy"
                )

    def generalization_distance(self, specific: Itemset, general: Itemset) -> int:
        """Total level distance between an itemset and a generalization of it."""
        return total_level(self, general) - total_level(self, specific)

    def generalizations_of(self, itemset: Itemset) -> list[Itemset]:
        """All itemsets reachable by replacing >= 1 item with a strict ancestor.

        Ordered by total level distance ascending, then lexicographically;
        the input itself is excluded.
        """
        options: list[list[tuple[int, Item]]] = []
        for it in itemset:
            base = self.level(it.attribute, it.value)
            ancestors = self.ancestors(it) if self.is_known(it.attribute, it.value) else []
            ups = [(0, it)] + [
                (self.level(a.attribute, a.value) - base, a) for a in ancestors
            ]
            options.append(ups)
        out: list[tuple[int, Itemset]] = []
        for combo in itertools.product(*options):
            dist = sum(d for d, _ in combo)
            if dist == 0:
                continue
            out.append((dist, Itemset(i for _, i in combo)))
        out.sort(key=lambda pair: (pair[0], pair[1].key))
        return [s for _, s in out]


def load_taxonomy(source: str, known_attributes: Iterable[str] | None = None) -> Taxonomy:
    """Parse taxonomy file content: header ``attribute,child,parent``, one
    edge per line, ``#`` starts a comment.

    ``known_attributes`` restricts which attributes may appear; an edge for
    any other attribute is a parse error carrying its line number.
    """
    allowed = set(known_attributes) if known_attributes is not None else None
    edges: dict[str, dict[str, str]] = {}
    header_seen = False
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if [c.strip() for c in line.split(",")] != ["attribute", "child", "parent"]:
                raise ParseError(
                    "expected header 'attribute,child,parent'", line=lineno
                )
            header_seen = True
            continue
        parts = [c.strip() for c in line.split(",")]
        if len(parts) != 3 or not all(parts):
            raise ParseError(f"expected 'attribute,child,parent', got {raw!r}", line=lineno)
        attr, child, parent = parts
        if allowed is not None and attr not in allowed:
            raise ParseError(f"unknown attribute {attr!r}", line=lineno)
        chain = edges.setdefault(attr, {})
        if child in chain:
            raise ParseError(f"duplicate parent edge for {attr}={child!r}", line=lineno)
        chain[child] = parent
    if not header_seen:
        raise ParseError("empty taxonomy file: header line required")
    return Taxonomy(edges)


def total_level(tax: Taxonomy, itemset: Itemset) -> int:
    """Sum of the items' levels: the itemset's total abstraction level."""
    return sum(tax.level(i.attribute, i.value) for i in itemset)
