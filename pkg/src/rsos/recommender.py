"""Outfit ranking: size fit, hard filters, and mined-pattern support.

The pipeline filters the catalog by gender, stock, price, and category,
size-matches the shopper against the garment class's sizing table (weighted
L1 distance), scores each survivor by the latest-period support of the
itemset linking the shopper's attributes to the outfit (climbing to the
cheapest frequent generalization when the exact itemset is infrequent), and
ranks by pattern score, then fit, then outfit id.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import ParseError
from .higen import Relation, extract_higens, minimal_frequent_generalizations
from .mining import MinerConfig
from .taxonomy import Item, Itemset, Taxonomy, render_itemset
from .transactions import PeriodSequence, support
from .vision.measure import BodyMeasurements

# Measurement fields each garment class is fitted on.
CLASS_FIELDS: dict[str, tuple[str, ...]] = {
    "jeans-legging": ("waist", "hips", "calf", "ankle", "outside_leg"),
    "top-kurta-onepiece": (
        "bust",
        "waist",
        "hips",
        "back_width",
        "front_chest",
        "shoulder",
        "sleeve",
        "wrist",
        "nape_to_waist",
        "front_shoulder_to_waist",
    ),
}

CATEGORIES = ("traditional", "western", "functional", "daytime", "night")

OUTFIT_ATTRIBUTE = "Outfit"
BUDGET_ATTRIBUTE = "Budget"
PROFESSION_ATTRIBUTE = "Profession"


class MissingMeasurementsError(ValueError):
    """Raised when a fit query lacks fields the garment class requires."""

    def __init__(self, fields: list[str]):
        self.fields = list(fields)
        super().__init__(f"missing measurement(s): {', '.join(self.fields)}")


@dataclass(frozen=True)
class SizingRecord:
    """One size row of a class's sizing table (values >= 0, see Table 5's
    sleeveless row)."""

    garment_class: str
    size_label: str
    measurements: dict[str, float]

    def __post_init__(self):
        required = CLASS_FIELDS.get(self.garment_class)
        if required is None:
            raise ValueError(f"unknown garment class {self.garment_class!r}")
        missing = [f for f in required if f not in self.measurements]
        if missing:
            raise ValueError(f"record {self.size_label!r} missing {missing}")
        for name, v in self.measurements.items():
            if v < 0:
                raise ValueError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class CatalogEntry:
    outfit_id: str
    name: str
    outfit_value: str
    garment_class: str
    category: str
    gender: str
    price: float
    available_sizes: tuple[str, ...]
    in_stock: bool

    def __post_init__(self):
        if self.price <= 0:
            raise ValueError(f"{self.outfit_id}: price must be > 0")
        if self.category not in CATEGORIES:
            raise ValueError(f"{self.outfit_id}: unknown category {self.category!r}")
        if self.garment_class not in CLASS_FIELDS:
            raise ValueError(f"{self.outfit_id}: unknown garment class {self.garment_class!r}")
        if self.in_stock and not self.available_sizes:
            raise ValueError(f"{self.outfit_id}: in stock but no sizes")


@dataclass(frozen=True)
class RecommendationRequest:
    measurements: BodyMeasurements
    gender: str
    profession: str
    budget: float
    category: str | None = None
    top_k: int = 10

    def __post_init__(self):
        if not self.gender:
            raise ValueError("gender is required")
        if self.budget <= 0:
            raise ValueError("budget must be > 0")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.category is not None and self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")


@dataclass(frozen=True)
class Recommendation:
    entry: CatalogEntry
    size: str
    fit_distance: float
    pattern_score: int
    matched_itemset: Itemset
    trend: Relation | None

    @property
    def trend_label(self) -> str:
        return self.trend.value if self.trend else "NONE"


# -- loading ------------------------------------------------------------------


def _read_rows(source: str, expected_header: list[str], what: str):
    rows = list(csv.reader(io.StringIO(source)))
    rows = [(i, r) for i, r in enumerate(rows, start=1) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError(f"empty {what} file")
    lineno, header = rows[0]
    if [c.strip() for c in header] != expected_header:
        raise ParseError(
            f"expected header {','.join(expected_header)!r}", line=lineno
        )
    if len(rows) == 1:
        raise ParseError(f"{what} file has a header but no rows")
    for lineno, row in rows[1:]:
        cells = [c.strip() for c in row]
        if len(cells) != len(expected_header):
            raise ParseError(
                f"expected {len(expected_header)} columns, got {len(cells)}",
                line=lineno,
            )
        yield lineno, dict(zip(expected_header, cells))


def load_sizing(source: str, garment_class: str) -> list[SizingRecord]:
    """Parse a sizing CSV: header ``name,<field>,...`` per the class."""
    fields = CLASS_FIELDS.get(garment_class)
    if fields is None:
        raise ValueError(f"unknown garment class {garment_class!r}")
    records = []
    for lineno, row in _read_rows(source, ["name", *fields], "sizing"):
        try:
            measurements = {f: float(row[f]) for f in fields}
        except ValueError:
            raise ParseError("non-numeric measurement", line=lineno) from None
        try:
            records.append(SizingRecord(garment_class, row["name"], measurements))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return records


CATALOG_HEADER = [
    "outfit_id",
    "name",
    "outfit_value",
    "garment_class",
    "category",
    "gender",
    "price",
    "available_sizes",
    "in_stock",
]


def load_catalog(source: str) -> list[CatalogEntry]:
    entries = []
    seen = set()
    for lineno, row in _read_rows(source, CATALOG_HEADER, "catalog"):
        if row["outfit_id"] in seen:
            raise ParseError(f"duplicate outfit_id {row['outfit_id']!r}", line=lineno)
        seen.add(row["outfit_id"])
        if row["in_stock"].lower() not in ("true", "false"):
            raise ParseError("in_stock must be true or false", line=lineno)
        try:
            entries.append(
                CatalogEntry(
                    outfit_id=row["outfit_id"],
                    name=row["name"],
                    outfit_value=row["outfit_value"],
                    garment_class=row["garment_class"],
                    category=row["category"],
                    gender=row["gender"],
                    price=float(row["price"]),
                    available_sizes=tuple(
                        s for s in row["available_sizes"].split("|") if s
                    ),
                    in_stock=row["in_stock"].lower() == "true",
                )
            )
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return entries


# -- size matching ------------------------------------------------------------


def match_size(
    m: BodyMeasurements,
    records: list[SizingRecord],
    weights: dict[str, float] | None = None,
) -> list[tuple[SizingRecord, float]]:
    """Rank records by weighted L1 distance, ties broken on size label.

    Absent weights default to 1. Raises MissingMeasurementsError listing the
    class fields the query does not cover.
    """
    if not records:
        return []
    classes = {r.garment_class for r in records}
    if len(classes) > 1:
        raise ValueError(f"records mix garment classes: {sorted(classes)}")
    fields = CLASS_FIELDS[records[0].garment_class]
    missing = [f for f in fields if getattr(m, f) is None]
    if missing:
        raise MissingMeasurementsError(missing)
    weights = weights or {}
    for name, w in weights.items():
        if w < 0:
            raise ValueError(f"negative weight for {name}")
    ranked = [
        (
            r,
            sum(
                weights.get(f, 1.0) * abs(getattr(m, f) - r.measurements[f])
                for f in fields
            ),
        )
        for r in records
    ]
    ranked.sort(key=lambda pair: (pair[1], pair[0].size_label))
    return ranked


# -- pattern scoring ------------------------------------------------------------


@dataclass(frozen=True)
class PatternScore:
    pattern_score: int
    matched_itemset: Itemset
    trend: Relation | None


def map_budget_item(
    tax: Taxonomy, budget: float, attribute: str = BUDGET_ATTRIBUTE
) -> Item | None:
    """Map a numeric budget onto the budget attribute.

    An exact numeric leaf wins; otherwise the lowest-level band whose
    descendant leaves bracket the amount; None when nothing fits.
    """

    def as_number(value: str) -> float | None:
        try:
            return float(value)
        except ValueError:
            return None

    leaves = tax.leaves(attribute) if attribute in tax.attributes() else []
    for leaf in leaves:
        n = as_number(leaf)
        if n is not None and n == budget:
            return tax.item(attribute, leaf)

    candidates = []
    for value in tax.values(attribute) if attribute in tax.attributes() else []:
        if not tax.is_generalized(attribute, value):
            continue
        nums = [
            as_number(leaf)
            for leaf in leaves
            if tax.is_descendant_or_self(Item(attribute, leaf), Item(attribute, value))
        ]
        nums = [n for n in nums if n is not None]
        if nums and min(nums) <= budget <= max(nums):
            candidates.append((tax.level(attribute, value), value))
    if not candidates:
        return None
    _, best = min(candidates)
    return tax.item(attribute, best)


def _as_item(tax: Taxonomy, attribute: str, value: str) -> Item:
    # Unknown values (absent from the data and taxonomy) are treated as flat
    # leaves: they simply match nothing and score 0.
    if tax.is_known(attribute, value):
        return tax.item(attribute, value)
    return Item(attribute, value)


def score_by_patterns(
    request_attrs: Itemset,
    outfit_value: str,
    periods: PeriodSequence,
    tax: Taxonomy,
    min_sup: int,
    outfit_attribute: str = OUTFIT_ATTRIBUTE,
) -> PatternScore:
    """Support of the shopper-to-outfit itemset in the latest period.

    If the exact itemset is infrequent there, its cheapest frequent
    generalization is used instead (lexicographic first among ties). The
    trend is the final relation of a HIGEN ending in the matched itemset,
    None when no HIGEN covers it or nothing frequent exists.
    """
    target = request_attrs.union([_as_item(tax, outfit_attribute, outfit_value)])
    latest = periods.latest
    sup = support(target, latest, tax)
    if sup >= min_sup:
        matched = target
    else:
        gens = minimal_frequent_generalizations(target, latest, tax, min_sup)
        if not gens:
            return PatternScore(0, target, None)
        matched, sup = gens[0]

    trend = None
    if len(periods) >= 2:
        cfg = MinerConfig(min_sup=min_sup, attributes=matched.attributes())
        for h in extract_higens(periods, tax, cfg):
            if h.nodes[-1].itemset == matched:
                trend = h.relations[-1]
                break
    return PatternScore(sup, matched, trend)


# -- end-to-end ranking ---------------------------------------------------------


def build_request_attrs(
    req: RecommendationRequest,
    tax: Taxonomy,
    cfg: MinerConfig,
    budget_attribute: str = BUDGET_ATTRIBUTE,
    profession_attribute: str = PROFESSION_ATTRIBUTE,
) -> Itemset:
    """Shopper-side items, limited to the attributes the miner config scores."""
    items = []
    if budget_attribute in cfg.attributes:
        budget_item = map_budget_item(tax, req.budget, budget_attribute)
        if budget_item is not None:
            items.append(budget_item)
    if profession_attribute in cfg.attributes and req.profession:
        items.append(_as_item(tax, profession_attribute, req.profession))
    return Itemset(items)


def recommend(
    req: RecommendationRequest,
    catalog: list[CatalogEntry],
    sizing: dict[str, list[SizingRecord]],
    periods: PeriodSequence,
    tax: Taxonomy,
    cfg: MinerConfig,
    weights: dict[str, float] | None = None,
    size_fallback: bool = False,
    outfit_attribute: str = OUTFIT_ATTRIBUTE,
) -> list[Recommendation]:
    """Filter, fit, score, and rank the catalog for one request.

    Hard filters: gender, stock, price <= budget, category when given. The
    best-fitting size must be stocked or the entry is dropped (with
    ``size_fallback`` the best stocked size is taken instead).
    """
    attrs = build_request_attrs(req, tax, cfg)
    out = []
    for entry in catalog:
        if entry.gender.casefold() != req.gender.casefold():
            continue
        if not entry.in_stock:
            continue
        if entry.price > req.budget:
            continue
        if req.category and entry.category != req.category:
            continue
        ranked = match_size(req.measurements, sizing.get(entry.garment_class, []), weights)
        if not ranked:
            continue
        best, fit = ranked[0]
        if best.size_label not in entry.available_sizes:
            if not size_fallback:
                continue
            stocked = [
                (r, d) for r, d in ranked if r.size_label in entry.available_sizes
            ]
            if not stocked:
                continue
            best, fit = stocked[0]
        score = score_by_patterns(
            attrs, entry.outfit_value, periods, tax, cfg.min_sup, outfit_attribute
        )
        out.append(
            Recommendation(
                entry=entry,
                size=best.size_label,
                fit_distance=fit,
                pattern_score=score.pattern_score,
                matched_itemset=score.matched_itemset,
                trend=score.trend,
            )
        )
    out.sort(key=lambda r: (-r.pattern_score, r.fit_distance, r.entry.outfit_id))
    return out[: req.top_k]


def recommendation_line(rank: int, rec: Recommendation) -> str:
    return (
        f"{rank}. {rec.entry.name} (id={rec.entry.outfit_id}) size={rec.size} "
        f"price={rec.entry.price:g} fit={rec.fit_distance:g} "
        f"score={rec.pattern_score} trend={rec.trend_label} "
        f"matched={render_itemset(rec.matched_itemset, descending=True)}"
    )
