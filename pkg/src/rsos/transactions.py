"""Time-partitioned transaction logs and taxonomy-aware support counting.

A transaction is one row of the purchase log: a date plus exactly one leaf
value per schema attribute. Transactions group into per-period datasets
(month, year, or day granularity) and support is counted absolutely, in
transactions, the way the running-example tables report it. Datasets are
immutable after loading and support queries are pure, so callers may fan
out across itemsets or periods freely.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping

from .errors import ParseError
from .taxonomy import Item, Itemset, Taxonomy

Granularity = Literal["month", "year", "day"]

GRANULARITIES: tuple[Granularity, ...] = ("month", "year", "day")


@dataclass(frozen=True)
class Transaction:
    """One purchase: a date and one leaf value per attribute."""

    date: dt.date
    values: Mapping[str, str]

    def leaf_item(self, attribute: str) -> Item | None:
        v = self.values.get(attribute)
        return None if v is None else Item(attribute, v)


@dataclass(frozen=True)
class TimePeriodDataset:
    """All transactions of one period, e.g. one month of sales."""

    period_id: str
    transactions: tuple[Transaction, ...]

    def __post_init__(self):
        if not self.transactions:
            raise ValueError(f"period {self.period_id!r} has no transactions")

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self.transactions)


@dataclass(frozen=True)
class PeriodSequence:
    """Consecutive periods in ascending order; HIGEN mining needs >= 2."""

    periods: tuple[TimePeriodDataset, ...]

    def __post_init__(self):
        ids = [p.period_id for p in self.periods]
        if sorted(ids) != ids or len(set(ids)) != len(ids):
            raise ValueError(f"period ids not strictly increasing: {ids}")

    def __len__(self) -> int:
        return len(self.periods)

    def __iter__(self) -> Iterator[TimePeriodDataset]:
        return iter(self.periods)

    def __getitem__(self, i: int) -> TimePeriodDataset:
        return self.periods[i]

    @property
    def latest(self) -> TimePeriodDataset:
        return self.periods[-1]


def period_key(date: dt.date, granularity: Granularity) -> str:
    if granularity == "month":
        return f"{date.year:04d}-{date.month:02d}"
    if granularity == "year":
        return f"{date.year:04d}"
    if granularity == "day":
        return date.isoformat()
    raise ValueError(f"unknown granularity {granularity!r}")


def next_period_key(key: str, granularity: Granularity) -> str:
    """Successor period id, used to reject gaps in a loaded sequence."""
    if granularity == "month":
        year, month = int(key[:4]), int(key[5:7])
        year, month = (year + 1, 1) if month == 12 else (year, month + 1)
        return f"{year:04d}-{month:02d}"
    if granularity == "year":
        return f"{int(key) + 1:04d}"
    if granularity == "day":
        return (dt.date.fromisoformat(key) + dt.timedelta(days=1)).isoformat()
    raise ValueError(f"unknown granularity {granularity!r}")


def load_periods(
    source: str,
    schema: list[str] | None = None,
    granularity: Granularity = "month",
) -> PeriodSequence:
    """Parse transaction CSV (header ``date,<attr1>,...``) into periods.

    Transactions are grouped by the period key of their date; input order is
    preserved within a period. A gap in the resulting sequence (a period with
    no transactions between populated ones) is rejected rather than silently
    producing a non-consecutive sequence.
    """
    if granularity not in GRANULARITIES:
        raise ValueError(f"granularity must be one of {GRANULARITIES}")
    rows = list(csv.reader(io.StringIO(source)))
    rows = [(i, row) for i, row in enumerate(rows, start=1) if any(c.strip() for c in row)]
    if not rows:
        raise ParseError("empty transaction file")

    header_line, header = rows[0]
    header = [c.strip() for c in header]
    if not header or header[0] != "date":
        raise ParseError("first column must be 'date'", line=header_line)
    attrs = header[1:]
    if len(set(attrs)) != len(attrs):
        raise ParseError("duplicate attribute column", line=header_line)
    if schema is not None:
        missing = [a for a in schema if a not in attrs]
        if missing:
            raise ParseError(f"missing attribute column(s): {missing}", line=header_line)
        extra = [a for a in attrs if a not in schema]
        if extra:
            raise ParseError(f"unexpected column(s): {extra}", line=header_line)
        attrs = list(schema)

    if len(rows) == 1:
        raise ParseError("transaction file has a header but no rows")

    groups: dict[str, list[Transaction]] = {}
    for lineno, row in rows[1:]:
        cells = [c.strip() for c in row]
        if len(cells) != len(header):
            raise ParseError(
                f"expected {len(header)} columns, got {len(cells)}", line=lineno
            )
        by_name = dict(zip(header, cells))
        try:
            date = dt.date.fromisoformat(by_name["date"])
        except ValueError:
            raise ParseError(f"malformed date {by_name['date']!r}", line=lineno) from None
        values = {a: by_name[a] for a in attrs}
        if any(not v for v in values.values()):
            raise ParseError("empty attribute value", line=lineno)
        groups.setdefault(period_key(date, granularity), []).append(
            Transaction(date, values)
        )

    keys = sorted(groups)
    for prev, cur in zip(keys, keys[1:]):
        expected = next_period_key(prev, granularity)
        if cur != expected:
            raise ParseError(
                f"period {expected!r} has no transactions (gap between {prev!r} and {cur!r})"
            )
    return PeriodSequence(
        tuple(TimePeriodDataset(k, tuple(groups[k])) for k in keys)
    )


def matches(transaction: Transaction, itemset: Itemset, tax: Taxonomy) -> bool:
    """True iff every item covers this transaction's value for its attribute."""
    for g in itemset:
        leaf = transaction.leaf_item(g.attribute)
        if leaf is None or not tax.is_descendant_or_self(leaf, g):
            return False
    return True


def support(itemset: Itemset, dataset: TimePeriodDataset, tax: Taxonomy) -> int:
    """Absolute support: transactions matched under taxonomy-aware matching.

    The empty itemset matches everything, so its support is the dataset size.
    """
    return sum(1 for t in dataset if matches(t, itemset, tax))


def relative_support(itemset: Itemset, dataset: TimePeriodDataset, tax: Taxonomy) -> float:
    """Derived view of ``support`` as a fraction of the dataset size."""
    return support(itemset, dataset, tax) / len(dataset)


def is_frequent(
    itemset: Itemset, dataset: TimePeriodDataset, tax: Taxonomy, min_sup: int
) -> bool:
    if min_sup < 1:
        raise ValueError("min_sup must be >= 1")
    return support(itemset, dataset, tax) >= min_sup
