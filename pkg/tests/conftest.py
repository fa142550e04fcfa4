import datetime as dt

import pytest

from rsos.taxonomy import Item, Itemset, Taxonomy
from rsos.transactions import PeriodSequence, TimePeriodDataset, Transaction

# Running-example data: October and November 2012 sales with the budget
# hierarchy 2500,2800 -> Medium and 5200,5800 -> High.

BUDGET_EDGES = {"2500": "Medium", "2800": "Medium", "5200": "High", "5800": "High"}

D1_ROWS = [
    ("2012-10-01", "Engineer", "2500", "T-shirt"),
    ("2012-10-06", "Businessman", "2800", "T-shirt"),
    ("2012-10-08", "Teacher", "5800", "Jacket"),
    ("2012-10-20", "Teacher", "5800", "Jacket"),
    ("2012-10-23", "Doctor", "5200", "Jacket"),
]

D2_ROWS = [
    ("2012-11-03", "Engineer", "2500", "T-shirt"),
    ("2012-11-09", "Engineer", "2500", "T-shirt"),
    ("2012-11-15", "Teacher", "5800", "Jacket"),
    ("2012-11-28", "Doctor", "5200", "Jacket"),
    ("2012-11-29", "Businessman", "2800", "Jacket"),
]

SCHEMA = ["Profession", "Budget", "Outfit"]


def iset(*pairs: tuple[str, str]) -> Itemset:
    return Itemset(Item(a, v) for a, v in pairs)


def tset(*pairs: tuple[str, str]) -> tuple[tuple[str, str], ...]:
    """Canonical key form used when comparing mined outputs."""
    return tuple(sorted(pairs))


def make_period(period_id: str, rows) -> TimePeriodDataset:
    txns = []
    for date, prof, budget, outfit in rows:
        txns.append(
            Transaction(
                dt.date.fromisoformat(date),
                {"Profession": prof, "Budget": budget, "Outfit": outfit},
            )
        )
    return TimePeriodDataset(period_id, tuple(txns))


@pytest.fixture()
def tax() -> Taxonomy:
    t = Taxonomy({"Budget": BUDGET_EDGES})
    t.register_leaves("Budget", [r[2] for r in D1_ROWS + D2_ROWS])
    t.register_leaves("Profession", [r[1] for r in D1_ROWS + D2_ROWS])
    t.register_leaves("Outfit", [r[3] for r in D1_ROWS + D2_ROWS])
    return t


@pytest.fixture()
def d1() -> TimePeriodDataset:
    return make_period("2012-10", D1_ROWS)


@pytest.fixture()
def d2() -> TimePeriodDataset:
    return make_period("2012-11", D2_ROWS)


@pytest.fixture()
def periods(d1, d2) -> PeriodSequence:
    return PeriodSequence((d1, d2))
