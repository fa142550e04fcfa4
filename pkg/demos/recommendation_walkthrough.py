"""End-to-end recommendation: filters, size fit, pattern score, and what-ifs.

A shopper with the example measurements, a 2500 budget, and a taste for
western outfits gets the T-shirt: the jacket fails the budget filter and the
kurta the category filter, while mined patterns link {T-shirt, 2500} to the
latest month at support 2 with a specialization trend.
"""

import json
from pathlib import Path

from rsos.mining import MinerConfig
from rsos.recommender import (
    RecommendationRequest,
    map_budget_item,
    match_size,
    recommend,
    recommendation_line,
    score_by_patterns,
)
from rsos.taxonomy import Itemset
from rsos.vision.measure import BodyMeasurements
from rsos.workspace import load_workspace

workspace = Path(__file__).resolve().parent.parent / "data" / "example_workspace"
data = load_workspace(workspace)
cfg = MinerConfig(min_sup=2, attributes=("Budget", "Outfit"))

measurements = BodyMeasurements.from_dict(
    json.loads((workspace / "example_measurements.json").read_text())
)

# Size fit alone: weighted L1 against the jeans table.
jeans = data.sizing["jeans-legging"]
print("jeans fit ranking:")
for record, dist in match_size(measurements, jeans):
    print(f"  size {record.size_label}: distance {dist:g}")

# Pattern score alone: the budget maps onto the taxonomy, the outfit value
# joins it, and the latest period's support decides.
budget_item = map_budget_item(data.tax, 2500)
attrs = Itemset([budget_item] if budget_item else [])
for outfit in ("T-shirt", "Jacket"):
    ps = score_by_patterns(attrs, outfit, data.periods, data.tax, cfg.min_sup)
    matched = "{" + ", ".join(i.value for i in reversed(ps.matched_itemset.items)) + "}"
    trend = ps.trend.value if ps.trend else "NONE"
    print(f"pattern score for {outfit}: {ps.pattern_score} via {matched} (trend {trend})")

def ask(budget: float, category: str | None):
    req = RecommendationRequest(
        measurements=measurements,
        gender="female",
        profession="Engineer",
        budget=budget,
        category=category,
        top_k=5,
    )
    print(f"\nbudget={budget:g} category={category or 'any'}:")
    ranked = recommend(req, data.catalog, data.sizing, data.periods, data.tax, cfg)
    if not ranked:
        print("  nothing matches")
    for rank, rec in enumerate(ranked, start=1):
        print("  " + recommendation_line(rank, rec))

ask(2500, "western")   # the running example: only the T-shirt survives
ask(6000, None)        # raising the budget lets the jacket and kurta in
ask(1000, "western")   # nothing fits under a tiny budget
