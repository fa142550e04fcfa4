"""Trace how itemset histories climb and descend the taxonomy across months.

An itemset that stays frequent keeps its own node in every period (~>); one
that drops below the threshold is represented by its cheapest frequent
generalization instead, rendering as a climb into the next month or a drop
back when the specific itemset recovers.
"""

from pathlib import Path

from rsos import MinerConfig, extract_higens, minimal_frequent_generalizations, render_higen
from rsos.taxonomy import Itemset
from rsos.workspace import load_workspace

workspace = Path(__file__).resolve().parent.parent / "data" / "example_workspace"
data = load_workspace(workspace)
tax, periods = data.tax, data.periods

# {Jacket, 5800} is frequent in October but not in November; climbing one
# taxonomy step finds {Jacket, High} still frequent there.
ref = Itemset([tax.item("Outfit", "Jacket"), tax.item("Budget", "5800")])
november = periods[1]
for gen, sup in minimal_frequent_generalizations(ref, november, tax, min_sup=2):
    print(f"cheapest frequent generalization in {november.period_id}: "
          f"{[i.value for i in gen]} (sup={sup})")

cfg = MinerConfig(min_sup=2, attributes=("Budget", "Outfit"))
higens = extract_higens(periods, tax, cfg)
print(f"\n{len(higens)} HIGENs from {periods[0].period_id} to {periods[-1].period_id}")
print("(reference itemsets are wrapped in *...*)\n")
for h in higens:
    print("  " + render_higen(h))

print("\nascii rendering for plain-text pipelines:")
for h in higens:
    print("  " + render_higen(h, ascii_arrows=True))
