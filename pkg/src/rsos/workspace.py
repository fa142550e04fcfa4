"""File-backed workspace: ingestion, validation, and mined-pattern snapshots.

A workspace is a directory holding the five input files below plus two
generated artifacts: ``manifest.json`` (digests + counts written by ingest)
and ``snapshot.json`` (mined patterns fingerprinted against the inputs that
produced them). A snapshot whose recorded digests no longer match the files
is stale and is refused by the mining and serving layers.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .higen import Higen, HigenNode, Relation, extract_higens, render_higen
from .mining import FrequentItemset, MinerConfig, mine_frequent, pattern_line
from .recommender import CatalogEntry, SizingRecord, load_catalog, load_sizing
from .taxonomy import Item, Itemset, Taxonomy, load_taxonomy
from .transactions import Granularity, PeriodSequence, load_periods

TAXONOMY_FILE = "taxonomy.csv"
TRANSACTIONS_FILE = "transactions.csv"
CATALOG_FILE = "catalog.csv"
SIZING_FILES = {
    "jeans-legging": "sizing_jeans_legging.csv",
    "top-kurta-onepiece": "sizing_top_kurta_onepiece.csv",
}
INPUT_FILES = (
    TAXONOMY_FILE,
    TRANSACTIONS_FILE,
    CATALOG_FILE,
    *SIZING_FILES.values(),
)
MANIFEST_FILE = "manifest.json"
SNAPSHOT_FILE = "snapshot.json"

ENV_WORKSPACE = "RSOS_WORKSPACE"


class WorkspaceError(ValueError):
    """Workspace-level validation failure (missing files, stale snapshot...)."""


def resolve_workspace(explicit: str | os.PathLike | None = None) -> Path:
    """Explicit path, else $RSOS_WORKSPACE, else the current directory."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_WORKSPACE)
    return Path(env) if env else Path.cwd()


@dataclass(frozen=True)
class WorkspaceData:
    """Everything loaded and cross-validated from the input files."""

    tax: Taxonomy
    periods: PeriodSequence
    schema: tuple[str, ...]
    catalog: list[CatalogEntry]
    sizing: dict[str, list[SizingRecord]]


def _read(root: Path, name: str) -> str:
    path = root / name
    if not path.exists():
        raise FileNotFoundError(f"missing workspace file {name!r} in {root}")
    return path.read_text(encoding="utf-8")


def file_digests(root: Path) -> dict[str, str]:
    out = {}
    for name in INPUT_FILES:
        path = root / name
        if not path.exists():
            raise FileNotFoundError(f"missing workspace file {name!r} in {root}")
        out[name] = hashlib.sha256(path.read_bytes()).hexdigest()
    return out


def load_workspace(root: Path, granularity: Granularity = "month") -> WorkspaceData:
    """Load and validate all five input files, cross-checking values."""

    def parse(name: str, fn, *args, **kwargs):
        try:
            return fn(_read(root, name), *args, **kwargs)
        except ParseError as exc:
            raise WorkspaceError(f"{name}: {exc}") from exc

    periods = parse(TRANSACTIONS_FILE, load_periods, granularity=granularity)
    schema = tuple(sorted(periods[0].transactions[0].values))
    tax = parse(TAXONOMY_FILE, load_taxonomy, known_attributes=schema)
    for attr in schema:
        for ds in periods:
            try:
                tax.register_leaves(attr, (t.values[attr] for t in ds))
            except ValueError as exc:
                raise WorkspaceError(f"{TRANSACTIONS_FILE}: {exc}") from exc
    catalog = parse(CATALOG_FILE, load_catalog)
    sizing = {
        cls: parse(name, load_sizing, cls) for cls, name in SIZING_FILES.items()
    }
    return WorkspaceData(tax, periods, schema, catalog, sizing)


@dataclass(frozen=True)
class IngestReport:
    transactions: int
    periods: int
    taxonomy_edges: int
    sizing_records: int
    catalog_entries: int
    snapshot_state: str  # "fresh" | "stale" | "none"

    def lines(self) -> list[str]:
        return [
            f"transactions: {self.transactions} ({self.periods} periods)",
            f"taxonomy: {self.taxonomy_edges} edges",
            f"sizing: {self.sizing_records} records",
            f"catalog: {self.catalog_entries} entries",
            f"snapshot: {self.snapshot_state}",
        ]


def ingest(root: Path, granularity: Granularity = "month") -> IngestReport:
    """Validate the workspace files and write the manifest.

    Nothing is written unless every file validates; re-ingesting identical
    files leaves an existing snapshot fresh (digests are content-based).
    """
    data = load_workspace(root, granularity)
    digests = file_digests(root)
    manifest = {"granularity": granularity, "files": digests}
    (root / MANIFEST_FILE).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    snapshot = load_snapshot(root)
    if snapshot is None:
        state = "none"
    else:
        state = "fresh" if snapshot.inputs == digests else "stale"
    return IngestReport(
        transactions=sum(len(p) for p in data.periods),
        periods=len(data.periods),
        taxonomy_edges=data.tax.edge_count(),
        sizing_records=sum(len(r) for r in data.sizing.values()),
        catalog_entries=len(data.catalog),
        snapshot_state=state,
    )


# -- snapshot -------------------------------------------------------------------


def _items_to_json(itemset: Itemset) -> list[list]:
    return [[i.attribute, i.value, i.is_generalized] for i in itemset]


def _items_from_json(data: list[list]) -> Itemset:
    return Itemset(Item(a, v, bool(g)) for a, v, g in data)


@dataclass(frozen=True)
class Snapshot:
    """Mined patterns plus the fingerprint of the inputs that produced them."""

    cfg: MinerConfig
    granularity: str
    inputs: dict[str, str]
    frequent: list[FrequentItemset]
    higens: list[Higen]

    def is_fresh(self, root: Path) -> bool:
        return self.inputs == file_digests(root)

    def pattern_lines(self) -> list[str]:
        return [pattern_line(fi) for fi in self.frequent]

    def higen_lines(self, ascii_arrows: bool = False) -> list[str]:
        return [render_higen(h, ascii_arrows=ascii_arrows) for h in self.higens]

    def to_json_dict(self) -> dict:
        return {
            "fingerprint": {
                "min_sup": self.cfg.min_sup,
                "attributes": list(self.cfg.attributes),
                "max_itemset_size": self.cfg.max_itemset_size,
                "mode": self.cfg.mode,
                "granularity": self.granularity,
                "inputs": self.inputs,
            },
            "frequent": [
                {
                    "items": _items_to_json(fi.itemset),
                    "support": fi.support,
                    "period": fi.period_id,
                }
                for fi in self.frequent
            ],
            "higens": [
                {
                    "reference": _items_to_json(h.reference),
                    "nodes": [
                        {
                            "items": _items_to_json(n.itemset),
                            "support": n.support,
                            "period": n.period_id,
                        }
                        for n in h.nodes
                    ],
                    "relations": [r.value for r in h.relations],
                }
                for h in self.higens
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Snapshot":
        fp = data["fingerprint"]
        cfg = MinerConfig(
            min_sup=fp["min_sup"],
            attributes=tuple(fp["attributes"]),
            max_itemset_size=fp.get("max_itemset_size"),
            mode=fp.get("mode", "eager"),
        )
        frequent = [
            FrequentItemset(_items_from_json(e["items"]), e["support"], e["period"])
            for e in data["frequent"]
        ]
        higens = [
            Higen(
                _items_from_json(e["reference"]),
                tuple(
                    HigenNode(_items_from_json(n["items"]), n["support"], n["period"])
                    for n in e["nodes"]
                ),
                tuple(Relation(r) for r in e["relations"]),
            )
            for e in data["higens"]
        ]
        return cls(cfg, fp["granularity"], dict(fp["inputs"]), frequent, higens)


def snapshot_mine(
    root: Path, cfg: MinerConfig, granularity: Granularity = "month"
) -> Snapshot:
    """Mine every period plus the cross-period HIGENs and persist the result.

    Requires a prior ingest; refuses to run when the files changed since
    (re-run ingest first). Identical inputs produce byte-identical snapshots.
    """
    manifest_path = root / MANIFEST_FILE
    if not manifest_path.exists():
        raise WorkspaceError(f"no manifest in {root}: run ingest first")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    digests = file_digests(root)
    if manifest.get("files") != digests:
        raise WorkspaceError(
            "workspace files changed since ingest: re-run ingest before mining"
        )
    data = load_workspace(root, granularity)
    missing = [a for a in cfg.attributes if a not in data.schema]
    if missing:
        raise WorkspaceError(f"attributes not in transaction schema: {missing}")
    frequent = [
        fi for ds in data.periods for fi in mine_frequent(ds, data.tax, cfg)
    ]
    higens = (
        extract_higens(data.periods, data.tax, cfg) if len(data.periods) >= 2 else []
    )
    snapshot = Snapshot(cfg, granularity, digests, frequent, higens)
    (root / SNAPSHOT_FILE).write_text(
        json.dumps(snapshot.to_json_dict(), indent=2, sort_keys=True, ensure_ascii=False)
        + "\n",
        encoding="utf-8",
    )
    return snapshot


def load_snapshot(root: Path) -> Snapshot | None:
    path = root / SNAPSHOT_FILE
    if not path.exists():
        return None
    try:
        return Snapshot.from_json_dict(json.loads(path.read_text(encoding="utf-8")))
    except (KeyError, ValueError) as exc:
        raise WorkspaceError(f"corrupt snapshot {path}: {exc}") from exc
