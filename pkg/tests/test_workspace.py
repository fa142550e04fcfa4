import json
import shutil
from pathlib import Path

import pytest

from rsos.mining import MinerConfig
from rsos.workspace import (
    SNAPSHOT_FILE,
    WorkspaceError,
    ingest,
    load_snapshot,
    load_workspace,
    snapshot_mine,
)

from test_mining import TABLE_D1, TABLE_D2

DATA = Path(__file__).resolve().parent.parent / "data" / "example_workspace"
GOLDEN = Path(__file__).resolve().parent / "golden"

CFG = MinerConfig(min_sup=2, attributes=("Budget", "Outfit"))


@pytest.fixture()
def ws(tmp_path) -> Path:
    root = tmp_path / "workspace"
    shutil.copytree(DATA, root)
    return root


class TestIngest:
    def test_report_counts(self, ws):
        report = ingest(ws)
        assert report.transactions == 10
        assert report.periods == 2
        assert report.taxonomy_edges == 4
        assert report.sizing_records == 10
        assert report.catalog_entries == 4
        assert report.snapshot_state == "none"
        assert (ws / "manifest.json").exists()

    def test_empty_transactions_abort(self, ws):
        (ws / "transactions.csv").write_text("")
        with pytest.raises(WorkspaceError, match="transactions.csv"):
            ingest(ws)
        assert not (ws / "manifest.json").exists()

    def test_generalized_value_in_data_rejected(self, ws):
        content = (ws / "transactions.csv").read_text()
        (ws / "transactions.csv").write_text(
            content + "2012-11-30,Doctor,Medium,Jacket\n"
        )
        with pytest.raises(WorkspaceError, match="generalized"):
            ingest(ws)

    def test_reingest_keeps_snapshot_fresh(self, ws):
        ingest(ws)
        snapshot_mine(ws, CFG)
        report = ingest(ws)
        assert report.snapshot_state == "fresh"

    def test_changed_file_marks_snapshot_stale(self, ws):
        ingest(ws)
        snapshot_mine(ws, CFG)
        (ws / "transactions.csv").write_text(
            (ws / "transactions.csv").read_text()
            + "2012-11-30,Engineer,2500,T-shirt\n"
        )
        report = ingest(ws)
        assert report.snapshot_state == "stale"
        assert not load_snapshot(ws).is_fresh(ws)


class TestSnapshotMine:
    def test_requires_ingest(self, ws):
        with pytest.raises(WorkspaceError, match="ingest"):
            snapshot_mine(ws, CFG)

    def test_reproduces_tables(self, ws):
        ingest(ws)
        snapshot = snapshot_mine(ws, CFG)
        mined = {
            (fi.period_id, fi.itemset.key): fi.support for fi in snapshot.frequent
        }
        expected = {("2012-10", k): v for k, v in TABLE_D1.items()}
        expected |= {("2012-11", k): v for k, v in TABLE_D2.items()}
        assert mined == expected
        assert len(snapshot.higens) == 6

    def test_report_lines_match_goldens(self, ws):
        ingest(ws)
        snapshot = snapshot_mine(ws, CFG)
        assert (
            "\n".join(snapshot.pattern_lines()) + "\n"
            == (GOLDEN / "pattern_report.txt").read_text(encoding="utf-8")
        )
        assert (
            "\n".join(snapshot.higen_lines()) + "\n"
            == (GOLDEN / "higen_report.txt").read_text(encoding="utf-8")
        )

    def test_idempotent_bytes(self, ws):
        ingest(ws)
        snapshot_mine(ws, CFG)
        first = (ws / SNAPSHOT_FILE).read_bytes()
        snapshot_mine(ws, CFG)
        assert (ws / SNAPSHOT_FILE).read_bytes() == first

    def test_round_trip(self, ws):
        ingest(ws)
        written = snapshot_mine(ws, CFG)
        loaded = load_snapshot(ws)
        assert loaded.cfg == written.cfg
        assert loaded.frequent == written.frequent
        assert loaded.higens == written.higens
        assert loaded.is_fresh(ws)

    def test_stale_input_race_rejected(self, ws):
        ingest(ws)
        (ws / "catalog.csv").write_text(
            (ws / "catalog.csv").read_text().replace("2400", "2300")
        )
        with pytest.raises(WorkspaceError, match="re-run ingest"):
            snapshot_mine(ws, CFG)

    def test_min_sup_above_everything_gives_empty_snapshot(self, ws):
        ingest(ws)
        snapshot = snapshot_mine(ws, MinerConfig(min_sup=6, attributes=("Budget", "Outfit")))
        assert snapshot.frequent == [] and snapshot.higens == []

    def test_lower_threshold_is_superset(self, ws):
        ingest(ws)
        at2 = snapshot_mine(ws, CFG)
        keys2 = {(fi.period_id, fi.itemset.key) for fi in at2.frequent}
        at1 = snapshot_mine(ws, MinerConfig(min_sup=1, attributes=("Budget", "Outfit")))
        keys1 = {(fi.period_id, fi.itemset.key) for fi in at1.frequent}
        assert keys2 < keys1

    def test_unknown_attribute_rejected(self, ws):
        ingest(ws)
        with pytest.raises(WorkspaceError, match="schema"):
            snapshot_mine(ws, MinerConfig(min_sup=2, attributes=("Budget", "Colour")))


class TestLoadWorkspace:
    def test_loads_everything(self, ws):
        data = load_workspace(ws)
        assert data.schema == ("Budget", "Outfit", "Profession")
        assert len(data.periods) == 2
        assert len(data.catalog) == 4
        assert set(data.sizing) == {"jeans-legging", "top-kurta-onepiece"}

    def test_missing_file_is_io_error(self, ws):
        (ws / "catalog.csv").unlink()
        with pytest.raises(FileNotFoundError):
            load_workspace(ws)

    def test_parse_error_names_file_and_line(self, ws):
        (ws / "taxonomy.csv").write_text("attribute,child,parent\nBudget,2500\n")
        with pytest.raises(WorkspaceError, match="taxonomy.csv: line 2"):
            load_workspace(ws)

    def test_corrupt_snapshot_rejected(self, ws):
        ingest(ws)
        (ws / SNAPSHOT_FILE).write_text(json.dumps({"fingerprint": {}}))
        with pytest.raises(WorkspaceError, match="corrupt snapshot"):
            load_snapshot(ws)
