import json

import pytest

from tauseq.lattice import parse_matrix
from tauseq.oeis import StrippedDb, load_fixture
from tauseq.scan import (ScanConfig, enumerate_bases, enumerate_edge_cycles,
                         run_scan, scan_one, write_jsonl, write_summary)


def test_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(bound=-1)
    with pytest.raises(ValueError):
        ScanConfig(bound=1, terms=8)


def test_enumerate_bound_zero_empty():
    assert enumerate_edge_cycles(0) == []


def test_enumerate_bound_one():
    cycles = enumerate_edge_cycles(1)
    # regression: the number of cyclic classes of strictly convex 4-cycles
    # with unit coordinates is fixed
    assert len(cycles) == 6
    for edges in cycles:
        assert sum(e[0] for e in edges) == 0
        assert sum(e[1] for e in edges) == 0
        for i, e in enumerate(edges):
            f = edges[(i + 1) % 4]
            assert e[0] * f[1] - e[1] * f[0] > 0


def test_enumerate_one_representative_per_rotation():
    cycles = set(enumerate_edge_cycles(2))
    for edges in cycles:
        for i in range(1, 4):
            rotation = edges[i:] + edges[:i]
            assert rotation not in cycles or rotation == edges


def test_scan_one_torsion_skip():
    cfg = ScanConfig(bound=1, terms=16)
    basis = parse_matrix("2,-2,0,0;0,0,1,-1")
    record = scan_one(basis, cfg, StrippedDb(entries={}))
    assert record["skip"] == "torsion"
    assert 2 in record["invariant_factors"]


def test_scan_one_reference_basis():
    cfg = ScanConfig(bound=5, terms=24)
    record = scan_one(parse_matrix("5,-2,-2,-1;1,1,-1,-1"), cfg,
                      load_fixture())
    assert record["status"] == "ok"
    assert record["recurrence"]["pairs"] == [[0, 0], [4, -4], [3, -3]]
    assert record["terms"][-1] == "261033"
    assert {"a_number": "A018896", "position": 8} in record["matches"]


def test_run_scan_bound_two_deterministic():
    cfg = ScanConfig(bound=2, terms=16)
    db = load_fixture()
    records1, summary1 = run_scan(cfg, db)
    records2, summary2 = run_scan(cfg, db)
    assert json.dumps(records1, sort_keys=True) == \
        json.dumps(records2, sort_keys=True)
    assert summary1 == summary2
    assert summary1["total"] == len(list(enumerate_bases(cfg)))
    assert summary1["unique"] == len(records1)
    assert summary1["unique"] + summary1["duplicates"] + \
        sum(summary1["skipped"].values()) == summary1["total"]


def test_run_scan_parallel_equivalence():
    cfg = ScanConfig(bound=2, terms=16)
    db = load_fixture()
    serial, sum_serial = run_scan(cfg, db, workers=1)
    parallel, sum_parallel = run_scan(cfg, db, workers=3)
    assert serial == parallel
    assert sum_serial == sum_parallel


def test_records_sorted_and_deduped():
    cfg = ScanConfig(bound=2, terms=16)
    records, _ = run_scan(cfg, load_fixture())
    keys = [(r["dedup_key"], r["basis"]) for r in records]
    assert keys == sorted(keys)
    assert len({r["dedup_key"] for r in records}) == len(records)


def test_writers(tmp_path):
    cfg = ScanConfig(bound=1, terms=16)
    records, summary = run_scan(cfg, load_fixture())
    jsonl = tmp_path / "records.jsonl"
    sidecar = tmp_path / "summary.json"
    write_jsonl(records, str(jsonl))
    write_summary(summary, str(sidecar))
    lines = jsonl.read_text().splitlines()
    assert len(lines) == len(records)
    assert all(json.loads(line) for line in lines) or not lines
    assert json.loads(sidecar.read_text()) == summary
