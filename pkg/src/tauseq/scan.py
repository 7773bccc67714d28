"""Scan 4-edge convex lattice polygons: derive, generate, match, dedup.

Work is partitioned by basis; each unit is a pure function, so the scan can
run on a process pool.  A single writer sorts the merged results before
emitting, which makes 1-worker and N-worker runs byte-identical.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .lattice import (LatticeError, RankError, SublatticeBasis, TorsionError,
                      polygon_to_basis)
from .oeis import MatchPolicy, QueryTooShort, StrippedDb, match_sequence
from .recurrence import UnsolvableError, derive_recurrence, generate


@dataclass(frozen=True)
class ScanConfig:
    bound: int
    terms: int = 24
    min_match_terms: int = 10

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("coordinate bound must be >= 0")
        if self.terms < 16:
            raise ValueError("terms per sequence must be >= 16")


Edge = tuple[int, int]


def _canonical_rotation(edges: tuple[Edge, ...]) -> tuple[Edge, ...]:
    rotations = [edges[i:] + edges[:i] for i in range(len(edges))]
    return min(rotations)


def enumerate_edge_cycles(bound: int) -> list[tuple[Edge, Edge, Edge, Edge]]:
    """All 4-edge strictly convex ccw cycles with coordinates in [-B, B],
    one representative per cyclic rotation class, in lexicographic order."""
    if bound == 0:
        return []
    coords = range(-bound, bound + 1)
    vectors = [(x, y) for x in coords for y in coords if (x, y) != (0, 0)]
    cross = lambda u, v: u[0] * v[1] - u[1] * v[0]
    seen = set()
    for e1 in vectors:
        for e2 in vectors:
            if cross(e1, e2) <= 0:
                continue
            for e3 in vectors:
                if cross(e2, e3) <= 0:
                    continue
                e4 = (-(e1[0] + e2[0] + e3[0]), -(e1[1] + e2[1] + e3[1]))
                if abs(e4[0]) > bound or abs(e4[1]) > bound or e4 == (0, 0):
                    continue
                if cross(e3, e4) <= 0 or cross(e4, e1) <= 0:
                    continue
                seen.add(_canonical_rotation((e1, e2, e3, e4)))
    return sorted(seen)


def enumerate_bases(cfg: ScanConfig) -> Iterator[SublatticeBasis]:
    for edges in enumerate_edge_cycles(cfg.bound):
        yield SublatticeBasis(tuple(e[0] for e in edges),
                              tuple(e[1] for e in edges))


def scan_one(basis: SublatticeBasis, cfg: ScanConfig,
             db: StrippedDb) -> dict:
    """Process a single basis into a plain-dict scan record."""
    record: dict = {"basis": [list(basis.a), list(basis.b)]}
    try:
        derived = derive_recurrence(basis)
    except TorsionError as exc:
        record["skip"] = "torsion"
        record["invariant_factors"] = list(exc.invariant_factors)
        return record
    except UnsolvableError:
        record["skip"] = "unsolvable"
        return record
    except RankError:
        record["skip"] = "rank"
        return record
    except LatticeError as exc:  # pragma: no cover - defensive
        record["skip"] = f"lattice: {exc}"
        return record
    rec = derived.recurrence
    record["recurrence"] = rec.to_json_dict()
    record["dedup_key"] = json.dumps(rec.to_json_dict()["pairs"])
    run = generate(rec, max(cfg.terms, rec.window))
    record["status"] = run.status
    record["terms"] = [_term_str(t) for t in run.terms]
    if run.status == "ok":
        try:
            policy = MatchPolicy(min_match_terms=cfg.min_match_terms)
            hits = match_sequence(db, [int(t) for t in run.terms], policy)
            record["matches"] = [{"a_number": a, "position": pos}
                                 for a, pos in hits]
        except QueryTooShort:
            record["matches"] = []
            record["match_note"] = "query too short after trimming"
    else:
        record["matches"] = []
    return record


def _term_str(t) -> str:
    if isinstance(t, Fraction) and t.denominator != 1:
        return f"{t.numerator}/{t.denominator}"
    return str(int(t))


_WORK_CFG: ScanConfig | None = None
_WORK_DB: StrippedDb | None = None


def _pool_init(cfg: ScanConfig, db: StrippedDb) -> None:
    global _WORK_CFG, _WORK_DB
    _WORK_CFG, _WORK_DB = cfg, db


def _pool_work(rows: tuple[tuple[int, ...], tuple[int, ...]]) -> dict:
    basis = SublatticeBasis(rows[0], rows[1])
    return scan_one(basis, _WORK_CFG, _WORK_DB)


def run_scan(cfg: ScanConfig, db: StrippedDb,
             workers: int = 1) -> tuple[list[dict], dict]:
    """Scan every enumerated basis; return (sorted records, summary)."""
    bases = list(enumerate_bases(cfg))
    if workers <= 1:
        records = [scan_one(b, cfg, db) for b in bases]
    else:
        payload = [(b.a, b.b) for b in bases]
        with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init,
                                 initargs=(cfg, db)) as pool:
            records = list(pool.map(_pool_work, payload, chunksize=64))

    summary = {
        "total": len(records),
        "skipped": {},
        "integral": 0,
        "non_integral": 0,
        "degenerate": 0,
        "matched": 0,
        "unmatched": 0,
        "duplicates": 0,
        "unique": 0,
    }
    by_key: dict[str, dict] = {}
    kept: list[dict] = []
    for record in records:
        if "skip" in record:
            reason = record["skip"]
            summary["skipped"][reason] = summary["skipped"].get(reason, 0) + 1
            continue
        key = record["dedup_key"]
        if key in by_key:
            summary["duplicates"] += 1
            if by_key[key]["terms"] != record["terms"]:
                raise AssertionError(
                    f"dedup key collision with differing terms: {key}")
            continue
        by_key[key] = record
        kept.append(record)
        status = record["status"]
        if status == "ok":
            summary["integral"] += 1
        elif status == "non-integral":
            summary["non_integral"] += 1
        else:
            summary["degenerate"] += 1
        if record["matches"]:
            summary["matched"] += 1
        else:
            summary["unmatched"] += 1
    summary["unique"] = len(kept)
    kept.sort(key=lambda r: (r["dedup_key"], r["basis"]))
    return kept, summary


def write_jsonl(records: list[dict], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def write_summary(summary: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
