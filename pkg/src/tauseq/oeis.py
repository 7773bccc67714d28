"""Offline matching against an OEIS "stripped" snapshot, plus an opt-in
live search client.

The stripped format is one sequence per line: "A000045 ,0,1,1,2,3,...,".
Matching is hermetic by design; the online client is advisory only and is
never consulted by tests or acceptance runs.
"""

from __future__ import annotations

import gzip
import io
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import BinaryIO, Iterable

A_NUMBER_RE = re.compile(r"^A\d{6}$")
DEFAULT_ENDPOINT = "https://oeis.org/search"


class OeisError(Exception):
    pass


class QueryTooShort(OeisError):
    pass


@dataclass
class StrippedDb:
    entries: dict[str, list[int]]
    malformed: list[tuple[int, str]] = field(default_factory=list)

    def serialize(self) -> str:
        """Re-emit the well-formed entries in stripped format."""
        lines = [f"{a} ,{','.join(map(str, terms))},"
                 for a, terms in sorted(self.entries.items())]
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class MatchPolicy:
    trim_leading_ones: bool = True
    min_match_terms: int = 10
    allow_offset: bool = True

    def __post_init__(self) -> None:
        if self.min_match_terms < 4:
            raise ValueError("min_match_terms must be >= 4")


def load_stripped(source: BinaryIO | bytes | str) -> StrippedDb:
    """Parse a stripped file; gzip input is detected by magic bytes.

    Malformed lines are recorded with their line numbers and skipped.
    """
    if isinstance(source, str):
        data = source.encode()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    entries: dict[str, list[int]] = {}
    malformed: list[tuple[int, str]] = []
    for lineno, raw in enumerate(io.StringIO(data.decode("utf-8")), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(" ,")
        if not sep or not A_NUMBER_RE.match(head):
            malformed.append((lineno, line))
            continue
        try:
            terms = [int(x) for x in rest.rstrip(",").split(",") if x != ""]
        except ValueError:
            malformed.append((lineno, line))
            continue
        if not terms:
            malformed.append((lineno, line))
            continue
        entries[head] = terms
    return StrippedDb(entries=entries, malformed=malformed)


def load_fixture() -> StrippedDb:
    """The small vendored snapshot used by hermetic tests and scans."""
    data = resources.files("tauseq.data").joinpath("oeis_fixture.txt").read_bytes()
    return load_stripped(data)


def trim_query(terms: list[int], policy: MatchPolicy) -> list[int]:
    query = list(terms)
    if policy.trim_leading_ones:
        i = 0
        while i < len(query) and query[i] == 1:
            i += 1
        query = query[i:]
    if len(query) < policy.min_match_terms:
        raise QueryTooShort(
            f"query has {len(query)} terms after trimming; "
            f"need >= {policy.min_match_terms}")
    return query


def match_sequence(db: StrippedDb, terms: list[int],
                   policy: MatchPolicy | None = None
                   ) -> list[tuple[str, int]]:
    """All (A-number, position) whose entry contains the query contiguously."""
    policy = policy or MatchPolicy()
    query = trim_query(terms, policy)
    hits = []
    for a_number in sorted(db.entries):
        entry = db.entries[a_number]
        positions = range(len(entry) - len(query) + 1) \
            if policy.allow_offset else range(1)
        for start in positions:
            if entry[start:start + len(query)] == query:
                hits.append((a_number, start))
                break
    return hits


def search_online(terms: list[int], endpoint: str = DEFAULT_ENDPOINT,
                  retries: int = 2, delay: float = 1.0) -> dict:
    """Query the live OEIS JSON search endpoint.  Advisory only.

    Network failures, non-success statuses and malformed payloads raise
    distinct errors; retries are bounded with a politeness delay.
    """
    import requests

    query = ",".join(str(t) for t in terms)
    last_error: Exception | None = None
    for attempt in range(retries + 1):
        if attempt:
            time.sleep(delay)
        try:
            resp = requests.get(endpoint, params={"q": query, "fmt": "json"},
                                timeout=30)
        except requests.RequestException as exc:
            last_error = OeisError(f"network failure: {exc}")
            continue
        if resp.status_code != 200:
            last_error = OeisError(f"search returned status {resp.status_code}")
            continue
        try:
            payload = resp.json()
        except ValueError as exc:
            raise OeisError(f"malformed search payload: {exc}") from exc
        results = payload.get("results") or []
        return {
            "advisory": True,
            "count": payload.get("count", len(results)),
            "matches": [{"a_number": f"A{r['number']:06d}",
                         "name": r.get("name", "")}
                        for r in results if "number" in r],
        }
    raise last_error  # type: ignore[misc]
