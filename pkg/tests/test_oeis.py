import gzip

import pytest

from tauseq.oeis import (MatchPolicy, OeisError, QueryTooShort, StrippedDb,
                         load_fixture, load_stripped, match_sequence,
                         search_online, trim_query)

SAMPLE = """\
# comment line
A000045 ,0,1,1,2,3,5,8,13,21,34,55,89,144,
A000290 ,0,1,4,9,16,25,36,49,64,81,100,121,144,

not a line
A00004 ,1,2,3,
A999999 ,1,x,3,
A111111 ,,
"""


def test_load_stripped_parses_and_records_malformed():
    db = load_stripped(SAMPLE)
    assert set(db.entries) == {"A000045", "A000290"}
    assert db.entries["A000045"][:5] == [0, 1, 1, 2, 3]
    assert [lineno for lineno, _ in db.malformed] == [5, 6, 7, 8]


def test_load_stripped_gzip_detection():
    raw = SAMPLE.encode()
    assert load_stripped(gzip.compress(raw)).entries == \
        load_stripped(raw).entries


def test_serialize_roundtrip():
    db = load_stripped(SAMPLE)
    again = load_stripped(db.serialize())
    assert again.entries == db.entries
    assert again.malformed == []
    assert StrippedDb(entries={}).serialize() == ""


def test_fixture_loads_clean():
    db = load_fixture()
    assert db.malformed == []
    assert "A018896" in db.entries
    assert len(db.entries["A018896"]) >= 24


def test_trim_query_policy():
    policy = MatchPolicy(min_match_terms=4)
    assert trim_query([1, 1, 1, 2, 3, 4, 5], policy) == [2, 3, 4, 5]
    keep = MatchPolicy(trim_leading_ones=False, min_match_terms=4)
    assert trim_query([1, 1, 2, 3], keep) == [1, 1, 2, 3]
    with pytest.raises(QueryTooShort):
        trim_query([1, 1, 1, 2, 3], policy)
    with pytest.raises(ValueError):
        MatchPolicy(min_match_terms=3)


def test_match_sequence_positions():
    db = load_stripped(SAMPLE)
    # the leading 1 is trimmed, so the query starts at 2 (position 3)
    hits = match_sequence(db, [1, 2, 3, 5, 8, 13, 21, 34, 55, 89],
                          MatchPolicy(min_match_terms=8))
    assert hits == [("A000045", 3)]


def test_match_requires_offset_zero_when_disabled():
    db = load_stripped(SAMPLE)
    policy = MatchPolicy(min_match_terms=8, allow_offset=False)
    assert match_sequence(db, [1, 2, 3, 5, 8, 13, 21, 34, 55], policy) == []
    assert match_sequence(db, [0, 1, 1, 2, 3, 5, 8, 13, 21], policy) == \
        [("A000045", 0)]


def test_match_reference_sequence_in_fixture():
    db = load_fixture()
    terms = [1] * 8 + [2, 3, 4, 5, 9, 18, 34, 93, 180, 348, 724,
                       3033, 9666, 24986, 83761, 261033]
    hits = match_sequence(db, terms)
    assert ("A018896", 8) in hits


def test_match_empty_db():
    assert match_sequence(StrippedDb(entries={}),
                          list(range(2, 20))) == []


class FakeResponse:
    def __init__(self, status=200, payload=None, bad_json=False):
        self.status_code = status
        self._payload = payload
        self._bad = bad_json

    def json(self):
        if self._bad:
            raise ValueError("bad json")
        return self._payload


def test_search_online_success(monkeypatch):
    calls = []

    def fake_get(url, params=None, timeout=None):
        calls.append((url, params["q"]))
        return FakeResponse(payload={
            "count": 1,
            "results": [{"number": 18896, "name": "a(n)*a(n-8)=..."}]})

    import requests
    monkeypatch.setattr(requests, "get", fake_get)
    out = search_online([2, 3, 4, 5, 9], endpoint="https://example.test")
    assert out["advisory"] is True
    assert out["matches"] == [{"a_number": "A018896",
                               "name": "a(n)*a(n-8)=..."}]
    assert calls == [("https://example.test", "2,3,4,5,9")]


def test_search_online_retries_then_fails(monkeypatch):
    attempts = []

    def fake_get(url, params=None, timeout=None):
        attempts.append(1)
        return FakeResponse(status=503)

    import requests
    monkeypatch.setattr(requests, "get", fake_get)
    monkeypatch.setattr("time.sleep", lambda s: None)
    with pytest.raises(OeisError, match="status 503"):
        search_online([1, 2, 3], retries=2, delay=0)
    assert len(attempts) == 3


def test_search_online_malformed_payload(monkeypatch):
    import requests
    monkeypatch.setattr(requests, "get",
                        lambda *a, **k: FakeResponse(bad_json=True))
    with pytest.raises(OeisError, match="malformed"):
        search_online([1, 2, 3], retries=0)
