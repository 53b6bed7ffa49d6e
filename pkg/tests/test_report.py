import csv
import io
import json

from detper.report import (
    CSV_FIELDS,
    Verdict,
    compare,
    parse_residue,
    skipped,
    summarize,
    to_csv_document,
    to_json_document,
)


def test_compare_semantics():
    assert compare("X", 5, 2, 1, 1, "m", 2).verdict is Verdict.PASS
    r = compare("X", 5, 2, 1, 2, "m", 2)
    assert r.verdict is Verdict.FAIL and r.reason == "lhs != rhs"
    r = compare("X", 5, 2, 1, 1, "m", 1)
    assert r.verdict is Verdict.FAIL and "p^1" in r.reason
    r = compare("X", 5, 2, 1, 1, "m", 2, side_ok=False, reason="cross-check")
    assert r.verdict is Verdict.FAIL and r.reason == "cross-check"
    assert compare("X", 5, 1, None, None, "m", 1).verdict is Verdict.FAIL


def test_serialization_round_trip():
    big = 7**40
    reports = [
        compare("A", 7, 40, big - 1, big - 1, "m", 40),
        compare("B", 7, 1, (1, 2, 3), (1, 2, 3), "m", 1),
        skipped("C", 5, "needs p = 3 mod 4", 1),
    ]
    doc = json.loads(to_json_document(reports, {"k": 1}, "9.9"))
    assert doc["summary"] == summarize(reports) == {"pass": 2, "fail": 0, "skipped": 1}
    assert doc["reports"][0]["lhs"] == str(big - 1)
    assert parse_residue(doc["reports"][0]["lhs"]) == big - 1
    assert parse_residue(doc["reports"][1]["rhs"]) == (1, 2, 3)
    assert doc["reports"][2]["lhs"] is None and doc["reports"][2]["verdict"] == "SKIPPED"
    rows = list(csv.reader(io.StringIO(to_csv_document(reports))))
    assert tuple(rows[0]) == CSV_FIELDS
    assert rows[2][3] == "1;2;3" and rows[3][3] == ""
