import csv
import io
import json

import pytest

from jensen_lab.report import CSV_COLUMNS, JSON_FIELDS, ExperimentReport, render, to_csv, to_json, to_text


def sample(fail=False):
    r = ExperimentReport("demo", "heisenberg", {"eps": 0.1}, seed=3, c_measured=0.2, c_bound=0.4,
                         ladder=[0.5, 0.45, 0.9, 1.35])
    r.check("a", 1e-9, 1e-6)
    r.check("b", 2.0 if fail else 0.0, 0.0)
    r.witnesses.append({"x": "(1,0,0)", "residual": 1e-9})
    r.wall_clock_s = 0.125
    return r


def test_pass_flag_and_failures():
    assert sample().passed
    bad = sample(fail=True)
    assert not bad.passed and bad.failures() == ["b"]


def test_json_round_trip_is_byte_identical():
    text = to_json(sample())
    obj = json.loads(text)
    assert list(obj) == list(JSON_FIELDS)
    assert json.dumps(obj, indent=2, allow_nan=False) + "\n" == text
    assert obj["pass"] is True


def test_json_without_wall_clock():
    assert "wall_clock_s" not in json.loads(to_json(sample(), wall_clock=False))


def test_json_rejects_nan():
    r = sample()
    r.c_measured = float("nan")
    with pytest.raises(ValueError):
        to_json(r)


def test_csv_rows_match_checks():
    rows = list(csv.reader(io.StringIO(to_csv(sample(fail=True)))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) - 1 == len(sample().residuals)
    assert rows[2][-1] == "False"


def test_text_has_verdict_and_witness_block():
    text = to_text(sample(fail=True))
    assert text.splitlines()[0] == "demo on heisenberg: FAIL"
    assert "witnesses:" in text and "x=(1,0,0)" in text
    empty = ExperimentReport("e", "z", {})
    assert "(none)" in to_text(empty) and "PASS" in to_text(empty)


def test_render_dispatch():
    assert render(sample(), "json").startswith("{")
    with pytest.raises(ValueError):
        render(sample(), "xml")
