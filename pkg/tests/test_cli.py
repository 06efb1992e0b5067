import csv
import io
import json

import pytest

from staircase.cli import run
from staircase.tableau import loads_many


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert call(capsys, "count", "--n", "4") == (0, "120\n", "")
    assert call(capsys, "count", "--n", "2", "--full")[1] == "32\n"


def test_enumerate_to_file(tmp_path, capsys):
    out = tmp_path / "s3.txt"
    code, _, _ = call(capsys, "enumerate", "--n", "3", "--out", str(out))
    assert code == 0
    tabs = loads_many(out.read_text())
    assert len(tabs) == 24 and len(set(tabs)) == 24


def test_sample_header_and_determinism(capsys):
    args = ("sample", "--n", "3", "--a", "1/2", "--b", "2", "--seed", "42", "--count", "5")
    code, first, _ = call(capsys, *args)
    assert code == 0
    assert call(capsys, *args)[1] == first
    header, body = first.split("\n\n", 1)
    assert json.loads(header) == {
        "n": 3, "params": {"a": "1/2", "b": "2", "max_symbols": False}, "seed": 42, "count": 5,
    }
    assert len(loads_many(body)) == 5


def test_sample_four(capsys):
    code, out, _ = call(capsys, "sample", "--n", "2", "--gamma", "1", "--delta", "1", "--count", "3")
    assert code == 0 and json.loads(out.split("\n\n")[0])["params"]["gamma"] == "1"


def test_box_dist(capsys):
    code, out, _ = call(capsys, "box-dist", "--n", "3", "--i", "2", "--j", "1")
    assert code == 0
    assert json.loads(out)["boxes"] == [{"i": 2, "j": 1, "alpha": "1/12", "beta": "1/6", "empty": "3/4"}]
    code, out, _ = call(capsys, "box-dist", "--n", "3", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 6


def test_diag(capsys):
    code, out, _ = call(capsys, "diag", "--n", "3", "--stat", "A")
    data = json.loads(out)
    assert data["factorial_moments"] == {"0": "1", "1": "1/4"}
    assert data["pmf"] == {"0": "3/4", "1": "1/4"}


def test_moments_csv(capsys):
    code, out, _ = call(capsys, "moments", "--n", "60", "--stat", "X", "--r", "1", "--format", "csv")
    assert out == "r,factorial_moment\n0,1\n1,59/61\n"


def test_tv_table(capsys):
    code, out, _ = call(capsys, "tv", "--stat", "X", "--a", "1", "--b", "1", "--n-range", "4:9")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == list(range(4, 10))
    tvs = [float(r["tv"]) for r in rows]
    assert all(x > y for x, y in zip(tvs, tvs[1:]))
    assert all(len(r["tv"].replace("0.", "", 1).lstrip("0")) >= 25 for r in rows)


def test_verify_all(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "all", "--max-n", "6")
    assert code == 0
    for suite in ("partition", "box-laws", "joint-laws", "moments", "corner-lemmas", "subtableau", "asep"):
        assert f"PASS {suite}:" in out
    assert out.strip().endswith("ALL PASS")


def test_verify_single_suite(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "lemma")
    assert code == 0 and out.startswith("PASS lemma")


def test_asep_verify(capsys):
    code, out, _ = call(capsys, "asep-verify", "--n", "2", "--rates", "1,2,1/2,1,3,1")
    assert code == 0 and json.loads(out)["equal"] is True
    code, out, _ = call(capsys, "asep-verify", "--n", "1", "--rates", "2,1,1,3,1,1", "--convention", "alpha-gamma")
    assert code == 1 and json.loads(out)["equal"] is False


def test_explore_diagonal(capsys):
    code, out, _ = call(capsys, "explore-diagonal", "--n", "5", "--d", "6")
    assert json.loads(out)["pmf"] == {"5": "1"}
    code, out, _ = call(capsys, "explore-diagonal", "--n", "5", "--d", "4", "--samples", "100", "--seed", "1")
    assert json.loads(out)["mode"] == "empirical"


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("count",),
    ("count", "--n", "x"),
    ("count", "--n", "12"),
    ("sample", "--n", "2", "--a", "0", "--b", "0"),
    ("box-dist", "--n", "3", "--i", "1"),
    ("tv", "--stat", "X", "--n-range", "9:4"),
    ("verify", "--suite", "nope"),
    ("asep-verify", "--n", "2", "--rates", "1,2"),
])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("STAIRCASE_MAX_N", "3")
    code, _, err = call(capsys, "count", "--n", "4")
    assert code == 2 and "STAIRCASE_MAX_N" in err
