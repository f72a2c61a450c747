import csv
import io
import json

import jsonschema
import pytest

from harmdenom.cli import run
from harmdenom.schemas import ERROR_SCHEMA, envelope_schema


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("HARMDENOM_CACHE_DIR", raising=False)


@pytest.mark.parametrize(
    "argv, text",
    [
        (["harmonic", "9"], "7129/2520\n"),
        (["sieve", "10000", "--count"], "2641\n"),
        (["ep", "1093"], "273,546,819,1092\n"),
        (["sieve", "30"], "1_5, 9_9, 27_4\n"),
        (["qp", "3", "18"], "true\n"),
        (["qp", "3", "5"], "false\n"),
        (["qp-count", "3", "27"], "12\n"),
        (["valuation", "10", "5"], "-1\n"),
        (["factor-dn", "19"], "2^4 * 3 * 5 * 7 * 11 * 13 * 17 * 19\n"),
        (["factor-dn", "20", "--oracle"], "2^4 * 3 * 7 * 11 * 13 * 17 * 19\n"),
        (["factor-dn", "1"], "1\n"),
        (["wieferich", "--max", "4000"], "1093,3511\n"),
        (["nested", "3,5"], "20\n"),
        (["ep-stats", "--lo", "3", "--hi", "4"], "|E_p|=1: 1\ntotal: 1\n"),
        (["scan-runs", "--limit", "100", "--dir", "dec", "--min-len", "3"], "19_3\nwindow starts: 19\n"),
    ],
)
def test_text_golden(argv, text):
    code, out, err = cli(*argv)
    assert (code, out, err) == (0, text, "")


COMMANDS = [
    ["harmonic", "30"],
    ["factor-dn", "100"],
    ["factor-dn", "100", "--oracle"],
    ["ep", "2113"],
    ["ep-stats", "--lo", "3", "--hi", "500"],
    ["wieferich", "--max", "2000"],
    ["qp", "5", "120"],
    ["qp-count", "5", "125"],
    ["qp-count", "5", "100"],
    ["density", "3"],
    ["density", "3", "--empirical", "729"],
    ["valuation", "36", "37"],
    ["sieve", "200"],
    ["sieve", "200", "--count"],
    ["sieve", "200", "--list"],
    ["scan-runs", "--limit", "200", "--dir", "inc", "--min-len", "4"],
    ["nested", "3,5,7"],
    ["conjecture", "--points", "1,100,1000"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_json_schema_roundtrip(argv):
    code, out, _ = cli("--format", "json", "--no-timing", *argv)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, envelope_schema(argv[0]))
    assert json.dumps(doc, sort_keys=True) + "\n" == out
    # byte-stable across runs
    assert cli("--format", "json", "--no-timing", *argv)[1] == out


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_csv_has_header(argv):
    code, out, _ = cli("--format", "csv", *argv)
    assert code == 0
    header, *rows = list(csv.reader(io.StringIO(out)))
    assert header and all(len(row) == len(header) for row in rows)


def test_big_numbers_are_strings():
    doc = json.loads(cli("--format", "json", "harmonic", "100")[1])
    assert isinstance(doc["result"]["numerator"], str)
    assert int(doc["result"]["lcm"]) == int(doc["result"]["denominator"]) * int(doc["result"]["quotient"])


def test_sieve_runs_parse_back_to_list():
    runs = json.loads(cli("--format", "json", "sieve", "3000", "--runs")[1])["result"]["runs"]
    listed = json.loads(cli("--format", "json", "sieve", "3000", "--list")[1])["result"]["members"]
    assert [n for s, k in runs for n in range(s, s + k)] == listed
    text = cli("sieve", "3000")[1]
    from harmdenom.sieve import parse_notation

    assert parse_notation(text, 3000).members() == listed


def test_threads_do_not_change_output():
    for argv in (["sieve", "5000"], ["ep-stats", "--lo", "3", "--hi", "3000"]):
        one = cli("--format", "json", "--no-timing", "--threads", "1", *argv)[1]
        many = cli("--format", "json", "--no-timing", "--threads", "4", *argv)[1]
        assert json.loads(one)["result"] == json.loads(many)["result"]


def test_cache_dir_used(tmp_path):
    assert cli("--cache-dir", str(tmp_path), "ep", "5")[1] == "4\n"
    assert (tmp_path / "ep_cache.txt").read_text() == "5:4\n"
    plain = cli("sieve", "2000")[1]
    assert cli("--cache-dir", str(tmp_path), "sieve", "2000")[1] == plain
    stats = cli("--cache-dir", str(tmp_path), "ep-stats", "--lo", "3", "--hi", "300")[1]
    assert stats == cli("ep-stats", "--lo", "3", "--hi", "300")[1]


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("HARMDENOM_CACHE_DIR", str(tmp_path))
    cli("ep", "7")
    assert (tmp_path / "ep_cache.txt").read_text() == "7:6\n"


@pytest.mark.parametrize(
    "argv, code, kind",
    [
        (["bogus"], 2, "usage"),
        (["harmonic", "x"], 2, "usage"),
        (["harmonic", "0"], 2, "usage"),
        (["ep", "9"], 2, "invalid-argument"),
        (["qp", "4", "10"], 2, "invalid-argument"),
        (["scan-runs", "--limit", "10", "--dir", "eq", "--min-len", "1"], 2, "invalid-argument"),
        (["--max-n", "100", "harmonic", "200"], 3, "resource-limit"),
        (["--max-precision", "1", "valuation", "36", "37"], 3, "precision-exhausted"),
        (["nested", "3,5,7", "--a-max", "5"], 3, "search-exhausted"),
        ([], 2, "usage"),
    ],
)
def test_errors(argv, code, kind):
    got, out, err = cli("--format", "json", *argv)
    assert got == code and out == ""
    doc = json.loads(err)
    jsonschema.validate(doc, ERROR_SCHEMA)
    assert doc["error"] == kind and doc["exit_code"] == code
    got_text, _, err_text = cli(*argv)
    assert got_text == code and err_text.startswith(f"error[{kind}]")
