import json
import subprocess
import sys

from sqfpal.cli import main, parse_int


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_int_accepts_exponents():
    assert parse_int("1e10") == 10**10
    assert parse_int("1000") == 1000


def test_count(capsys):
    code, out, _ = run(["count", "--base", "10", "--max-x", "1000"], capsys)
    assert code == 0 and out.strip() == "108"


def test_usage_errors(capsys):
    assert run(["bogus"], capsys)[0] == 2
    assert run(["count", "--base", "10", "--nope"], capsys)[0] == 2
    code, _, err = run(["equidist", "--base", "10", "--xs", "100", "--moduli", "11"], capsys)
    assert code == 2 and "11" in err


def test_io_error(capsys, tmp_path):
    code, _, err = run(["verify", "sieve", "--baseline", str(tmp_path)], capsys)
    assert code == 3 and str(tmp_path) in err


def test_verify(capsys):
    code, out, _ = run(["verify", "salie", "--qmax", "50"], capsys)
    assert code == 0 and "PASS" in out
    code, out, _ = run(["verify", "vdc", "--trials", "100", "--seed", "7"], capsys)
    assert code == 0


def test_equidist_json(capsys):
    code, out, _ = run(["equidist", "--base", "10", "--xs", "1e4", "--moduli", "7", "--out", "json", "--threads", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and len(doc["rows"]) == 6


def test_equidist_bytes_identical_across_threads():
    outs = set()
    for t in ("1", "2"):
        p = subprocess.run(
            [sys.executable, "-m", "sqfpal", "equidist", "--base", "10", "--xs", "1e5,1e6",
             "--moduli", "7,13", "--out", "csv", "--threads", t],
            capture_output=True, check=True,
        )
        outs.add(p.stdout)
    assert len(outs) == 1
