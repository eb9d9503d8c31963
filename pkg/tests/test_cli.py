import json
import math

import pytest

from rootwave.cli import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RESUME,
    PolyParseError,
    main,
    parse_checkpoints,
    parse_poly,
)


def test_parse_poly_grammar():
    f = parse_poly("(1,0)(1,1)(2,1)")
    assert f.linear == ((1, 0), (1, 1), (2, 1)) and not f.has_x2p1
    g = parse_poly(" (1, 0) * q ")
    assert g.linear == ((1, 0),) and g.has_x2p1
    h = parse_poly("(-2,1)(3,-1)")
    assert h.linear == ((-2, 1), (3, -1))


def test_parse_poly_rejects_garbage():
    for bad in ["", "(1,0", "(0,1)", "(2,4)", "(1,0)*q*q", "n(n+1)"]:
        with pytest.raises(PolyParseError):
            parse_poly(bad)


def test_parse_checkpoints():
    assert parse_checkpoints("decades", 10**4) == [10, 100, 1000, 10**4]
    assert parse_checkpoints("5,2,8", 10) == [2, 5, 8]
    with pytest.raises(PolyParseError):
        parse_checkpoints("5,20", 10)
    with pytest.raises(PolyParseError):
        parse_checkpoints("abc", 10)


def test_sum_writes_csv(tmp_path, capsys):
    out = tmp_path / "run.csv"
    rc = main(["sum", "--poly", "(1,0)(1,1)", "--x", "1000", "--out", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x,count,re,im,ratio_re"
    assert len(lines) == 4  # header + decade checkpoints 10, 100, 1000
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[0]) for r in rows] == [10, 100, 1000]
    final = rows[-1]
    ratio = float(final[2]) / 1000
    assert abs(float(final[4]) - ratio) < 1e-15


def test_sum_writes_json_run_record(tmp_path):
    out = tmp_path / "run.json"
    rc = main(
        ["sum", "--poly", "(1,0)(1,1)", "--x", "500", "--checkpoints", "100,500",
         "--out", str(out)]
    )
    assert rc == EXIT_OK
    rec = json.loads(out.read_text())
    assert rec["schema_version"] == 1
    assert rec["command"] == "sum"
    assert rec["parameters"]["poly"] == "(1,0)(1,1)"
    assert rec["checkpoints"]["x"] == [100, 500]
    assert len(rec["checkpoints"]["re"]) == 2
    assert rec["thread_count"] >= 1
    assert rec["wall_time"] > 0


def test_sum_resume_roundtrip(tmp_path):
    rec = tmp_path / "a.json"
    rc = main(["sum", "--poly", "(1,0)(1,1)", "--x", "500", "--out", str(rec)])
    assert rc == EXIT_OK
    out = tmp_path / "b.csv"
    rc = main(
        ["sum", "--poly", "(1,0)(1,1)", "--x", "2000", "--resume", str(rec),
         "--out", str(out)]
    )
    assert rc == EXIT_OK
    xs = [int(line.split(",")[0]) for line in out.read_text().splitlines()[1:]]
    # old checkpoints are carried into the new run
    assert set([10, 100, 500, 1000, 2000]) <= set(xs)


def test_sum_resume_mismatch(tmp_path):
    rec = tmp_path / "a.json"
    main(["sum", "--poly", "(1,0)(1,1)", "--x", "500", "--out", str(rec)])
    # different polynomial
    rc = main(["sum", "--poly", "(2,1)(3,1)", "--x", "600", "--resume", str(rec)])
    assert rc == EXIT_RESUME
    # different h
    rc = main(["sum", "--poly", "(1,0)(1,1)", "--h", "2", "--x", "600",
               "--resume", str(rec)])
    assert rc == EXIT_RESUME
    # corrupted checkpoint value
    data = json.loads(rec.read_text())
    data["checkpoints"]["re"][0] += 0.5
    rec.write_text(json.dumps(data))
    rc = main(["sum", "--poly", "(1,0)(1,1)", "--x", "600", "--resume", str(rec)])
    assert rc == EXIT_RESUME


def test_sum_bad_inputs(capsys):
    assert main(["sum", "--poly", "bogus", "--x", "100"]) == EXIT_PARSE
    assert main(["sum", "--poly", "(1,0)", "--x", "0"]) == EXIT_PARSE
    assert main(["sum", "--poly", "(1,0)", "--x", "100",
                 "--checkpoints", "7,200"]) == EXIT_PARSE
    assert main(["nonsense"]) == EXIT_PARSE


def test_constant_quadratic(capsys):
    rc = main(["constant", "--which", "quadratic", "--a", "1", "--c", "1"])
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["value"] - 12 / math.pi**2) < 1e-12
    assert doc["tail"] == 0.0


def test_constant_general_and_missing_args(tmp_path, capsys):
    rc = main(["constant", "--which", "general", "--a", "1", "--b", "0",
               "--c", "1", "--d", "1", "--h", "1"])
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["value"] - 12 / math.pi**2) < 1e-12
    assert main(["constant", "--which", "general", "--a", "1"]) == EXIT_PARSE


def test_constant_thm_routes(tmp_path, capsys):
    out = tmp_path / "c.json"
    rc = main(["constant", "--which", "thm3", "--pmax", "100000",
               "--out", str(out)])
    assert rc == EXIT_OK
    doc = json.loads(out.read_text())
    assert abs(doc["value"] - 0.6452682853) < 1e-5
    assert doc["pmax"] == 100000 and doc["tail"] > 0


def test_verify_parity_suite(capsys):
    rc = main(["verify", "--suite", "parity", "--seed", "1"])
    assert rc == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["parity"]["violations"] == 0
    assert report["parity"]["checked"] > 10**4


def test_verify_gauss_suite(capsys):
    rc = main(["verify", "--suite", "gauss", "--budget", "300"])
    assert rc == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["gauss"]["violations"] == 0
    assert report["gauss"]["checked"] == 299
