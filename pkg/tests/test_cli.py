import json
from pathlib import Path

import pytest

import ordstat.cli as cli
from ordstat.arith import OverflowError64
from ordstat.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


def test_compute_order(capsys):
    doc = run_json(capsys, ["compute", "order", "--e", "2", "--n", "12"])
    assert doc["n"] == 12
    assert doc["n_coprime"] == 3
    assert doc["lambda"] == 2  # lambda(12) = lcm(lambda(4), lambda(3))
    assert doc["ord_star"] == 2
    assert "index" not in doc
    doc = run_json(capsys, ["compute", "order", "--e", "2", "--n", "7"])
    assert doc["ord_star"] == 3 and doc["index"] == 2


def test_compute_lambda(capsys):
    doc = run_json(capsys, ["compute", "lambda", "--n", "8"])
    assert doc["lambda"] == 2


def test_compute_core_omega_smooth(capsys):
    assert run_json(capsys, ["compute", "core", "--n", "12"])["core"] == 6
    assert run_json(capsys, ["compute", "omega", "--n", "30"])["omega"] == 3
    doc = run_json(capsys, ["compute", "smooth-part", "--n", "90", "--primes", "2,3"])
    assert doc["smooth_part"] == 18


def test_compute_classify(capsys):
    doc = run_json(capsys, ["compute", "classify", "--p", "7", "--e", "2"])
    assert doc["class"] == "M"


def test_compute_domain_error_exits_2(capsys):
    assert main(["compute", "order", "--e", "2", "--n", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    assert main(["compute", "order", "--n", "12"]) == 2  # missing --e
    assert main(["survey", "--kind", "nonsense", "--max", "100"]) == 2
    capsys.readouterr()


def test_period_power_and_bbs_alias(capsys):
    doc = run_json(capsys, ["period", "power", "--e", "2", "--n", "11", "--u", "3",
                            "--empirical"])
    assert doc["analytic"] == 4
    assert doc["empirical_period"] == 4
    assert doc["tail"] == 0
    assert doc["agree"] is True
    alias = run_json(capsys, ["period", "bbs", "--n", "11", "--u", "3", "--empirical"])
    assert alias == doc
    # bbs fixes e = 2 and refuses an explicit --e
    assert main(["period", "bbs", "--e", "3", "--n", "11", "--u", "3"]) == 2
    capsys.readouterr()


def test_period_lcg(capsys):
    doc = run_json(capsys, ["period", "lcg", "--e", "3", "--b", "1", "--n", "10",
                            "--u", "0", "--empirical"])
    assert doc["exact"] is None
    assert doc["divisor_bound"] == 8
    assert doc["empirical_period"] == 4
    assert doc["agree"] is True


def test_survey_class_counts_json(capsys):
    doc = run_json(capsys, ["survey", "--kind", "class-counts", "--e", "2",
                            "--max", "1000"])
    counts = doc["class_counts"]
    assert counts["L"] + counts["M"] + counts["H"] == 168
    assert doc["total"] == 168


def test_survey_empty_range_exits_2(capsys):
    assert main(["survey", "--kind", "ord-n", "--max", "10"]) == 2
    capsys.readouterr()


def test_survey_conflicting_flags_exit_2(capsys):
    assert main(["survey", "--kind", "lambda-lambda", "--max", "100",
                 "--exponent", "0.5"]) == 2
    capsys.readouterr()


def test_survey_output_is_byte_stable(tmp_path, capsys):
    args = ["survey", "--kind", "lambda-n", "--max", "2000", "--format", "csv"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2), "--workers", "2", "--chunk", "123"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    capsys.readouterr()


def test_survey_csv_matches_golden(tmp_path, capsys):
    out = tmp_path / "lambda_n_2000.csv"
    assert main(["survey", "--kind", "lambda-n", "--max", "2000",
                 "--format", "csv", "--out", str(out)]) == 0
    capsys.readouterr()
    golden = (GOLDEN_DIR / "survey_lambda_n_2000.csv").read_bytes()
    assert out.read_bytes() == golden


def test_survey_csv_shape(capsys):
    assert main(["survey", "--kind", "ord-n", "--max", "100", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "kind,e,x_max,total,exceed,fraction,bin_lo,bin_hi,bin_count"
    assert len(lines) == 1 + 1 + 21  # header, summary, 21 bins
    summary = lines[1].split(",")
    assert summary[0] == "ord-n" and summary[6] == ""
    first_bin = lines[2].split(",")
    assert (first_bin[6], first_bin[7]) == ("0.00", "0.05")
    assert lines[-1].split(",")[7] == "1.05"


def test_survey_json_round_trips(capsys):
    doc = run_json(capsys, ["survey", "--kind", "ord-n", "--max", "200"])
    assert json.loads(json.dumps(doc)) == doc
    assert doc["schema"] == 1
    assert doc["fraction"] == f"{doc['exceed']}/{doc['total']}"


def test_survey_cache_env_and_flag(tmp_path, capsys, monkeypatch):
    env_cache = tmp_path / "env.bin"
    monkeypatch.setenv(cli.CACHE_ENV, str(env_cache))
    assert main(["survey", "--kind", "lambda-n", "--max", "500"]) == 0
    capsys.readouterr()
    assert env_cache.exists()
    flag_cache = tmp_path / "flag.bin"
    assert main(["survey", "--kind", "lambda-n", "--max", "500",
                 "--cache", str(flag_cache)]) == 0
    capsys.readouterr()
    assert flag_cache.exists()


def test_corrupt_cache_exits_4(tmp_path, capsys):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"not a cache at all")
    assert main(["survey", "--kind", "lambda-n", "--max", "500",
                 "--cache", str(bad)]) == 4
    capsys.readouterr()


def test_overflow_maps_to_exit_3(capsys, monkeypatch):
    def boom(*a, **kw):
        raise OverflowError64("synthetic")
    monkeypatch.setattr(cli, "order_profile", boom)
    assert main(["compute", "order", "--e", "2", "--n", "7"]) == 3
    assert "overflow" in capsys.readouterr().err
