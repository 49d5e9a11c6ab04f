import csv
import io
import json
import math
from pathlib import Path

import pytest

from p2pgrowth.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_analytic_pmf(capsys):
    code, out, _ = run(capsys, "analytic", "pmf", "--lambda", "1", "--mu", "0", "--t", "1",
                       "--k-max", "5")
    table = rows(out)
    assert code == 0 and table[0] == ["index", "value"] and len(table) == 7
    assert float(table[1][1]) == pytest.approx(math.exp(-1), abs=1e-15)
    assert len(table[1][1].replace("0.", "").lstrip("0")) >= 16


def test_analytic_pmf_with_churn(capsys):
    code, out, _ = run(capsys, "analytic", "pmf", "--mu", "1", "--t", "0.5", "--k-max", "3")
    assert code == 0 and len(rows(out)) == 5


def test_analytic_embedded(capsys):
    _, out, _ = run(capsys, "analytic", "embedded", "--lambda", "1", "--mu", "0", "--n", "3")
    assert float(rows(out)[3][1]) == pytest.approx(0.583333, abs=1e-6)


def test_analytic_steady(capsys):
    _, out, _ = run(capsys, "analytic", "steady", "--lambda", "1", "--mu", "1", "--n", "1",
                    "--l", "3")
    assert [float(r[1]) for r in rows(out)[1:]] == [0.5, 0.5]


def test_analytic_steady_without_churn_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analytic", "steady", "--mu", "0", "--n", "1"])
    assert exc.value.code == 2


def test_analytic_json_has_schema_version(tmp_path, capsys):
    target = tmp_path / "b.json"
    code, _, _ = run(capsys, "analytic", "bounds", "--n", "100", "--epsilon", "0.5",
                     "--format", "json", "--output", str(target))
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert code == 0 and doc["schema_version"] == 1
    assert doc["rows"][0]["value"] == pytest.approx(0.3206, abs=1e-4)


def test_analytic_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "analytic", "pmf", "--lambda", "-1", "--t", "1")
    assert code == 1 and "lambda" in err


def test_simulate_is_byte_identical(tmp_path, capsys):
    cfg = str(CONFIGS / "simulate_growth.json")
    assert run(capsys, "simulate", cfg, str(tmp_path / "a"))[0] == 0
    assert run(capsys, "simulate", cfg, str(tmp_path / "b"), "--jobs", "4")[0] == 0
    a = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert a == sorted(p.name for p in (tmp_path / "b").iterdir())
    assert len([n for n in a if n.startswith("trace_")]) == 10
    for name in a:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    summary = json.loads((tmp_path / "a" / "summary.json").read_text())
    assert summary["chain_arc_presence"] == 1.0 and summary["schema_version"] == 1


def test_simulate_live_count_mean(tmp_path, capsys):
    run(capsys, "simulate", str(CONFIGS / "simulate_churn.json"), str(tmp_path))
    s = json.loads((tmp_path / "summary.json").read_text())
    assert abs(s["live_count_mean"] - 50) <= 3 * s["live_count_std_error"]


def test_simulate_seed_from_entropy_is_printed(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"schema_version": 1, "lambda": 1, "mu": 0,
                               "horizon": {"arrivals": 5}}))
    code, _, err = run(capsys, "simulate", str(cfg), str(tmp_path / "o"))
    assert code == 0 and err.startswith("seed: ")
    seed = int(err.split()[1])
    assert json.loads((tmp_path / "o" / "summary.json").read_text())["seed"] == seed


def test_simulate_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "schema_version": 1,\n "lambda": 1\n "mu": 0}\n')
    code, _, err = run(capsys, "simulate", str(bad), str(tmp_path / "o"))
    assert code == 1 and f"{bad}:4:" in err
    bad.write_text('{"schema_version": 1, "lambda": 1, "mu": 0, "horizon": {}}')
    code, _, err = run(capsys, "simulate", str(bad), str(tmp_path / "o"))
    assert code == 1 and "horizon" in err
    code, _, err = run(capsys, "simulate", str(tmp_path / "missing.json"), str(tmp_path / "o"))
    assert code == 1 and "missing.json" in err


def test_compare_pass_and_fail_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "cmp.json"
    cfg.write_text(json.dumps({"schema_version": 1, "seed": 5, "checks": [
        {"kind": "urn_vs_embedded", "n": 20, "samples": 200000},
        {"kind": "out_degree_tails", "n": [100], "epsilon": [0.5], "samples": 20000},
    ]}))
    code, out, _ = run(capsys, "compare", str(cfg), "--output", str(tmp_path / "r"))
    assert code == 0 and "overall: PASS" in out
    report = json.loads((tmp_path / "r" / "report.json").read_text())
    assert report["schema_version"] == 1 and report["passed"]
    long = rows((tmp_path / "r" / "report_long.csv").read_text())
    assert long[0] == ["check", "passed", "metric", "value"]

    cfg.write_text(json.dumps({"schema_version": 1, "seed": 5, "checks": [
        {"kind": "urn_vs_embedded", "n": 20, "samples": 1000, "tv_max": 1e-6}]}))
    code, out, _ = run(capsys, "compare", str(cfg))
    assert code == 2 and "[FAIL]" in out


def test_compare_rejects_unknown_kind(tmp_path, capsys):
    cfg = tmp_path / "cmp.json"
    cfg.write_text(json.dumps({"schema_version": 1, "checks": [{"kind": "nope"}]}))
    code, _, _ = run(capsys, "compare", str(cfg))
    assert code == 1
