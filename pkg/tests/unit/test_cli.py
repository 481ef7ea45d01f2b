"""Command-line entrypoint tests."""

import csv
import json

import pytest

from app.cli import main


def _run(capsys, *argv: str) -> tuple[int, dict | None]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def pigeonhole_file(tmp_path):
    path = tmp_path / "ph_3_2.model"
    report = str(tmp_path / "g.json")
    assert main(["generate", "pigeonhole", "3", str(path), "--report", report]) == 0
    return path


def test_generate_report(tmp_path, capsys):
    code, report = _run(
        capsys,
        "generate",
        "pairwise",
        "4",
        str(tmp_path / "pw.model"),
        "--evidence",
        "card ge 1 1 2",
    )
    assert code == 0
    assert report["command"] == "generate"
    assert report["results"]["num_vars"] == 4
    assert report["results"]["factors"] == 7
    assert "card ge 1 1 2" in (tmp_path / "pw.model").read_text(encoding="utf-8")


def test_generate_then_exact(pigeonhole_file, capsys):
    code, report = _run(capsys, "exact", str(pigeonhole_file))
    assert code == 0
    results = report["results"]
    assert results["orbit_count"] == 13
    assert results["prob_evidence"] == 1.0
    assert results["aut_order"] == "12"
    assert results["mpe_bits"] == "000000"
    assert results["mpe_log_score"] == 12.0
    assert report["timings"] is None
    assert report["status"] == "done"


def test_exact_with_census_marginals_and_timings(tmp_path, pigeonhole_file, capsys):
    census = tmp_path / "census.jsonl"
    code, report = _run(
        capsys,
        "exact",
        str(pigeonhole_file),
        "--census-out",
        str(census),
        "--marginals",
        "--timings",
    )
    assert code == 0
    assert len(census.read_text(encoding="utf-8").splitlines()) == 13
    assert len(report["results"]["marginals"]) == 6
    assert set(report["timings"]) == {"census_seconds", "total_seconds"}


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.model"
    bad.write_text("vars 2\nclause hard 1 1\n", encoding="utf-8")
    assert main(["exact", str(bad)]) == 2
    assert "line 2, column 15" in capsys.readouterr().err


def test_missing_model_file_exits_2(tmp_path):
    assert main(["exact", str(tmp_path / "missing.model")]) == 2


def test_all_zero_mass_exits_3(tmp_path):
    path = tmp_path / "contradiction.model"
    path.write_text("vars 1\nclause hard 1\nclause hard -1\n", encoding="utf-8")
    report_path = tmp_path / "error.json"
    assert main(["exact", str(path), "--report", str(report_path)]) == 3
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["status"] == "error"
    assert report["results"] == {"exit_code": 3}
    assert report["message"]


def test_error_report_goes_to_stdout_without_a_report_path(tmp_path, capsys):
    code, report = _run(capsys, "exact", str(tmp_path / "missing.model"))
    assert code == 2
    assert report["status"] == "error"
    assert report["command"] == "exact"
    assert report["results"]["exit_code"] == 2


def test_tveval_over_state_cap_exits_4(tmp_path):
    path = tmp_path / "pw13.model"
    report = str(tmp_path / "g.json")
    assert main(["generate", "pairwise", "13", str(path), "--report", report]) == 0
    assert main(["tveval", str(path)]) == 4


def test_sample_requires_seed(pigeonhole_file):
    with pytest.raises(SystemExit) as excinfo:
        main(["sample", str(pigeonhole_file)])
    assert excinfo.value.code == 2


def test_invalid_request_exits_2(pigeonhole_file):
    assert main(["sample", str(pigeonhole_file), "--seed", "1", "--iterations", "0"]) == 2


def test_sample_report(tmp_path, pigeonhole_file, capsys):
    samples = tmp_path / "samples.csv"
    code, report = _run(
        capsys,
        "sample",
        str(pigeonhole_file),
        "--seed",
        "42",
        "--iterations",
        "50",
        "--estimand",
        "card ge 1 1 2 3 4 5 6",
        "--out",
        str(samples),
    )
    assert code == 0
    assert report["seed"] == 42
    assert report["results"]["samples"] == 50
    assert 0.0 <= report["results"]["estimate"] <= 1.0
    assert len(samples.read_text(encoding="utf-8").splitlines()) == 51


@pytest.mark.parametrize("kind", ["orbit_jump", "lifted", "gibbs"])
def test_reports_are_byte_identical_across_reruns(tmp_path, pigeonhole_file, kind):
    outputs = []
    for i in range(2):
        report = tmp_path / f"{kind}_{i}.json"
        argv = ["sample", str(pigeonhole_file), "--seed", "7", "--kind", kind, "--iterations", "40"]
        assert main([*argv, "--report", str(report)]) == 0
        outputs.append(report.read_bytes())
    assert outputs[0] == outputs[1]


def test_exact_reports_are_byte_identical(tmp_path, pigeonhole_file):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["exact", str(pigeonhole_file), "--report", str(first)]) == 0
    assert main(["exact", str(pigeonhole_file), "--report", str(second), "--threads", "1"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_tveval_csv(tmp_path, pigeonhole_file, capsys):
    out = tmp_path / "tv.csv"
    argv = ["tveval", str(pigeonhole_file), "-T", "10", "-k", "2", "--out", str(out)]
    code, report = _run(capsys, *argv)
    assert code == 0
    assert report["results"]["num_orbits"] == 13
    assert report["results"]["burnside_steps"] == 2
    with out.open(encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["t", "tv_orbit_jump", "tv_lifted", "tv_gibbs", "upper_bound"]
    assert len(rows) == 12


def test_bench_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, report = _run(capsys, "bench", "pigeonhole", "2:3", "--out", str(out))
    assert code == 0
    assert [row["orbit_count"] for row in report["results"]["instances"]][-1] == 13
    with out.open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert [row["size"] for row in rows] == ["2", "3"]
    assert all(row["brute_force_log_z"] for row in rows)
    assert float(rows[1]["log_z"]) == pytest.approx(float(rows[1]["brute_force_log_z"]), rel=1e-9)
