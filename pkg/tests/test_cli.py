import json
import subprocess
import sys
from pathlib import Path

import pytest

from uttp import mirror_and_assign, parse_distance_matrix, render_schedule, rotate
from uttp.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_nl4_text(capsys):
    code, out, _ = run_cli(capsys, "solve", str(INSTANCES / "nl4.txt"))
    assert code == 0
    assert "total_distance: 8276" in out
    assert "gap_percent: 2.9" in out
    assert "tsp_mode: exact" in out


def test_solve_odd_team_count(tmp_path, capsys):
    bad = tmp_path / "five.txt"
    bad.write_text(
        "0 1 1 1 1\n1 0 1 1 1\n1 1 0 1 1\n1 1 1 0 1\n1 1 1 1 0\n"
    )
    code, _, err = run_cli(capsys, "solve", str(bad))
    assert code == 2
    assert "even" in err


def test_solve_unreadable_file(capsys):
    code, _, err = run_cli(capsys, "solve", "/nonexistent/file.txt")
    assert code == 2
    assert "cannot read" in err


def test_solve_formats_agree(capsys):
    code, text_out, _ = run_cli(capsys, "solve", str(INSTANCES / "nl4.txt"))
    assert code == 0
    code, csv_out, _ = run_cli(
        capsys, "solve", str(INSTANCES / "nl4.txt"), "--format", "csv"
    )
    assert code == 0
    header, row = csv_out.strip().splitlines()[:2]
    csv_doc = dict(zip(header.split(","), row.split(",")))
    assert csv_doc["total_distance"] == "8276"
    assert csv_doc["gap_percent"] == "2.9"
    assert "total_distance: 8276" in text_out and "gap_percent: 2.9" in text_out

    code, json_out, _ = run_cli(
        capsys, "solve", str(INSTANCES / "nl4.txt"), "--format", "json"
    )
    doc = json.loads(json_out)
    assert doc["total_distance"] == 8276
    assert doc["lower_bound"] == 8044
    assert doc["tau"] == 2011
    assert doc["certificate"]["ratio"]["ok"]


def test_solve_dump_candidates(capsys):
    code, out, _ = run_cli(
        capsys, "solve", str(INSTANCES / "nl4.txt"), "--format", "json", "--dump-candidates"
    )
    doc = json.loads(out)
    assert len(doc["candidates"]) == 2 * 3 * 6
    assert min(c["total"] for c in doc["candidates"]) == 8276


def test_solve_tour_file_mode(tmp_path, capsys):
    tour = tmp_path / "nl4.tour"
    tour.write_text("0 2 1 3\n")
    code, out, _ = run_cli(
        capsys, "solve", str(INSTANCES / "nl4.txt"), "--tsp", f"tour-file={tour}"
    )
    assert code == 0
    assert "total_distance: 8276" in out
    assert "tsp_mode: tour-file" in out
    assert "guarantees_valid: False" in out


def test_solve_stdin(capsys, monkeypatch):
    text = (INSTANCES / "nl4.txt").read_text()
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code, out, _ = run_cli(capsys, "solve", "-")
    assert code == 0
    assert "total_distance: 8276" in out


def test_validate_good_schedule(tmp_path, capsys):
    sched = mirror_and_assign(10)
    path = tmp_path / "sched.txt"
    path.write_text(render_schedule(sched, "rows"))
    code, out, _ = run_cli(capsys, "validate", str(path))
    assert code == 0
    assert "drr: pass" in out
    assert "mirrored: pass" in out
    assert "no_repeater: pass" in out
    assert "team 9: max home streak 9, max away streak 9" in out


def test_validate_rotated_schedule(tmp_path, capsys):
    sched = rotate(mirror_and_assign(10), 5)
    path = tmp_path / "sched.txt"
    path.write_text(render_schedule(sched, "rows"))
    code, out, _ = run_cli(capsys, "validate", str(path))
    assert code == 0
    assert "drr: pass" in out


def test_validate_corrupted_schedule(tmp_path, capsys):
    sched = mirror_and_assign(4)
    lines = render_schedule(sched, "rows").splitlines()
    lines[0] = lines[0].replace("3H", "3A", 1)  # flip one venue flag
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run_cli(capsys, "validate", str(path))
    assert code == 3
    assert "violation" in out


def test_validate_with_instance(tmp_path, capsys):
    sched = mirror_and_assign(4)
    path = tmp_path / "sched.txt"
    path.write_text(render_schedule(sched, "rows"))
    code, out, _ = run_cli(capsys, "validate", str(path), str(INSTANCES / "nl4.txt"))
    assert code == 0
    assert "total_distance:" in out


def test_validate_malformed_file(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("not a schedule\n")
    code, _, err = run_cli(capsys, "validate", str(path))
    assert code == 3
    assert "malformed" in err


def test_bench_exact(capsys):
    code, out, _ = run_cli(capsys, "bench", str(INSTANCES), "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,n,approx,n_tsp,gap_percent,best_ub,note"
    rows = {tuple(l.split(",")[:2]): l.split(",") for l in lines[1:]}
    assert rows[("nl", "4")][2:6] == ["8276", "8044", "2.9", "8276"]
    assert rows[("nl", "6")][2:5] == ["20547", "17826", "15.3"]
    assert rows[("nl", "8")][2:5] == ["33190", "27840", "19.2"]


def test_bench_text_matches_csv_numbers(capsys):
    code, text_out, _ = run_cli(capsys, "bench", str(INSTANCES))
    assert code == 0
    assert "8276" in text_out and "8044" in text_out and "2.9" in text_out
    assert "family nl" in text_out


def test_bench_skips_beyond_cap(capsys):
    code, out, _ = run_cli(
        capsys, "bench", str(INSTANCES), "--hk-cap", "4", "--format", "csv"
    )
    assert code == 0
    skipped = [l for l in out.splitlines() if "skipped" in l]
    assert len(skipped) == 2  # nl6 and nl8 need tours beyond a cap of 4


def test_bench_christofides_rows_labeled(capsys):
    code, out, _ = run_cli(
        capsys,
        "bench",
        str(INSTANCES),
        "--tsp",
        "christofides",
        "--hk-cap",
        "4",
        "--format",
        "csv",
    )
    assert code == 0
    for line in out.splitlines()[1:]:
        family, n, approx, bound, gap, ub, note = line.split(",")
        assert "christofides" in note
        if int(n) > 4:
            assert bound == ""
            assert "no-bound" in note


def test_bench_tour_files_extend_cap(tmp_path, capsys):
    tours = tmp_path / "tours"
    tours.mkdir()
    (tours / "nl6.tour").write_text("0 1 3 5 4 2\n")  # any permutation works
    code, out, _ = run_cli(
        capsys,
        "bench",
        str(INSTANCES),
        "--hk-cap",
        "4",
        "--tours",
        str(tours),
        "--format",
        "csv",
    )
    assert code == 0
    nl6 = next(l for l in out.splitlines() if l.startswith("nl,6"))
    assert "tour-file" in nl6
    assert "skipped" not in nl6


def test_bench_zero_matrix_gap_na(tmp_path, capsys):
    d = tmp_path / "bench"
    d.mkdir()
    (d / "zero4.txt").write_text("0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n")
    code, out, _ = run_cli(capsys, "bench", str(d), "--format", "csv")
    assert code == 0
    assert "zero,4,0,0,n/a" in out


def test_bench_empty_directory(tmp_path, capsys):
    d = tmp_path / "empty"
    d.mkdir()
    code, _, err = run_cli(capsys, "bench", str(d))
    assert code == 2
    assert "no instance files" in err


def test_oracle_cli(capsys):
    code, out, _ = run_cli(capsys, "oracle", str(INSTANCES / "nl4.txt"))
    assert code == 0
    assert "total_distance: 8276" in out
    assert "tsp_mode: oracle" in out
    assert "explored_nodes:" in out


def test_oracle_cli_rejects_big(capsys):
    code, _, err = run_cli(capsys, "oracle", str(INSTANCES / "nl6.txt"))
    assert code == 2
    assert "n=4" in err


def test_gen_deterministic(capsys):
    code, out1, _ = run_cli(capsys, "gen", "--n", "6", "--seed", "3")
    assert code == 0
    code, out2, _ = run_cli(capsys, "gen", "--n", "6", "--seed", "3")
    assert out1 == out2
    D = parse_distance_matrix(out1)
    assert D.n == 6
    assert D.metric


def test_gen_to_file_then_solve(tmp_path, capsys):
    path = tmp_path / "inst.txt"
    code, _, _ = run_cli(capsys, "gen", "--n", "6", "--seed", "4", "--out", str(path))
    assert code == 0
    code, out, _ = run_cli(capsys, "solve", str(path))
    assert code == 0
    assert "guarantees_valid: True" in out


def test_schedule_out_round_trips(tmp_path, capsys):
    out_path = tmp_path / "rows.txt"
    code, _, _ = run_cli(
        capsys, "solve", str(INSTANCES / "nl4.txt"), "--schedule-out", str(out_path)
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "validate", str(out_path), str(INSTANCES / "nl4.txt"))
    assert code == 0
    assert "total_distance: 8276" in out


def test_solve_non_metric_warns(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 1 9\n1 0 1 1\n1 1 0 1\n9 1 1 0\n")
    code, out, err = run_cli(capsys, "solve", str(bad))
    assert code == 0
    assert "triangle inequality" in err
    assert "guarantees_valid: False" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "uttp", "solve", str(INSTANCES / "nl4.txt"), "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "8276" in proc.stdout
