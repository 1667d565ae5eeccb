import json

import pytest

from symcirc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_partitions_count(capsys):
    code, out = run_cli(capsys, "partitions", "--count", "--n", "4", "--d", "3")
    assert code == 0
    assert json.loads(out)["count"] == 4
    code, out = run_cli(
        capsys, "partitions", "--count", "--n", "0", "--d", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# schema=symcirc.")
    assert lines[1] == "n,d,count"
    assert lines[2] == "0,5,1"


def test_partitions_fig3_pattern(tmp_path, capsys):
    out_file = tmp_path / "fig3.csv"
    code, _ = run_cli(
        capsys,
        "partitions", "--fig3", "--d-list", "2,3,4", "--k-max", "60",
        "--format", "csv", "--out", str(out_file),
    )
    assert code == 0
    rows = [
        line.split(",")
        for line in out_file.read_text().splitlines()
        if line and not line.startswith(("#", "k,"))
    ]
    counts = {(int(k), int(d)): int(c) for k, d, c in rows}
    # d=2 plateau: flat exactly at odd k
    for k in range(2, 61):
        flat = counts[(k, 2)] == counts[(k - 1, 2)]
        assert flat == (k % 2 == 1)
        assert counts[(k, 3)] > counts[(k - 1, 3)]
    # figure rendered alongside the delimited output
    assert (tmp_path / "fig3.png").exists()


def test_partitions_fig2(tmp_path, capsys):
    out_file = tmp_path / "fig2.csv"
    code, _ = run_cli(
        capsys,
        "partitions", "--fig2", "--d-list", "2,3", "--n", "500",
        "--k-max", "500", "--k-step", "50", "--format", "csv",
        "--out", str(out_file),
    )
    assert code == 0
    assert out_file.exists() and (tmp_path / "fig2.png").exists()
    header = out_file.read_text().splitlines()[1]
    assert header == "k,d,ratio"


def test_no_plot_flag(tmp_path, capsys):
    out_file = tmp_path / "f.csv"
    code, _ = run_cli(
        capsys,
        "partitions", "--fig3", "--d-list", "2", "--k-max", "10",
        "--format", "csv", "--out", str(out_file), "--no-plot",
    )
    assert code == 0
    assert not (tmp_path / "f.png").exists()


def test_partitions_monotonicity_and_facts(capsys):
    code, out = run_cli(capsys, "partitions", "--monotonicity", "--d", "3", "--k-max", "50")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run_cli(capsys, "partitions", "--facts", "--m", "4", "--d", "4")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run_cli(capsys, "partitions", "--facts", "--m", "3", "--d", "4")
    assert code == 1
    assert [2, 2] in json.loads(out)["fact2_failures"]


def test_rep_matrix_output(capsys):
    code, out = run_cli(
        capsys, "rep", "--shape", "3,1", "--perm", "1,2,4,3", "--format", "csv"
    )
    assert code == 0
    rows = [r for r in out.strip().splitlines() if not r.startswith("#")]
    first = [float(x) for x in rows[0].split(",")]
    assert first[0] == pytest.approx(1.0 / 3.0, abs=1e-15)
    # 17 significant digits requested
    assert "0.33333333333333331" in rows[0]


def test_rep_identity_default(capsys):
    code, out = run_cli(capsys, "rep", "--shape", "2,2")
    payload = json.loads(out)
    assert code == 0
    assert payload["perm"] == [1, 2, 3, 4]
    assert payload["character"] == 2.0


def test_rep_intertwiner(capsys):
    code, out = run_cli(capsys, "rep", "--shape", "3,1", "--intertwiner", "2,1,1")
    payload = json.loads(out)
    assert code == 0 and payload["exists"]
    mat = payload["matrix"]
    assert abs(abs(mat[0][1]) - 1.0) < 1e-9


def test_closure_report(capsys):
    code, out = run_cli(capsys, "closure", "--n", "4", "--d", "4", "--k", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["dim"] == 13
    assert payload["center_dim"] == 2
    assert payload["derived_dim"] == 11
    verdicts = {
        frozenset(map(tuple, p["shapes"])): p["verdict"] for p in payload["pairs"]
    }
    assert verdicts[frozenset({(3, 1), (2, 1, 1)})] == "correlated"


def test_check_semiuni_and_expect(capsys):
    code, out = run_cli(capsys, "check", "--mode", "semiuni", "--n", "4", "--d", "4", "--k", "3")
    assert code == 0
    assert json.loads(out)["verdict"] == "semi-universal"
    # verdicts are data: a failing verdict still exits 0 without --expect
    code, out = run_cli(capsys, "check", "--mode", "semiuni", "--n", "4", "--d", "4", "--k", "2")
    assert code == 0
    assert json.loads(out)["verdict"] == "not semi-universal"
    code, _ = run_cli(
        capsys, "check", "--mode", "semiuni", "--n", "4", "--d", "4", "--k", "2",
        "--expect", "fail",
    )
    assert code == 0
    code, _ = run_cli(
        capsys, "check", "--mode", "semiuni", "--n", "4", "--d", "4", "--k", "2",
        "--expect", "pass",
    )
    assert code == 1


def test_check_other_modes(capsys):
    code, out = run_cli(capsys, "check", "--mode", "vdet", "--d", "3", "--gate", "r+")
    assert code == 0 and json.loads(out)["member"] is False
    code, out = run_cli(
        capsys, "check", "--mode", "vdet", "--d", "3", "--gate", "exchange:1,2:0.7"
    )
    assert json.loads(out)["member"] is True
    code, out = run_cli(capsys, "check", "--mode", "trhc", "--d", "3", "--ham", "swap:1,2")
    assert json.loads(out)["reachable"] is True
    code, out = run_cli(
        capsys, "check", "--mode", "trhc", "--d", "3", "--ham", "sym-projector"
    )
    assert json.loads(out)["reachable"] is False
    code, out = run_cli(capsys, "check", "--mode", "gate4", "--d", "4", "--gate", "r+")
    payload = json.loads(out)
    assert payload["breaks"] is True
    assert payload["trace_abs"] == [1.0, 3.0]


def test_ancilla_commands(capsys):
    code, out = run_cli(capsys, "ancilla", "--pair", "1", "--d", "3")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run_cli(capsys, "ancilla", "--wedge", "--d", "4")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run_cli(capsys, "ancilla", "--lift", "--nsys", "1", "--d", "2")
    payload = json.loads(out)
    assert code == 0 and payload["centerless_ok"] and payload["invariant_ok"]
    code, out = run_cli(
        capsys, "ancilla", "--lift", "--nsys", "1", "--d", "2", "--ham", "traceless-diag"
    )
    payload = json.loads(out)
    assert code == 0 and payload["centerless_ok"] and not payload["invariant_ok"]


def test_design_commands(capsys):
    code, out = run_cli(capsys, "design", "--n", "9", "--d", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "n,d,third_min,t_max,matches_formula"
    assert lines[2] == "9,5,27,26,True"
    code, out = run_cli(capsys, "design", "--n-range", "9:14", "--d", "3")
    assert code == 0
    assert all(r["matches_formula"] for r in json.loads(out)["reports"])
    code, out = run_cli(capsys, "design", "--moments", "--n", "5")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run_cli(capsys, "design", "--witness", "--n", "4", "--d", "3")
    payload = json.loads(out)
    assert payload["correlated_pairs"] == [[[3, 1], [2, 1, 1]]]


def test_check_table_format(capsys):
    code, out = run_cli(
        capsys, "check", "--mode", "semiuni", "--n", "4", "--d", "3", "--k", "2",
        "--format", "table",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["kind", "shapes", "m_or_rank", "verdict"]
    assert any("correlated" in line and "[3,1]|[2,1,1]" in line for line in lines)


def test_determinism_byte_identical(capsys):
    args = ("check", "--mode", "semiuni", "--n", "4", "--d", "3", "--k", "2", "--seed", "3")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_guard_violation_exit_code(capsys):
    code = main(["ancilla", "--lift", "--nsys", "5", "--d", "3"])
    err = capsys.readouterr().err
    assert code == 2
    assert "guard" in err


def test_bad_tol_rejected(capsys):
    code = main(["partitions", "--count", "--n", "3", "--d", "3", "--tol", "0.5"])
    assert code == 2
