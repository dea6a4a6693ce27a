import json
import subprocess
import sys

import pytest

from qcpart.cli import RunReport, main, parse_gen_spec, parse_int_list
from conftest import SAMPLE3, SAMPLE4, SAMPLE4H


@pytest.fixture
def sample4(tmp_path):
    p = tmp_path / "sample4.qc"
    p.write_text(SAMPLE4)
    return str(p)


@pytest.fixture
def sample3(tmp_path):
    p = tmp_path / "sample3.qc"
    p.write_text(SAMPLE3)
    return str(p)


@pytest.fixture
def sample4h(tmp_path):
    p = tmp_path / "sample4h.qc"
    p.write_text(SAMPLE4H)
    return str(p)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- argument helpers ----------------------------------------------------------

def test_parse_int_list():
    assert parse_int_list("3") == [3]
    assert parse_int_list("3,5") == [3, 5]
    assert parse_int_list("1..4") == [1, 2, 3, 4]
    assert parse_int_list("1,3..5,9") == [1, 3, 4, 5, 9]
    with pytest.raises(ValueError):
        parse_int_list("4..2")
    with pytest.raises(ValueError):
        parse_int_list("a")


def test_parse_gen_spec():
    assert parse_gen_spec("qft:4") == ("qft", [4])
    assert parse_gen_spec("qft:4..6") == ("qft", [4, 5, 6])
    with pytest.raises(ValueError):
        parse_gen_spec("qft")
    with pytest.raises(ValueError):
        parse_gen_spec("nope:4")


# --- partition -----------------------------------------------------------------

def test_partition_json(capsys, sample4):
    code, out, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                           "--format", "json", "--no-timing")
    assert code == 0
    data = json.loads(out)
    assert data["cost"] == 4
    assert data["assignment"] == [[1], [2], [3, 4]]
    assert data["ratio_r"] == "0.50"
    assert data["width"] == 4 and data["gate_count"] == 7
    assert "wall_time_ms" not in data


def test_partition_text_k1(capsys, sample4):
    code, out, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "1")
    assert code == 0
    assert "teleportations: 0" in out
    assert "p0: q1 q2 q3 q4" in out
    assert "wall time:" in out


def test_partition_table_csv(capsys, sample4):
    code, out, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                           "--table", "--no-timing")
    assert code == 0
    lines = out.splitlines()
    start = lines.index("index,qubits,k=1,k=2,k=3")
    table = {row.split(",")[0]: row for row in lines[start + 1:]}
    # level-2 column, by subset index
    expected = {"3": "1", "5": "1", "6": "2", "7": "2", "9": "0", "10": "0",
                "11": "0", "12": "3", "13": "1", "14": "2", "15": "2"}
    for idx, val in expected.items():
        assert table[idx].split(",")[-2] == val
    assert table["15"].split(",")[-1] == "4"  # level-3 optimum of the full set
    assert table["1"].endswith("0,N.A,N.A")


def test_partition_trace_json(capsys, sample4h):
    code, out, _ = run_cli(capsys, "partition", "--circuit", sample4h, "--parts", "2",
                           "--format", "json", "--no-timing", "--trace")
    data = json.loads(out)
    assert code == 0 and data["cost"] == 1
    kinds = [r["kind"] for r in data["trace"]]
    assert kinds.count("global") == 1 and kinds[1] == "global"
    assert data["trace"][1]["rendering"] == "CNOT(q3,p1,q1,p0)"


def test_partition_gen_input_with_reference(capsys):
    code, out, _ = run_cli(capsys, "partition", "--gen", "qft:16", "--parts", "3",
                           "--format", "json", "--no-timing")
    data = json.loads(out)
    assert code == 0
    assert data["cost"] == 29
    assert data["ratio_r"] == "0.91"
    assert data["references"]["ratio"]["reported_r"] == 0.4
    assert data["references"]["ratio"]["k"] == 3


def test_partition_max_part_size(capsys, sample4):
    code, out, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "2",
                           "--max-part-size", "2", "--format", "json", "--no-timing")
    data = json.loads(out)
    assert code == 0
    assert data["cost"] == 3
    assert data["assignment"] == [[1, 2], [3, 4]]
    assert data["flags"]["constrained"] is True
    assert any("capped" in n for n in data["notes"])


def test_partition_dot_export(capsys, sample3, tmp_path):
    dot = tmp_path / "graph.dot"
    code, _, err = run_cli(capsys, "partition", "--circuit", sample3, "--parts", "2",
                           "--dot", str(dot))
    assert code == 0
    assert "wrote bipartite graph" in err
    content = dot.read_text()
    assert "g1 -- q1;" in content


def test_partition_csv_format_warns_on_trace(capsys, sample4):
    code, out, err = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "2",
                             "--format", "csv", "--no-timing", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name,width,gates,k,cost,ratio_r,wall_time_ms"
    assert lines[1] == "sample4,4,7,2,2,0.25,"
    assert "ignoring" in err


def test_partition_deterministic_output(capsys, sample4):
    _, out1, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                         "--format", "json", "--no-timing", "--table", "--trace")
    _, out2, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                         "--format", "json", "--no-timing", "--table", "--trace")
    assert out1 == out2


def test_report_json_round_trip(capsys, sample4):
    _, out, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                        "--format", "json", "--no-timing", "--trace", "--table")
    r1 = RunReport.from_json(out)
    r2 = RunReport.from_json(r1.to_json())
    assert r1 == r2
    assert r1.to_json() == out.strip()


# --- exit codes -----------------------------------------------------------------

def test_partition_threads_flag_output_identical(capsys, sample4):
    _, out1, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                         "--format", "json", "--no-timing")
    _, out2, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "3",
                         "--format", "json", "--no-timing", "--threads", "4")
    assert json.loads(out1)["assignment"] == json.loads(out2)["assignment"]
    assert json.loads(out1)["cost"] == json.loads(out2)["cost"]


def test_partition_rejects_two_inputs(capsys, sample4):
    code, _, err = run_cli(capsys, "partition", "--circuit", sample4, "--gen", "qft:4",
                           "--parts", "2")
    assert code == 2
    assert "not both" in err


def test_exit_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.qc"
    bad.write_text("cnot 1 2\n")
    code, _, err = run_cli(capsys, "partition", "--circuit", str(bad), "--parts", "2")
    assert code == 1
    assert "header" in err


def test_exit_infeasible(capsys, sample4):
    code, _, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "5")
    assert code == 2
    code, _, _ = run_cli(capsys, "partition", "--circuit", sample4, "--parts", "0")
    assert code == 2
    code, _, _ = run_cli(capsys, "partition", "--circuit", "/nonexistent.qc", "--parts", "2")
    assert code == 2


def test_exit_size_cap(capsys, tmp_path):
    wide = tmp_path / "wide.qc"
    wide.write_text("qubits 25\n")
    code, _, err = run_cli(capsys, "partition", "--circuit", str(wide), "--parts", "2")
    assert code == 3
    assert "--force" in err
    # --force lifts the guardrail; K=1 is cheap at any width
    code, out, _ = run_cli(capsys, "partition", "--circuit", str(wide), "--parts", "1",
                           "--force", "--format", "json", "--no-timing")
    assert code == 0
    assert json.loads(out)["cost"] == 0


# --- oracle ---------------------------------------------------------------------

def test_oracle_costs(capsys, sample4):
    for parts, cost in [("3", 4), ("4", 7)]:
        code, out, _ = run_cli(capsys, "oracle", "--circuit", sample4, "--parts", parts,
                               "--format", "json", "--no-timing")
        assert code == 0
        assert json.loads(out)["cost"] == cost


def test_oracle_three_qubit_sample(capsys, sample3):
    code, out, _ = run_cli(capsys, "oracle", "--circuit", sample3, "--parts", "2",
                           "--format", "json", "--no-timing")
    assert code == 0
    assert json.loads(out)["cost"] == 1


def test_oracle_compare_dp(capsys, sample4):
    code, out, _ = run_cli(capsys, "oracle", "--circuit", sample4, "--parts", "3",
                           "--format", "json", "--no-timing", "--compare-dp")
    data = json.loads(out)
    assert code == 0
    assert data["dp_cost"] == 4 and data["dp_match"] is True


def test_oracle_cap_exit(capsys, tmp_path):
    wide = tmp_path / "wide.qc"
    wide.write_text("qubits 13\n")
    code, _, err = run_cli(capsys, "oracle", "--circuit", str(wide), "--parts", "2")
    assert code == 3
    assert "QCPART_ORACLE_CAP" in err


# --- bench ----------------------------------------------------------------------

def test_bench_k_sweep(capsys, sample4):
    code, out, _ = run_cli(capsys, "bench", "--circuit", sample4, "--parts", "1..4",
                           "--no-timing")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name,width,gates,k,cost,ratio_r,wall_time_ms,error"
    costs = [int(line.split(",")[4]) for line in lines[1:]]
    assert costs == [0, 2, 4, 7]
    assert costs == sorted(costs)


def test_bench_generator_grid(capsys):
    code, out, _ = run_cli(capsys, "bench", "--gen", "qft:4..8", "--parts", "3,5",
                           "--no-timing")
    assert code == 0
    lines = out.splitlines()[1:]
    assert len(lines) == 10
    errors = 0
    for line in lines:
        name, width, _, k, cost, ratio, _, err = line.split(",")
        n, kk = int(width), int(k)
        if err:
            # the only infeasible cell in the grid: 5 parts from 4 qubits
            assert (n, kk) == (4, 5)
            errors += 1
            continue
        c = int(cost)
        assert c == n * (n - 1) // 2 - (n - kk + 1) * (n - kk) // 2
    assert errors == 1


def test_bench_records_row_errors_and_continues(capsys, sample4):
    code, out, _ = run_cli(capsys, "bench", "--circuit", sample4, "--circuit",
                           "/nonexistent.qc", "--parts", "2,9", "--no-timing")
    assert code == 0
    lines = out.splitlines()[1:]
    assert len(lines) == 4
    ok_row = lines[0].split(",")
    assert ok_row[4] == "2" and ok_row[-1] == ""
    assert "cannot split" in lines[1]  # k=9 on a 4-qubit circuit
    assert lines[2].split(",")[0] == "/nonexistent.qc" and lines[2].split(",")[3] == "2"


def test_bench_no_sources(capsys):
    code, out, _ = run_cli(capsys, "bench", "--parts", "2")
    assert code == 0
    assert out.splitlines() == ["name,width,gates,k,cost,ratio_r,wall_time_ms,error"]


# --- gen ------------------------------------------------------------------------

def test_gen_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen", "qft", "--qubits", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "qubits 3"
    assert len(lines) == 7  # header + 6 gates


def test_gen_single_qubit(capsys):
    code, out, _ = run_cli(capsys, "gen", "qft", "--qubits", "1")
    assert code == 0
    assert out.splitlines() == ["qubits 1", "h 1"]


def test_gen_output_file(capsys, tmp_path):
    target = tmp_path / "qft4.qc"
    code, out, err = run_cli(capsys, "gen", "qft", "--qubits", "4", "--output", str(target))
    assert code == 0 and out == ""
    assert "wrote" in err
    assert target.read_text().startswith("qubits 4\n")


def test_gen_bad_size(capsys):
    code, _, err = run_cli(capsys, "gen", "qft", "--qubits", "0")
    assert code == 2
    assert "must be >= 1" in err


def test_gen_unknown_generator(capsys):
    code, _, err = run_cli(capsys, "gen", "ghz", "--qubits", "3")
    assert code == 2
    assert "unknown generator" in err


# --- .real ingestion through the CLI ---------------------------------------------

def test_real_import_with_decomposition(capsys, tmp_path):
    real = tmp_path / "toff.real"
    real.write_text(".numvars 3\n.variables a b c\n.begin\nt3 a b c\nt2 a b\n.end\n")
    code, _, err = run_cli(capsys, "partition", "--circuit", str(real), "--parts", "2")
    assert code == 1 and "decompose_mct" in err
    code, out, _ = run_cli(capsys, "partition", "--circuit", str(real), "--parts", "2",
                           "--decompose-mct", "--format", "json", "--no-timing")
    data = json.loads(out)
    assert code == 0
    assert data["flags"]["approx_decomposition"] is True
    assert any("pairwise" in n for n in data["notes"])
    assert data["gate_count"] == 3


# --- process-level smoke ----------------------------------------------------------

def test_module_entry_point(sample4):
    proc = subprocess.run(
        [sys.executable, "-m", "qcpart.cli", "partition", "--circuit", sample4,
         "--parts", "3", "--format", "json", "--no-timing"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cost"] == 4
    assert proc.stderr == ""
