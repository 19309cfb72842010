import json
import subprocess
import sys

import pytest

K3_JSON = json.dumps({"n": 3, "edges": [[0, 1, 1.0], [0, 2, 1.0], [1, 2, 1.0]]})
TWO_NODE_JSON = json.dumps({"n": 2, "edges": [[0, 1, 1.0]]})
DISCONNECTED_JSON = json.dumps({"n": 4, "edges": [[0, 1, 1.0], [2, 3, 1.0]]})


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "specgrow.cli", *args],
                          capture_output=True, text=True)


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(K3_JSON)
    return str(path)


def test_measure_known_outputs(tmp_path, k3_file):
    out = run_cli("measure", k3_file, "--measure", "zeta:q=1")
    assert out.returncode == 0
    assert out.stdout.strip() == "0.666666666667"

    out = run_cli("measure", k3_file, "--measure", "hankel")
    assert out.stdout.strip() == "0.166666666667"

    two = tmp_path / "two.json"
    two.write_text(TWO_NODE_JSON)
    out = run_cli("measure", str(two), "--measure", "volume")
    assert out.stdout.strip() == "-1.386294361120"


def test_measure_accepts_text_format(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text("n 3\n0 1 1.0\n0 2 1.0\n1 2 1.0\n")
    out = run_cli("measure", str(path), "--measure", "zeta:q=1")
    assert out.returncode == 0
    assert out.stdout.strip() == "0.666666666667"


def test_exit_codes(tmp_path, k3_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert run_cli("measure", str(bad), "--measure", "zeta:q=1").returncode == 2
    assert run_cli("measure", str(tmp_path / "missing.json"),
                   "--measure", "zeta:q=1").returncode == 2

    disc = tmp_path / "disc.json"
    disc.write_text(DISCONNECTED_JSON)
    assert run_cli("measure", str(disc), "--measure", "zeta:q=1").returncode == 3

    assert run_cli("measure", k3_file, "--measure", "zeta:q=0.2").returncode == 4
    assert run_cli("measure", k3_file, "--measure", "bogus").returncode == 4


def test_grow_writes_record_and_csv(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0], [0, 2, 2.0], [1, 2, 0.5]]}))
    record = tmp_path / "run.json"
    csv_path = tmp_path / "traj.csv"
    out = run_cli("grow", k3_file, str(cands), "--measure", "zeta:q=1", "-k", "2",
                  "--algo", "greedy", "--out", str(record), "--csv", str(csv_path),
                  "--seed", "9")
    assert out.returncode == 0, out.stderr

    rec = json.loads(record.read_text())
    assert rec["tool"] == "specgrow"
    assert rec["algorithm"] == "greedy"
    assert rec["measure"] == "zeta:q=1"
    assert rec["seed"] == 9
    assert len(rec["result"]["chosen"]) == 2
    assert len(rec["result"]["values"]) == 3
    assert len(rec["inputs"]["graph"]["sha256"]) == 64

    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "step,edge_i,edge_j,weight,value"
    assert len(lines) == 4
    assert lines[1].startswith("0,,,,")
    values = [float(line.split(",")[4]) for line in lines[1:]]
    assert values == sorted(values, reverse=True)


def test_grow_is_reproducible(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0], [0, 2, 2.0]]}))
    runs = []
    for name in ("a.json", "b.json"):
        record = tmp_path / name
        out = run_cli("grow", k3_file, str(cands), "--measure", "volume", "-k", "1",
                      "--algo", "brute", "--out", str(record))
        assert out.returncode == 0
        rec = json.loads(record.read_text())
        # timings, timestamps and record paths vary run to run; the computed
        # outputs must not
        del rec["timestamp"], rec["command"], rec["result"]["elapsed"]
        rec["inputs"] = {k: v["sha256"] for k, v in rec["inputs"].items()}
        runs.append(rec)
    assert runs[0] == runs[1]


def test_grow_brute_and_greedy_agree_at_k1(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0], [0, 2, 2.0], [1, 2, 0.5]]}))
    chosen = {}
    for algo in ("brute", "greedy"):
        record = tmp_path / f"{algo}.json"
        out = run_cli("grow", k3_file, str(cands), "--measure", "zeta:q=1",
                      "-k", "1", "--algo", algo, "--out", str(record))
        assert out.returncode == 0
        chosen[algo] = json.loads(record.read_text())["result"]["chosen"]
    assert chosen["brute"] == chosen["greedy"]


def test_grow_linear_rejects_hankel(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0]]}))
    out = run_cli("grow", k3_file, str(cands), "--measure", "hankel",
                  "-k", "1", "--algo", "linear")
    assert out.returncode == 6


def test_grow_cap_exit(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0], [0, 2, 1.0], [1, 2, 1.0]]}))
    out = run_cli("grow", k3_file, str(cands), "--measure", "zeta:q=1",
                  "-k", "2", "--algo", "brute", "--cap", "2")
    assert out.returncode == 5


def test_no_partial_outputs_on_error(tmp_path, k3_file):
    cands = tmp_path / "cands.json"
    cands.write_text(json.dumps({"links": [[0, 1, 1.0]]}))
    record = tmp_path / "never.json"
    csv_path = tmp_path / "never.csv"
    out = run_cli("grow", k3_file, str(cands), "--measure", "hankel",
                  "-k", "1", "--algo", "linear",
                  "--out", str(record), "--csv", str(csv_path))
    assert out.returncode == 6
    assert not record.exists()
    assert not csv_path.exists()


def test_limits_csv(tmp_path):
    graph_path = tmp_path / "k4.json"
    graph_path.write_text(json.dumps(
        {"n": 4, "edges": [[i, j, 1.0] for i in range(4) for j in range(i + 1, 4)]}))
    csv_path = tmp_path / "pi.csv"
    out = run_cli("limits", str(graph_path), "--measure", "zeta:q=1",
                  "--k-max", "3", "--csv", str(csv_path))
    assert out.returncode == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "k,rho_k,pi_k"
    assert len(lines) == 5
    k1 = lines[2].split(",")
    assert float(k1[1]) == pytest.approx(0.5, abs=1e-9)
    pis = [float(line.split(",")[2]) for line in lines[1:]]
    assert pis == sorted(pis)
    assert pis[-1] == pytest.approx(100.0, abs=1e-6)


def test_limits_rejects_volume(tmp_path, k3_file):
    out = run_cli("limits", k3_file, "--measure", "volume")
    assert out.returncode == 4


def test_validate_deterministic(tmp_path, k3_file):
    args = ("validate", k3_file, "--measure", "zeta:q=1",
            "--trials", "400", "--seed", "42")
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    payload = json.loads(a.stdout)
    assert payload["trials"] == 400
    assert payload["seed"] == 42
    assert "z_score" in payload


def test_validate_transient(tmp_path, k3_file):
    out = run_cli("validate", k3_file, "--measure", "tau:t=0.5",
                  "--trials", "400", "--seed", "1")
    assert out.returncode == 0, out.stderr
    payload = json.loads(out.stdout)
    assert payload["t"] == 0.5
