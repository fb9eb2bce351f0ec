import json
import subprocess
import sys

import pytest

from funcgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cycle3(tmp_path):
    path = tmp_path / "c3.map"
    path.write_text("3\n1 2 0\n")
    return str(path)


def test_label_quadratic(capsys):
    code, out, _ = run(capsys, "label", "--prime", "5", "--poly", "1,0,1", "--mode", "quadratic")
    assert code == 0
    assert "10100" in out.split()
    assert "hex:" in out


def test_label_json(capsys):
    code, out, _ = run(capsys, "label", "--prime", "5", "--poly", "0,0,1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["mode"] == "quadratic" and set(data["components"]) == {"0", "1100"}


def test_label_map_file(capsys, cycle3):
    code, out, _ = run(capsys, "label", "--map-file", cycle3, "--mode", "general")
    assert code == 0 and "000" in out.split()


def test_label_not_prime(capsys):
    code, _, err = run(capsys, "label", "--prime", "4", "--poly", "1,0,1")
    assert code == 3 and "NotPrime" in err


def test_label_needs_one_source(capsys, cycle3):
    code, _, _ = run(capsys, "label", "--prime", "5", "--poly", "1,0,1", "--map-file", cycle3)
    assert code == 2
    code, _, _ = run(capsys, "label", "--prime", "5")
    assert code == 2


def test_label_bad_poly(capsys):
    code, _, _ = run(capsys, "label", "--prime", "5", "--poly", "1,x")
    assert code == 2


def test_label_bad_map(capsys, tmp_path):
    bad = tmp_path / "bad.map"
    bad.write_text("2\n0 7\n")
    code, _, err = run(capsys, "label", "--map-file", str(bad))
    assert code == 2 and "OutOfRange" in err


def test_iso_verdicts(capsys, cycle3, tmp_path):
    code, out, _ = run(capsys, "iso", "--prime", "5", "--poly-a", "1,0,1", "--poly-b", "2,0,1")
    assert code == 1 and out.strip() == "not isomorphic"
    code, out, _ = run(capsys, "iso", "--prime", "5", "--poly-a", "1,0,1", "--poly-b", "1,0,1")
    assert code == 0 and out.strip() == "isomorphic"
    code, _, _ = run(capsys, "iso", "--prime", "17", "--poly-a", "11,0,1", "--poly-b", "14,0,1")
    assert code == 0
    other = tmp_path / "c3b.map"
    other.write_text("3\n2 0 1\n")
    code, _, _ = run(capsys, "iso", "--map-a", cycle3, "--map-b", str(other))
    assert code == 0


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--degree", "2", "--prime", "17")
    assert code == 0 and json.loads(out)["N"] == 16
    code, out, _ = run(capsys, "enumerate", "--degree", "2", "--prime", "13")
    assert json.loads(out)["N"] == 13
    _, a, _ = run(capsys, "enumerate", "--degree", "3", "--prime", "7", "--brute-force")
    _, b, _ = run(capsys, "enumerate", "--degree", "3", "--prime", "7")
    assert json.loads(a)["N"] == json.loads(b)["N"] == 45


def test_enumerate_jobs_do_not_change_bytes(capsys, tmp_path):
    l1, l2 = tmp_path / "l1.txt", tmp_path / "l2.txt"
    _, a, _ = run(capsys, "enumerate", "--degree", "3", "--prime", "5", "--emit-labels", str(l1))
    _, b, _ = run(capsys, "enumerate", "--degree", "3", "--prime", "5", "--jobs", "2",
                  "--emit-labels", str(l2))
    assert a == b
    assert l1.read_bytes() == l2.read_bytes()
    assert len(l1.read_text().splitlines()) == json.loads(a)["N"]


def test_enumerate_unsupported(capsys):
    code, _, _ = run(capsys, "enumerate", "--degree", "2", "--prime", "2")
    assert code == 3
    code, _, _ = run(capsys, "enumerate", "--degree", "4", "--prime", "101", "--brute-force")
    assert code == 3


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--degree", "2", "--prime", "5")
    data = json.loads(out)
    assert code == 0 and data["upper"] == 5 and data["rho"] == 0.25
    _, out, _ = run(capsys, "bounds", "--degree", "3", "--prime", "7")
    assert json.loads(out)["upper"] == 56
    _, out, _ = run(capsys, "bounds", "--degree", "2", "--prime", "5", "--eta-depth", "2")
    assert json.loads(out)["eta_lower"] <= 5


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "--prime-list", "7", "--table", "leaves", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    assert lines[1].split(",")[2:4] == ["3", "3"]
    code, out, _ = run(capsys, "stats", "--prime-list", "7", "--exclude-special")
    assert code == 0 and "[components]" in out and "Ratio" in out


def test_stats_ratio_column(capsys):
    code, out, _ = run(capsys, "stats", "--prime-list", "1009", "--table", "components")
    header, row = out.splitlines()
    assert code == 0 and header.split()[-1] == "Ratio"
    assert float(row.split()[-1]) > 1.0


def test_stats_bad_format(capsys):
    code, _, err = run(capsys, "stats", "--prime-list", "7", "--format", "bogus")
    assert code == 2 and "UnknownFormat" in err


def test_stats_degree_must_be_two(capsys):
    code, _, _ = run(capsys, "stats", "--degree", "3", "--prime-list", "7")
    assert code == 3


def test_verify_pass_and_fail(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "notsquare", "--primes", "5,13", "-M", "5")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["checks"] == 62

    from funcgraph import theory
    from funcgraph.polyring import LemmaReport
    monkeypatch.setattr(theory.polyring, "verify_not_square_lemma",
                        lambda F, M: LemmaReport("notsquare", False, 1, dict(q=F.p, J=[1]), {}))
    code, out, _ = run(capsys, "verify", "--suite", "notsquare")
    assert code == 4 and json.loads(out)["failures"][0]["J"] == [1]


def test_verify_output_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--suite", "notethpower", "--seed", "5", "--out", str(a))
    run(capsys, "verify", "--suite", "notethpower", "--seed", "5", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "funcgraph", "bounds", "--degree", "2", "--prime", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["upper"] == 7
