import json
import subprocess
import sys

import pytest

from mrq import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_usage_errors_exit_64(capsys):
    for argv in (["bogus"], ["shorten"], ["zlaw", "--k-range", "5..1"], ["shorten", "--k", "x"], []):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 64
    code, _, err = run(capsys, "shorten", "--k", "0")
    assert code == 64 and "k = 0" in err


def test_shorten_csv(capsys):
    code, out, _ = run(capsys, "shorten", "--genset", "g", "--k", "25,50")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,genset,l_star,q_star,max_length,normalized,normalized_decimal,error"
    assert lines[1] == "25,g,0,0,719604,179901/89950,2.000011117,"
    assert lines[2].startswith("50,g,0,0,1439204,")


def test_shorten_negative_k_mirrors(capsys):
    _, pos, _ = run(capsys, "shorten", "--genset", "u", "--k", "50")
    _, neg, _ = run(capsys, "shorten", "--genset", "u", "--k=-50")
    p, n = pos.splitlines()[1].split(","), neg.splitlines()[1].split(",")
    assert int(n[2]) == -int(p[2])
    assert n[3:] == p[3:]


def test_envelope_command(capsys, tmp_path):
    out_file = tmp_path / "g.svg"
    code, out, _ = run(capsys, "envelope", "--genset", "g", "--out", str(out_file))
    assert code == 0 and out == "x*=0 value=2\n"
    svg = out_file.read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 6
    code, out, _ = run(capsys, "envelope", "--genset", "u", "--out", str(tmp_path / "u.svg"), "--k", "100")
    assert out == "x*=1/2 value=3\n"
    assert (tmp_path / "u.svg").read_text().count("<circle") > 100


def test_envelope_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "envelope", "--out", str(tmp_path / "missing" / "x.svg"))
    assert code == 2 and "cannot write" in err


def test_homology_command(capsys):
    code, out, _ = run(capsys, "homology")
    rep = json.loads(out)
    assert code == 0 and rep["G_w"]["betti"] == 4 and rep["verdict"] == "distinct"


def test_zlaw_command(capsys):
    code, out, _ = run(capsys, "zlaw", "--k-range=-50..-5")
    rep = json.loads(out)
    assert code == 0
    assert rep["offsets_by_sign"] == {"negative": [-4], "positive": []}


def test_ctest_sweep_command(capsys):
    code, out, _ = run(capsys, "ctest-sweep", "--max-len", "1")
    rep = json.loads(out)
    assert code == 0 and rep["counterexamples"] == 0 and rep["pairs_checked"] == 25 ** 2


def test_twist_sweep_exit_code_reflects_violations(capsys):
    code, out, _ = run(capsys, "twist-sweep", "--seed", "0", "--samples", "500")
    rep = json.loads(out)
    assert code == (0 if rep["violations"] == 0 else 1)


def test_engine_error_exit_2(monkeypatch, capsys):
    def boom(*a, **k):
        raise RuntimeError("broken")

    monkeypatch.setattr(cli.dwz, "homology_report", boom)
    code, _, err = run(capsys, "homology")
    assert code == 2 and "engine error" in err


def test_run_checks_statuses():
    checks = [
        ("ok", lambda: (True, {})),
        ("bad", lambda: (False, {"why": 1})),
        ("err", lambda: 1 / 0),
    ]
    code, rep = cli.run_checks(checks, timings=False)
    assert code == 2
    assert [c["status"] for c in rep["checks"]] == ["pass", "fail", "error"]
    assert all("seconds" not in c for c in rep["checks"])
    code, rep = cli.run_checks(checks[:2], timings=True)
    assert code == 1 and all("seconds" in c for c in rep["checks"])


def test_negative_control_check():
    ok, details = cli.check_negative_control(0)
    assert ok and details["status"] == "expected-fail: confirmed"
    assert details["failing_relators"] == ["R4"]


def _verify_all(*extra):
    return subprocess.run(
        [sys.executable, "-m", "mrq.cli", "verify-all", *extra],
        capture_output=True, text=True, timeout=600,
    )


def test_verify_all_report_is_byte_identical():
    a = _verify_all("--negative-control")
    b = _verify_all("--negative-control")
    assert a.stdout == b.stdout
    rep = json.loads(a.stdout)
    statuses = {c["name"]: c["status"] for c in rep["checks"]}
    assert set(statuses) == {
        "relators", "negative_control", "ctest_sweep", "cyclicity", "homology", "z_length_law", "twist_growth",
    }
    assert rep["checks"][1]["details"]["status"] == "expected-fail: confirmed"
    failing = [n for n, s in statuses.items() if s != "pass"]
    assert a.returncode == (0 if not failing else 1)
