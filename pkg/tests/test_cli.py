"""CLI surface: subcommands, exit codes, report determinism."""

import json
import os
import subprocess
import sys

from orbitforge.cli import main


def run_cli(*args):
    import io
    from contextlib import redirect_stdout, redirect_stderr

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


def test_orbit_json():
    code, out, _ = run_cli("orbit", "2,1,1", "-1")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 4 and data["d_chi"] == 2 and data["rigid"] is True


def test_algebra_json():
    code, out, _ = run_cli("algebra", "4", "-1")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 10 and data["long_short_ratio"] == "2"


def test_centralizer_json():
    code, out, _ = run_cli("centralizer", "2,1,1", "-1")
    data = json.loads(out)
    assert code == 0
    assert data["dim"] == 6 and data["derived_codim"] == 0 and data["generated_by_01"]


def test_slice_json():
    code, out, _ = run_cli("slice", "2,1,1", "-1")
    data = json.loads(out)
    assert code == 0 and data["s"] == 1 and data["m_dim"] == 2


def test_wgen_json():
    code, out, _ = run_cli("wgen", "2,1,1", "-1")
    data = json.loads(out)
    assert code == 0
    assert len(data["theta"]) == 6
    assert data["augmentation"]["5"] == "-1/2"
    assert data["casimir_shape"]["shape_ok"]


def test_rigidity_json():
    code, out, _ = run_cli("rigidity", "2,2", "-1")
    data = json.loads(out)
    assert code == 0 and data["rigid_criterion"] is False and data["oracle_rigid"] is False


def test_induce():
    code, out, _ = run_cli("induce", "--n", "4", "--eps", "-1", "--levi", "2")
    data = json.loads(out)
    assert code == 0 and data["induced"] == "2,2"


def test_verma():
    code, out, _ = run_cli("verma", "2,2", "-1", "--levi", "2", "--prime", "3")
    data = json.loads(out)
    assert code == 0
    assert data["dim"] == 27 and data["small_dimension_match"] and data["induction_identity"]


def test_explain_text():
    code, out, _ = run_cli("explain", "2,1,1", "-1")
    assert code == 0
    assert "rigid: True" in out and "d(chi) = 2" in out


def test_usage_error_exit_2():
    code, _, err = run_cli("orbit", "2,1", "-1")  # not admissible for sp_4
    assert code == 2
    code, _, _ = run_cli("verma", "2,2", "-1", "--levi", "2", "--prime", "2")
    assert code == 2


def test_verify_even_prime_rejected():
    code, _, err = run_cli("verify", "--primes", "2,3")
    assert code == 2 and "odd" in err


def test_verify_mini_run_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(
            "verify", "--max-n", "4", "--suites", "golden,zeta,saturation",
            "--output", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["passed"] and set(report["suites"]) == {"golden", "zeta", "saturation"}


def test_verify_thread_pool_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    env_backup = os.environ.get("ORBITFORGE_THREADS")
    try:
        os.environ["ORBITFORGE_THREADS"] = "4"
        run_cli("verify", "--max-n", "4", "--suites", "golden,zeta", "--output", str(a))
        os.environ["ORBITFORGE_THREADS"] = "1"
        run_cli("verify", "--max-n", "4", "--suites", "golden,zeta", "--output", str(b))
    finally:
        if env_backup is None:
            os.environ.pop("ORBITFORGE_THREADS", None)
        else:
            os.environ["ORBITFORGE_THREADS"] = env_backup
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orbitforge.cli", "orbit", "4", "-1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["d_chi"] == 4
