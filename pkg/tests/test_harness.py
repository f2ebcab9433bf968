import json
import subprocess
import sys

import pytest

from clutchkit import checks, cli
from clutchkit.errors import UsageError
from clutchkit.report import (CheckResult, Report, SuiteConfig, batches, emit_report, parse_report,
                              run_suite, sub_seed)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_runs_are_identical_modulo_wall_time():
    a = run_suite(SuiteConfig("algebra", 10, 1))
    b = run_suite(SuiteConfig("algebra", 10, 1))
    assert a.canonical() == b.canonical()
    assert json.dumps(a.canonical(), sort_keys=True) == json.dumps(b.canonical(), sort_keys=True)


def test_parallelism_does_not_change_defects():
    serial = run_suite(SuiteConfig("maps", 3000, 9, jobs=1))
    threaded = run_suite(SuiteConfig("maps", 3000, 9, jobs=4))
    assert serial.defects() == threaded.defects()


def test_seed_changes_samples():
    a = run_suite(SuiteConfig("actions", 50, 1)).defects()
    b = run_suite(SuiteConfig("actions", 50, 2)).defects()
    assert a != b


def test_sub_seeds_independent_of_registry():
    # a check's seed depends only on (master seed, id, batch)
    assert sub_seed(42, "maps.eta8.unit") == sub_seed(42, "maps.eta8.unit")
    assert sub_seed(42, "maps.eta8.unit") != sub_seed(42, "maps.eta8.unit", 1)
    assert sub_seed(42, "maps.eta8.unit") != sub_seed(43, "maps.eta8.unit")
    assert sub_seed(-1, "x") == sub_seed(2**64 - 1, "x")


def test_batches_cover_samples():
    assert batches(1) == [1]
    assert sum(batches(10_001)) == 10_001
    assert max(batches(10_000)) <= 2500


@pytest.mark.parametrize("cfg", [
    SuiteConfig("star-families", 0),
    SuiteConfig("bogus", 10),
    SuiteConfig("algebra", 10, tol_shallow=0.0),
    SuiteConfig("algebra", 10, jobs=0),
    SuiteConfig("algebra", 10, format="xml"),
])
def test_bad_config_is_usage_error(cfg):
    with pytest.raises(UsageError):
        run_suite(cfg)


def test_empty_report():
    r = Report(1, {})
    data = json.loads(emit_report(r))
    assert data["checks"] == [] and data["pass"] is True


def test_single_failing_check():
    r = Report(1, {}, [CheckResult("c", "anchor", 10, 0.5, 0.1, False)])
    assert json.loads(emit_report(r))["pass"] is False
    assert emit_report(r, "text").decode().startswith("FAIL  c  max=5.000e-01  tol=1.0e-01  (anchor)")


def test_round_trip():
    r = run_suite(SuiteConfig("actions", 20, 3))
    assert parse_report(emit_report(r)) == r
    bad = Report(1, {}, [CheckResult("c", "a", 1, None, 0.1, False, error="boom")])
    assert parse_report(emit_report(bad)) == bad


def test_schema_fields():
    data = json.loads(emit_report(run_suite(SuiteConfig("algebra", 5, 0))))
    assert set(data) == {"version", "seed", "config", "checks", "pass"}
    for c in data["checks"]:
        assert {"id", "anchor", "samples", "max_defect", "tol", "pass"} <= set(c)
        assert c["anchor"]
        assert c["pass"] == (c["max_defect"] <= c["tol"])


def test_check_errors_are_reported(monkeypatch):
    def broken(samples, seed):
        raise RuntimeError("boom")

    monkeypatch.setitem(checks.REGISTRY, "algebra.zz_broken",
                        checks.Check("algebra.zz_broken", "algebra", "test", "strict", broken))
    r = run_suite(SuiteConfig("algebra", 5, 0))
    res = next(c for c in r.checks if c.id == "algebra.zz_broken")
    assert res.max_defect is None and not res.pass_ and "boom" in res.error
    assert not r.passed


def test_every_check_has_anchor_and_known_suite():
    for c in checks.REGISTRY.values():
        assert c.anchor and c.suite in checks.SUITES
        assert c.tol() >= 0


def test_cli_verify_and_exit_codes(capsys, tmp_path):
    code, out, _ = run(["verify", "algebra", "--samples", "20", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["pass"]
    code, _, err = run(["verify", "bogus"], capsys)
    assert code == 2 and "usage error" in err
    code, _, _ = run(["verify", "star-families", "--samples", "0"], capsys)
    assert code == 2
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 2
    code, _, _ = run(["verify", "algebra", "--jobs", "many"], capsys)
    assert code == 2
    target = tmp_path / "r.json"
    code, out, _ = run(["verify", "actions", "--samples", "10", "--format", "json", "--out", str(target)], capsys)
    assert code == 0 and out == "" and json.loads(target.read_text())["pass"]


def test_cli_exit_one_when_a_check_fails(capsys):
    # tolerances below rounding error make shallow checks fail
    code, out, _ = run(["verify", "maps", "--samples", "50", "--tol", "1e-30"], capsys)
    assert code == 1 and "FAIL" in out


def test_cli_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CLUTCHKIT_SEED", "7")
    _, out, _ = run(["verify", "algebra", "--samples", "5", "--format", "json"], capsys)
    assert json.loads(out)["seed"] == 7
    _, out, _ = run(["verify", "algebra", "--samples", "5", "--seed", "8", "--format", "json"], capsys)
    assert json.loads(out)["seed"] == 8
    monkeypatch.setenv("CLUTCHKIT_SEED", "x")
    assert run(["verify", "algebra", "--samples", "5"], capsys)[0] == 2


def test_cli_listings(capsys):
    code, out, _ = run(["list-checks"], capsys)
    assert code == 0 and "φ_ij(gx)=gφ_ij(x)g⁻¹" in out
    code, out, _ = run(["list-checks", "--format", "json"], capsys)
    assert any(r["anchor"] == "φ_ij(gx)=gφ_ij(x)g⁻¹" for r in json.loads(out))
    code, out, _ = run(["list-maps"], capsys)
    assert code == 0 and {"eta8", "b10_tilde"} <= {m["name"] for m in json.loads(out)}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clutchkit", "verify", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr
