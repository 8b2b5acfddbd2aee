import csv
import io
import json
import math

import pytest

from cylplate import cli
from cylplate.cli import CSV_FIELDS, ConfigError, RunSpec, compute_rows, fit_correction, leading_term, main
from cylplate.geometry import BoundaryCondition, NumericsConfig

HEADER = "a,r,L,T,eps,aT,rT,bc,method,energy,force,ratio_to_pfa,mmax_used,lmax_used,delta,status"


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_header_is_fixed():
    assert ",".join(CSV_FIELDS) == HEADER


def test_exact_and_pfa_row(capsys):
    code, out, _ = run_main(["compute", "--a", "0.1", "--r", "1", "--methods", "exact,pfa"], capsys)
    assert code == 0
    assert out.splitlines()[0] == HEADER
    rows = parse_csv(out)
    assert [r["method"] for r in rows] == ["exact", "pfa"]
    ex = rows[0]
    assert ex["status"] == "ok" and ex["bc"] == "dirichlet"
    assert abs(float(ex["ratio_to_pfa"]) - 1.0) < 0.05
    assert float(ex["eps"]) == 0.1 and float(ex["aT"]) == 0.0
    assert int(ex["mmax_used"]) > 0
    # the reference row carries no ratio to itself
    assert rows[1]["ratio_to_pfa"] == ""


def test_sweep_rows_and_monotone_energy(capsys):
    code, out, _ = run_main(["compute", "--a-sweep", "0.02,0.05,0.1", "--r", "1", "--methods", "pfa"], capsys)
    assert code == 0
    e = [abs(float(r["energy"])) for r in parse_csv(out)]
    assert len(e) == 3 and e[0] > e[1] > e[2]


@pytest.mark.parametrize("argv", [
    ["compute", "--a", "0.1", "--r", "1", "--methods", ""],
    ["compute", "--a", "0.1", "--r", "1", "--methods", "magic"],
    ["compute", "--a", "0.1", "--r", "1", "--t-sweep", "1,0.5"],
    ["compute", "--a", "0.1", "--r", "1", "--t-sweep", "0,1"],
    ["compute", "--a-sweep", "0.1,0.1", "--r", "1"],
    ["compute", "--a", "-0.1", "--r", "1"],
    ["compute", "--a", "x", "--r", "1"],
    ["compute", "--r", "1"],
    ["compute", "--a", "0.1", "--r", "1", "--bc", "robin"],
    ["compute", "--config", "/nonexistent/run.cfg"],
    ["frobnicate"],
])
def test_config_errors_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    capsys.readouterr()


def test_run_spec_validation():
    with pytest.raises(ConfigError):
        RunSpec(a=(0.1,), r=1.0, methods=())
    with pytest.raises(ConfigError):
        RunSpec(a=(0.2, 0.1), r=1.0)


def test_total_failure_exit_1(capsys):
    argv = ["compute", "--a", "0.05", "--r", "1", "--temperature", "100", "--bc", "neumann",
            "--methods", "asymptotic", "--regime", "high", "--variant", "residue-first"]
    code, out, _ = run_main(argv, capsys)
    assert code == 1
    row = parse_csv(out)[0]
    assert row["status"].startswith("failed: DivergentExpansionError")
    assert row["energy"] == ""


def test_partial_failure_exit_0(capsys):
    argv = ["compute", "--a", "0.05", "--r", "1", "--temperature", "100", "--bc", "neumann",
            "--methods", "pfa,asymptotic", "--regime", "high"]
    code, out, _ = run_main(argv, capsys)
    assert code == 0
    rows = parse_csv(out)
    assert rows[0]["status"] == "ok" and rows[1]["status"].startswith("failed")
    assert rows[1]["ratio_to_pfa"] == ""


def test_regime_labels(capsys):
    code, out, _ = run_main(["compute", "--a", "0.01", "--r", "1", "--methods", "asymptotic",
                             "--t-sweep", "0.5,30,200"], capsys)
    rows = parse_csv(out)
    assert [r["status"] for r in rows] == ["ok:zero", "ok:medium", "ok:high"]
    for r in rows:
        assert float(r["eps"]) == float(r["a"]) / float(r["r"])
        assert float(r["aT"]) == pytest.approx(float(r["a"]) * float(r["T"]))


def test_output_is_deterministic(tmp_path):
    paths = [tmp_path / "one.csv", tmp_path / "two.csv"]
    for p in paths:
        assert main(["compute", "--a", "0.2", "--r", "1", "--temperature", "0.5", "--bc", "pec",
                     "--methods", "exact,pfa,asymptotic", "--mmax", "20", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_csv_and_json_carry_the_same_numbers(tmp_path):
    base = ["compute", "--a", "0.2", "--r", "1.5", "--temperature", "0.3", "--methods", "exact,pfa",
            "--mmax", "20"]
    main(base + ["--out", str(tmp_path / "o.csv")])
    main(base + ["--format", "json", "--out", str(tmp_path / "o.json")])
    rows_csv = parse_csv((tmp_path / "o.csv").read_text())
    rows_json = json.loads((tmp_path / "o.json").read_text())
    assert len(rows_csv) == len(rows_json) == 2
    for rc, rj in zip(rows_csv, rows_json):
        assert list(rj) == CSV_FIELDS
        for k in ("a", "r", "L", "T", "energy", "force"):
            assert float(rc[k]) == rj[k]
        assert rc["status"] == rj["status"]
        assert (rc["ratio_to_pfa"] == "") == (rj["ratio_to_pfa"] is None)


def test_numbers_round_trip():
    x = 0.1 + 0.2
    assert float(cli._fmt(x)) == x


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\na_sweep = 0.05, 0.1\nr = 2\nlength = 3\nbc = neumann\n"
                   "methods = pfa, asymptotic  # no exact\nvariant = sum-first\n")
    code, out, _ = run_main(["compute", "--config", str(cfg)], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 4
    assert {r["bc"] for r in rows} == {"neumann"}
    assert [float(r["a"]) for r in rows] == [0.05, 0.05, 0.1, 0.1]
    assert float(rows[0]["L"]) == 3.0
    # flags override the file
    code, out, _ = run_main(["compute", "--config", str(cfg), "--bc", "dirichlet"], capsys)
    assert {r["bc"] for r in parse_csv(out)} == {"dirichlet"}


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("a = 0.1\nr = 1\ncolour = blue\n")
    assert main(["compute", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_mmax_override_fixes_truncation():
    spec = RunSpec(a=(0.2,), r=1.0, methods=("exact",), numerics=NumericsConfig(m_max=12))
    row = compute_rows(spec)[0]
    assert row["mmax_used"] == 12


def _synthetic(c, eps_values, kind="zero", T=0.0, bc="dirichlet"):
    rows = []
    for e in eps_values:
        row = {"a": e, "r": 1.0, "L": 1.0, "T": T, "eps": e, "bc": bc}
        row["energy"] = leading_term(row, "energy", kind) * (1 + c * e)
        row["force"] = leading_term(row, "force", kind) * (1 + c * e)
        rows.append(row)
    return rows


def test_fit_recovers_synthetic_coefficient():
    rows = _synthetic(0.1944, [0.02, 0.05, 0.1])
    res = fit_correction(rows)
    assert abs(res.c - 0.1944) < 1e-6
    assert res.stderr < 1e-9 and res.n == 3
    assert abs(fit_correction(rows, quantity="force").c - 0.1944) < 1e-6
    cl = _synthetic(0.25, [0.01, 0.02, 0.04, 0.08], kind="classical", T=3.0, bc="pec")
    assert abs(fit_correction(cl, kind="classical").c - 0.25) < 1e-6


def test_quadratic_fit_recovers_both_coefficients():
    rows = _synthetic(0.0, [0.02, 0.05, 0.1, 0.2])
    for r in rows:
        lead = leading_term(r)
        r["energy"] = lead * (1 + 0.3 * r["eps"] - 2.0 * r["eps"] ** 2)
    res = fit_correction(rows, quadratic=True)
    assert res.c == pytest.approx(0.3, abs=1e-9)
    assert res.quadratic == pytest.approx(-2.0, abs=1e-8)


def test_fit_errors():
    with pytest.raises(ValueError, match="degenerate"):
        fit_correction(_synthetic(0.2, [0.05, 0.05, 0.05]))
    with pytest.raises(ValueError):
        fit_correction(_synthetic(0.2, [0.05, 0.1]))


def test_fit_subcommand(tmp_path, capsys):
    table = tmp_path / "sweep.csv"
    main(["compute", "--a-sweep", "0.02,0.05,0.1", "--r", "1", "--methods", "asymptotic",
          "--out", str(table)])
    code, out, _ = run_main(["fit", "--input", str(table), "--method", "asymptotic"], capsys)
    assert code == 0
    c = float(out.split()[2])
    # the zero-temperature asymptotic rows are exactly leading * (1 + 7 eps / 36)
    assert c == pytest.approx(7 / 36, rel=1e-12)
    code, _, err = run_main(["fit", "--input", str(table), "--method", "exact"], capsys)
    assert code == 1 and "fit failed" in err
    code, _, _ = run_main(["fit", "--input", str(tmp_path / "missing.csv")], capsys)
    assert code == 2


def test_pfa_row_pec_doubles_scalar():
    d = compute_rows(RunSpec(a=(0.1,), r=1.0, methods=("pfa",)))[0]
    p = compute_rows(RunSpec(a=(0.1,), r=1.0, methods=("pfa",), bc=BoundaryCondition.PEC))[0]
    assert p["energy"] == 2 * d["energy"]
    assert math.isfinite(p["force"])
