"""CLI surface: formats, determinism, exit codes."""

import json

import pytest

from twositebath import cli, exact_rates
from twositebath.core import NumericsError


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rate_bm_sweep_csv_shape(capsys):
    code, out, _ = _run(capsys, ["rate-bm", "--sweep", "s_over_lambda",
                                 "0.01", "20", "9", "--log"])
    assert code == 0
    lines = out.splitlines()
    preamble = [ln for ln in lines if ln.startswith("# ")]
    assert any(ln.startswith("# command=rate-bm") for ln in preamble)
    header_idx = len(preamble)
    assert lines[header_idx] == "x,rate_R,asymptote,gaussian"
    rows = lines[header_idx + 1:]
    assert len(rows) == 9
    first = [float(tok) for tok in rows[0].split(",")]
    assert first[0] == pytest.approx(0.01)
    assert 0.0 < first[1] <= 1.0


def test_csv_output_deterministic(tmp_path, capsys):
    args = ["rate-bm", "--sweep", "s_over_lambda", "0.05", "15", "40",
            "--log"]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    # 17 significant digits survive a round trip
    row = a.read_text().splitlines()[-1].split(",")
    assert float(row[1]) == float(format(float(row[1]), ".17g"))


def test_gamma_json_structure(capsys):
    code, out, _ = _run(capsys, ["gamma", "--a-over-lambda", "0.0001",
                                 "--s-over-lambda", "2",
                                 "--occ", "1,0", "--occ-prime", "0,1"])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"config", "result", "diagnostics"}
    res = doc["result"]
    assert res["gamma_re"] == pytest.approx(res["weak_limit_reference"],
                                            rel=1e-3)
    assert "omega" in res and "D_re" in res


def test_gamma_physical_prefactor(capsys):
    code, out, _ = _run(capsys, ["gamma", "--a-over-lambda", "0.0001",
                                 "--s-over-lambda", "2",
                                 "--occ", "1,0", "--occ-prime", "0,1",
                                 "--physical", "1.4e-25", "1e-7", "1e18"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["gamma_scale_per_s"] > 0.0


def test_bound_json(capsys):
    code, out, _ = _run(capsys, ["bound", "--s-over-a", "2,3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["count"] == 2
    qs = [st["q"] for st in doc["result"]["states"]]
    assert qs == sorted(qs)
    # leading-dash value needs the '=' form, as usual with argparse
    code, out, _ = _run(capsys, ["bound", "--s-over-a=-3,-0.5"])
    assert code == 0
    assert json.loads(out)["result"]["count"] == 0


def test_bound_curve_csv(capsys):
    code, out, _ = _run(capsys, ["bound", "--s-over-a", "2,3",
                                 "--curve", "0", "4", "21"])
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "u,lhs,rhs"
    assert len(lines) == 22


def test_evolve_csv(capsys):
    code, out, _ = _run(capsys, ["evolve", "--mode", "bm",
                                 "--a-over-lambda", "0.1",
                                 "--s-over-lambda", "2",
                                 "--occ", "1,0", "--occ-prime", "0,1",
                                 "--t-grid", "0", "1", "5"])
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "t,factor_re,factor_im"
    vals = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert vals[0] == 1.0
    assert all(b < a for a, b in zip(vals, vals[1:]))  # monotone decay


def test_config_error_exit_code(capsys):
    code, _, err = _run(capsys, ["gamma", "--a-over-lambda", "0.1",
                                 "--s-over-lambda", "0",
                                 "--occ", "1,0", "--occ-prime", "0,1"])
    assert code == 2
    record = json.loads(err)
    assert record["error"]["type"] == "config"
    # malformed occupation string
    code, _, err = _run(capsys, ["gamma", "--a-over-lambda", "0.1",
                                 "--s-over-lambda", "2",
                                 "--occ", "banana", "--occ-prime", "0,1"])
    assert code == 2


def test_numeric_error_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise NumericsError("quadrature fell apart")

    monkeypatch.setattr(exact_rates, "rate_result", boom)
    code, _, err = _run(capsys, ["gamma", "--a-over-lambda", "0.1",
                                 "--s-over-lambda", "2",
                                 "--occ", "1,0", "--occ-prime", "0,1"])
    assert code == 3
    record = json.loads(err)
    assert record["error"]["type"] == "numeric"


def test_mfp_json(capsys):
    code, out, _ = _run(capsys, ["mfp", "--s-over-lambda", "2",
                                 "--L-over-lambda", "100"])
    assert code == 0
    doc = json.loads(out)
    res = doc["result"]
    assert res["R_tilde"] < res["R_ideal"]


def test_sweep_axis_csv(capsys):
    code, out, _ = _run(capsys, ["sweep", "--quantity", "D",
                                 "--axis", "s_over_lambda", "0.5", "2", "3",
                                 "--a-over-lambda", "0.0001",
                                 "--occ", "1,0", "--occ-prime", "0,1"])
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "s_over_lambda,D_re,D_im"
    ds = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert ds == sorted(ds)  # decoherence grows with separation here


def test_wave_csv_schema(capsys):
    code, out, _ = _run(capsys, ["wave", "--a-over-s", "0.5",
                                 "--occ", "3,1", "--k0", "10",
                                 "--incidence-deg", "30", "--t", "10",
                                 "--r-grid", "20", "30", "3"])
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "r,psi_scat_abs,envelope_abs"
    for ln in lines[1:]:
        r, psi, env = (float(tok) for tok in ln.split(","))
        assert psi > 0.0 and env > 0.0
        assert abs(psi / env - 1.0) < 0.15
