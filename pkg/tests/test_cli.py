import json

import numpy as np
import pytest

from mtf_spectra import cli


def run(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv_rows(path):
    lines = path.read_text().splitlines()
    assert lines[-1].startswith("# ") or "," in lines[-1]
    header = lines[0].split(",")
    data, trailer = [], None
    for line in lines[1:]:
        if line.startswith("# "):
            trailer = json.loads(line[2:])
        else:
            data.append(line.split(","))
    return header, data, trailer


# ------------------------------------------------------------------ spectrum

def test_spectrum_csv_shape(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code, _, _ = run(
        ["spectrum", "--scenario", "teflon-lf", "--nmax", "20", "--out", str(out)], capsys
    )
    assert code == 0
    header, data, trailer = read_csv_rows(out)
    assert header == ["n", "eig_index", "re", "im", "dist_to_accum"]
    assert len(data) == 20 * 8
    assert trailer["scenario"] == "teflon-lf"
    assert len(trailer["accumulation_points"]) == 6


def test_spectrum_bmtf_two_accumulation_points(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code, _, _ = run(
        ["spectrum", "--scenario", "ferrite-hf", "--variant", "bmtf", "--nmax", "15",
         "--out", str(out)], capsys
    )
    assert code == 0
    _, data, trailer = read_csv_rows(out)
    assert len(data) == 15 * 8
    assert len(trailer["accumulation_points"]) == 2


def test_spectrum_floats_roundtrip(tmp_path, capsys):
    from mtf_spectra import get_scenario, spectrum_scan

    out = tmp_path / "spec.csv"
    run(["spectrum", "--scenario", "teflon-lf", "--nmax", "3", "--out", str(out)], capsys)
    _, data, _ = read_csv_rows(out)
    rep = spectrum_scan(get_scenario("teflon-lf").media, "mtf", 3)
    for row in data:
        n, idx = int(row[0]), int(row[1])
        ev = rep.eigenvalues[n - 1][idx]
        assert float(row[2]) == ev.real  # 17 significant digits: exact round trip
        assert float(row[3]) == ev.imag


def test_spectrum_json_format(tmp_path, capsys):
    out = tmp_path / "spec.json"
    code, _, _ = run(
        ["spectrum", "--scenario", "teflon-lf", "--nmax", "4", "--format", "json",
         "--out", str(out)], capsys
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["modes"]) == 4
    assert doc["variant"] == "mtf"


def test_spectrum_requires_scenario(capsys):
    code, _, err = run(["spectrum", "--nmax", "5"], capsys)
    assert code == 1
    assert "scenario" in err


def test_spectrum_unknown_scenario(capsys):
    code, _, err = run(["spectrum", "--scenario", "teflon-xl"], capsys)
    assert code == 1
    assert "teflon-lf" in err  # suggestion list


def test_spectrum_unwritable_output(capsys):
    code, _, err = run(
        ["spectrum", "--scenario", "teflon-lf", "--nmax", "2",
         "--out", "/nonexistent-dir/x.csv"], capsys
    )
    assert code == 2
    assert "i/o" in err


# --------------------------------------------------------------------- accum

def test_accum_teflon_point_count(capsys):
    code, out, _ = run(["accum", "--scenario", "teflon-lf"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["points"]) == 6
    assert doc["lambda_mu"] == pytest.approx(0.0)


def test_accum_ferrite_eight_points(capsys):
    code, out, _ = run(["accum", "--scenario", "ferrite-lf"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["points"]) == 8


def test_accum_bmtf_values(capsys):
    code, out, _ = run(["accum", "--scenario", "teflon-lf", "--variant", "bmtf"], capsys)
    doc = json.loads(out)
    vals = sorted(p[0] for p in doc["points"])
    assert vals == pytest.approx([4.0, 4.576190476190476])


# --------------------------------------------------------------------- gmres

def test_gmres_all_variants(tmp_path, capsys):
    out = tmp_path / "gmres.csv"
    code, stdout, _ = run(
        ["gmres", "--scenario", "teflon-lf", "--nmax", "16", "--out", str(out)], capsys
    )
    assert code == 0
    summary = json.loads(stdout)
    assert set(summary["iterations"]) == {"mtf", "mtf2", "bmtf", "stf2"}
    assert all(summary["converged"].values())
    lines = out.read_text().splitlines()
    assert lines[0] == "variant,iteration,relative_residual"
    variants = {ln.split(",")[0] for ln in lines[1:]}
    assert variants == {"mtf", "mtf2", "bmtf", "stf2"}


def test_gmres_equal_media_custom(tmp_path, capsys):
    cfg = tmp_path / "equal.cfg"
    cfg.write_text("eps0=1\nmu0=1\neps1=1\nmu1=1\nkappa0=1.05\nkappa1=1.05\n")
    out = tmp_path / "g.csv"
    code, stdout, _ = run(
        ["gmres", "--custom", str(cfg), "--variant", "bmtf", "--nmax", "6",
         "--out", str(out)], capsys
    )
    assert code == 0
    summary = json.loads(stdout)
    assert summary["iterations"]["bmtf"] == 1
    rows = [ln for ln in out.read_text().splitlines()[1:] if ln]
    assert len(rows) == 2  # initial residual + one iteration


def test_gmres_tol_in_summary(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, stdout, _ = run(
        ["gmres", "--scenario", "teflon-lf", "--nmax", "8", "--tol", "1e-6",
         "--out", str(out)], capsys
    )
    assert code == 0
    assert json.loads(stdout)["tolerance"] == 1e-6


def test_gmres_nonconvergence_exit_code(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, stdout, _ = run(
        ["gmres", "--scenario", "ferrite-hf", "--variant", "mtf", "--nmax", "20",
         "--tol", "1e-13", "--restart", "3", "--out", str(out)], capsys
    )
    # forced stagnation budget: tiny restart, extreme tolerance
    summary = json.loads(stdout)
    if not all(summary["converged"].values()):
        assert code == 4
    else:  # pragma: no cover - solver too good
        assert code == 0


# ---------------------------------------------------------------- coercivity

def test_coercivity_csv(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code, _, _ = run(
        ["coercivity", "--scenario", "teflon-lf", "--nmax", "40", "--out", str(out)], capsys
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,quotient_exact,quotient_asymptotic"
    assert len(lines) == 41
    qa = np.array([float(ln.split(",")[2]) for ln in lines[1:]])
    assert (qa > 0).all()


def test_coercivity_rejects_nmax_zero(capsys):
    code, _, err = run(["coercivity", "--scenario", "teflon-lf", "--nmax", "0"], capsys)
    assert code == 1
    assert "nmax" in err


# ------------------------------------------------------------------ selftest

def test_selftest_passes(capsys):
    code, out, _ = run(["selftest", "--nmax", "40"], capsys)
    assert code == 0
    assert out.count("PASS") == 6
    for name in ("wronskian", "calderon", "square", "inverse", "b_identity", "asymptotics"):
        assert name in out


def test_selftest_json(capsys):
    code, out, _ = run(["selftest", "--nmax", "25", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert len(doc["checks"]) == 6


def test_selftest_detects_injected_sign_error(capsys, monkeypatch):
    from mtf_spectra import symbols

    original = symbols.k_symbol

    def broken(n, kappa, side):
        return -original(n, kappa, side)

    monkeypatch.setattr(symbols, "k_symbol", broken)
    code, out, _ = run(["selftest", "--nmax", "10"], capsys)
    assert code == 3
    assert "FAIL" in out
    assert "asymptotics" in out


def test_help_exits_zero(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0
    assert "spectrum" in out


def test_missing_command_is_usage_error(capsys):
    code, _, _ = run([], capsys)
    assert code == 1
