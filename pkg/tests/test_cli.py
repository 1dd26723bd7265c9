"""Command-line interface: scans, single points, CHSH demo, exit codes."""

import json

import numpy as np
import pytest

from h2ent.cli import (CurvePoint, ScanConfig, emit, main, run_scan,
                       run_single_point, scan_grid)
from h2ent.molecule import ANGSTROM_TO_BOHR

CSV_HEADER = "R_bohr,E_HF,E_FCI,E_corr,entropy_bits,entropy_rescaled,n_1,n_2"


def config(**kw):
    base = dict(basis_name="sto-3g", r_min=1.0, r_max=2.0, n_points=3)
    base.update(kw)
    return ScanConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        config(r_min=-1.0)
    with pytest.raises(ValueError):
        config(r_max=0.5)
    with pytest.raises(ValueError):
        config(n_points=1)
    with pytest.raises(ValueError):
        config(grid="cubic")
    with pytest.raises(ValueError):
        config(unit="parsec")
    with pytest.raises(ValueError):
        config(format="xml")


def test_scan_grid_linear_log_and_units():
    assert np.allclose(scan_grid(config()), [1.0, 1.5, 2.0])
    logs = scan_grid(config(grid="logarithmic"))
    assert logs[0] == pytest.approx(1.0) and logs[-1] == pytest.approx(2.0)
    assert logs[1] == pytest.approx(np.sqrt(2.0))
    rs = scan_grid(config(unit="angstrom"))
    assert rs[0] == pytest.approx(ANGSTROM_TO_BOHR)
    rs = scan_grid(config(far_point=20.0))
    assert len(rs) == 4 and rs[-1] == 20.0
    assert len(scan_grid(config(far_point=1.5))) == 3  # inside range: skipped


def test_run_single_point_values():
    rep = run_single_point(1.4, "sto-3g")
    assert rep.e_hf == pytest.approx(-1.1167143250, abs=1e-9)
    assert rep.e_fci < rep.e_hf
    assert rep.entropy > 0.0
    assert len(rep.occupations.n) == 2


def test_run_scan_with_rescale():
    points, failures = run_scan(config(n_points=2, rescale=True))
    assert not failures
    assert points[-1].rescaled_entropy == pytest.approx(points[-1].e_corr)


def test_emit_csv(tmp_path):
    points, _ = run_scan(config(n_points=2))
    path = tmp_path / "scan.csv"
    emit(points, "csv", path)
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    fields = lines[1].split(",")
    assert float(fields[0]) == points[0].r
    assert float(fields[1]) == points[0].e_hf  # 17 digits round-trip exactly
    assert fields[5] == ""  # no rescaling requested


def test_emit_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit([], "csv", path, n_orbitals=2)
    assert path.read_text() == CSV_HEADER + "\n"


def test_emit_json(tmp_path):
    points, _ = run_scan(config(n_points=2))
    path = tmp_path / "scan.json"
    emit(points, "json", path)
    data = json.loads(path.read_text())
    assert len(data) == 2
    assert data[0]["E_HF"] == points[0].e_hf
    assert data[0]["entropy_rescaled"] is None
    assert len(data[0]["occupations"]) == 2


def test_main_scan_and_determinism(tmp_path, capsys):
    args = ["scan", "--basis", "sto-3g", "--rmin", "1.0", "--rmax", "2.0",
            "--points", "3", "--far-point", "0"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "wrote 3 points" in capsys.readouterr().out


def test_main_scan_angstrom_and_json(tmp_path):
    out = tmp_path / "scan.json"
    code = main(["scan", "--rmin", "0.74", "--rmax", "1.0", "--points", "2",
                 "--unit", "angstrom", "--far-point", "0", "--format", "json",
                 "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data[0]["R_bohr"] == pytest.approx(0.74 * ANGSTROM_TO_BOHR)


def test_main_point(capsys):
    assert main(["point", "-R", "1.4", "--basis", "sto-3g"]) == 0
    out = capsys.readouterr().out
    assert "E_HF" in out and "-1.116714325" in out
    assert "occupations" in out


def test_main_bell(capsys):
    assert main(["bell", "--state", "singlet"]) == 0
    out = capsys.readouterr().out
    assert "2.828427" in out
    assert "violated: True" in out
    assert main(["bell", "--state", "product"]) == 0
    assert "violated: False" in capsys.readouterr().out


def test_usage_errors_exit_1(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan"])  # missing --out
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    # bad numeric configuration: ValueError path, exit code 1
    assert main(["scan", "--rmin", "-1", "--out", str(tmp_path / "x.csv")]) == 1
    capsys.readouterr()


def test_computation_failure_exit_2(tmp_path, capsys):
    code = main(["scan", "--basis", str(tmp_path / "missing.gbs"),
                 "--rmin", "1.0", "--rmax", "2.0", "--points", "2",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "computation failed" in capsys.readouterr().err


def test_basis_dir_flag(tmp_path, capsys):
    (tmp_path / "sto-3g.gbs").write_text("H 0\nS 1 1.00\n 1.24 1.0\n****\n")
    code = main(["--basis-dir", str(tmp_path), "point", "-R", "1.4",
                 "--basis", "sto-3g"])
    assert code == 0
    # single uncontracted s: a different (worse) energy than the packaged set
    out = capsys.readouterr().out
    e_hf = float([l for l in out.splitlines() if l.startswith("E_HF")][0].split("=")[1])
    assert e_hf > -1.1167143250
