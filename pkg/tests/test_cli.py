import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ballprolate import bouwkamp
from ballprolate.cli import main, parse_grid
from ballprolate.errors import ParameterError


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "ballprolate.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc


def read_csv(path):
    with open(path) as fh:
        first = fh.readline()
        assert first.startswith("# schema_version=")
        return list(csv.DictReader(fh))


class TestEigenvaluesCommand:
    def test_c0_gamma_values(self, tmp_path):
        out = tmp_path / "eig.csv"
        assert main(["eigenvalues", "--alpha", "0", "--c", "0", "--N", "3",
                     "--out", str(out)]) == 0
        rows = read_csv(out)
        chis = sorted(float(r["chi"]) for r in rows)
        assert_allclose(chis, [4.0, 10.0, 18.0, 18.0], rtol=1e-12)

    def test_c2_regression_and_truncation_gate(self, tmp_path):
        # the written values must be stable when the expansion cap doubles
        out = tmp_path / "eig2.csv"
        assert main(["eigenvalues", "--alpha", "0", "--c", "2", "--N", "3",
                     "--out", str(out)]) == 0
        for row in read_csv(out):
            n, k = int(row["n"]), int(row["k"])
            K2 = 2 * bouwkamp.truncation_order(3, 0.0, n)
            T = bouwkamp.build_matrix(n, 0.0, 2.0, K2)
            chi2 = bouwkamp.eigen_tridiagonal(T)[k][0]
            assert_allclose(float(row["chi"]), chi2, rtol=1e-10)

    def test_invalid_alpha_exit_2(self, tmp_path):
        proc = run_cli("eigenvalues", "--alpha", "-1", "--c", "0", "--N", "3",
                       "--out", str(tmp_path / "x.csv"))
        assert proc.returncode == 2
        assert "error" in proc.stderr

    def test_rows_sorted_by_n_k(self, tmp_path):
        out = tmp_path / "eig3.csv"
        main(["eigenvalues", "--alpha", "0.5", "--c", "1", "--N", "4",
              "--out", str(out)])
        keys = [(int(r["n"]), int(r["k"])) for r in read_csv(out)]
        assert keys == sorted(keys)


class TestCoeffsCommand:
    def test_c0_single_row(self, tmp_path):
        out = tmp_path / "c0.csv"
        assert main(["coeffs", "--alpha", "0", "--c", "0", "--n", "1", "--k", "2",
                     "--out", str(out)]) == 0
        rows = read_csv(out)
        assert len(rows) == 1
        assert int(rows[0]["j"]) == 2
        assert float(rows[0]["beta_j"]) == 1.0

    def test_c2_tail_and_norm(self, tmp_path):
        out = tmp_path / "c2.csv"
        assert main(["coeffs", "--alpha", "0", "--c", "2", "--n", "1", "--k", "0",
                     "--out", str(out)]) == 0
        rows = read_csv(out)
        beta = np.array([float(r["beta_j"]) for r in rows])
        assert abs(beta[-1]) <= 1e-12
        assert_allclose(np.linalg.norm(beta), 1.0, rtol=1e-12)


class TestFieldCommand:
    def test_row_count_and_tangency(self, tmp_path):
        out = tmp_path / "field.csv"
        proc = run_cli("field", "--alpha", "0", "--c", "2", "--n", "1", "--k", "0",
                       "--ell", "1", "--grid", "slice-z:64x64", "--out", str(out))
        assert proc.returncode == 0
        rows = read_csv(out)
        # counting contract: 64x64 lattice minus dropped rows
        pts, outside = parse_grid("slice-z:64x64", (-1.0, 1.0))
        axis = np.hypot(pts[:, 0], pts[:, 1]) <= 1e-12
        assert len(rows) == 64 * 64 - outside - int(axis.sum())
        assert f"dropped {outside} points outside" in proc.stderr
        # every emitted row is tangential: x . v = 0
        for r in rows:
            x = np.array([float(r["x"]), float(r["y"]), float(r["z"])])
            v = np.array([float(r["vx"]), float(r["vy"]), float(r["vz"])])
            assert abs(x @ v) <= 1e-10

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["field", "--alpha", "0", "--c", "2", "--n", "2", "--k", "0",
                "--ell", "3", "--grid", "ball3d:8x8x8"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_scalar_variant(self, tmp_path):
        out = tmp_path / "scalar.csv"
        assert main(["field", "--alpha", "0", "--c", "1", "--n", "0", "--k", "0",
                     "--ell", "1", "--grid", "sphere-shell:6x8:0.5", "--scalar",
                     "--out", str(out)]) == 0
        rows = read_csv(out)
        assert set(rows[0].keys()) == {"x", "y", "z", "value"}
        assert len(rows) == 48

    def test_grid_parser_errors(self):
        with pytest.raises(ParameterError):
            parse_grid("slice-z", (-1, 1))
        with pytest.raises(ParameterError):
            parse_grid("torus:8x8", (-1, 1))
        with pytest.raises(ParameterError):
            parse_grid("slice-z:8x8x8", (-1, 1))
        with pytest.raises(ParameterError):
            parse_grid("ball3d:0x8x8", (-1, 1))

    def test_grid_points_inside_ball(self):
        pts, dropped = parse_grid("ball3d:9x9x9", (-1.0, 1.0))
        assert dropped > 0
        assert np.linalg.norm(pts, axis=1).max() <= 1.0


class TestVerifyCommand:
    def test_identities_pass_exit_0(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["verify", "--alpha", "0", "--c", "2", "--N", "2",
                     "--checks", "identities", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["schema_version"] == 1
        assert report["passed"] is True
        (check,) = report["checks"]
        assert check["name"] == "identities"
        assert check["residual"] <= 1e-12

    def test_gram_vector_diagonal(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["verify", "--alpha", "0", "--c", "2", "--N", "2",
                     "--checks", "gram-vector", "--quad-mr", "20", "--quad-mt", "20",
                     "--quad-mp", "40", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        gram = [c for c in report["checks"] if c["name"] == "gram-vector"][0]
        assert gram["passed"] is True
        # modes at N = 2: n = 1 (ell = 1..3, k = 0), n = 2 (ell = 1..5)
        assert sorted(set(gram["details"]["diagonal"])) == [2.0, 6.0]

    def test_tiny_quadrature_fails_gate_exit_1(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["verify", "--alpha", "0", "--c", "2", "--N", "2",
                     "--checks", "gram-vector", "--quad-mr", "2", "--quad-mt", "2",
                     "--quad-mp", "4", "--out", str(out)])
        assert code == 1
        report = json.loads(out.read_text())
        assert report["passed"] is False
        assert report["checks"][0]["name"] == "quadrature-gate"
        assert report["checks"][0]["passed"] is False

    def test_unknown_check_exit_2(self, tmp_path):
        code = main(["verify", "--alpha", "0", "--c", "1", "--N", "2",
                     "--checks", "nonsense", "--out", str(tmp_path / "r.json")])
        assert code == 2

    def test_stdout_progress_is_comment_prefixed(self, tmp_path, capsys):
        main(["verify", "--alpha", "0", "--c", "0", "--N", "2",
              "--checks", "c0-law", "--out", str(tmp_path / "r.json")])
        lines = [ln for ln in capsys.readouterr().out.splitlines() if ln]
        assert all(ln.startswith("#") for ln in lines)


class TestFloatFormatting:
    def test_seventeen_digit_round_trip(self, tmp_path):
        out = tmp_path / "eig.csv"
        main(["eigenvalues", "--alpha", "0", "--c", "2", "--N", "3",
              "--out", str(out)])
        table = bouwkamp.solve_modes(3, 0.0, 2.0)
        for row in read_csv(out):
            n, k = int(row["n"]), int(row["k"])
            assert float(row["chi"]) == table[(n, k)].chi  # bit-exact round trip
