import os
import subprocess
import sys

import numpy as np
import pytest

from skewspec.cli import main


def run_cli(args, cwd):
    env = dict(os.environ, SKEWSPEC_OUT_DIR=str(cwd))
    return subprocess.run([sys.executable, "-m", "skewspec.cli", *args],
                          capture_output=True, text=True, env=env, cwd=cwd)


class TestExpand:
    def test_mt_runge_rows_and_norm(self, tmp_path):
        res = run_cli(["expand", "--basis", "mt", "--n", "32", "--fn", "runge1",
                       "--no-meta"], tmp_path)
        assert res.returncode == 0
        assert "parseval_norm = 1.2533141" in res.stdout
        lines = (tmp_path / "expand_mt_runge1_n32.csv").read_text().splitlines()
        assert lines[0] == "n,re,im"
        assert len(lines) == 1 + 65
        # coefficient-modulus ratio ~ 1/3 (poles at +-i)
        data = np.loadtxt(lines[1:], delimiter=",")
        mags = np.abs(data[:, 1] + 1j * data[:, 2])
        center = 32
        ratios = mags[center + 6: center + 16] / mags[center + 5: center + 15]
        assert np.allclose(ratios, 1.0 / 3.0, atol=5e-3)

    def test_ultra_basis_vector_pattern(self, tmp_path):
        res = run_cli(["expand", "--basis", "ultra", "--alpha", "2", "--n", "8",
                       "--fn", "phi5", "--no-meta"], tmp_path)
        assert res.returncode == 0
        data = np.loadtxt((tmp_path / "expand_ultra_phi5_n8.csv").read_text()
                          .splitlines()[1:], delimiter=",")
        expect = np.zeros(9)
        expect[5] = 1.0
        assert np.allclose(data[:, 1], expect, atol=1e-10)

    def test_unknown_function_exit_2_lists_registry(self, tmp_path):
        res = run_cli(["expand", "--basis", "mt", "--n", "8", "--fn", "nope"],
                      tmp_path)
        assert res.returncode == 2
        assert "available" in res.stderr and "runge1" in res.stderr

    def test_missing_fn_usage_error(self, tmp_path):
        res = run_cli(["expand", "--basis", "mt", "--n", "8"], tmp_path)
        assert res.returncode == 2

    def test_missing_alpha_for_w_system(self, tmp_path):
        res = run_cli(["expand", "--basis", "ultra", "--n", "8",
                       "--fn", "sin_pi_x"], tmp_path)
        assert res.returncode == 2


class TestFigures:
    @pytest.mark.parametrize("which", ["fig41a", "fig42b"])
    def test_schema(self, which, tmp_path):
        res = run_cli(["figures", "--which", which, "--terms", "11",
                       "--grid", "120" if which == "fig41a" else "150",
                       "--no-meta"], tmp_path)
        assert res.returncode == 0
        lines = (tmp_path / f"{which}.csv").read_text().splitlines()
        assert lines[0] == "x,err_alpha1,err_alpha2,err_alpha3,err_alpha4"
        assert len(lines) == 1 + (120 if which == "fig41a" else 150)

    def test_deterministic_rerun(self, tmp_path):
        args = ["figures", "--which", "fig41a", "--terms", "9", "--grid", "110",
                "--no-meta", "--out", str(tmp_path / "a.csv")]
        assert main(args) == 0
        first = (tmp_path / "a.csv").read_bytes()
        args[-1] = str(tmp_path / "b.csv")
        assert main(args) == 0
        assert first == (tmp_path / "b.csv").read_bytes()

    def test_meta_header_toggle(self, tmp_path):
        out = tmp_path / "m.csv"
        assert main(["figures", "--which", "fig41a", "--terms", "5",
                     "--grid", "101", "--out", str(out)]) == 0
        assert out.read_text().startswith("# skewspec figures")


class TestPde:
    def test_diffusion_ratio_printed(self, tmp_path):
        res = run_cli(["pde", "diffusion", "--alpha", "2", "--n", "48",
                       "--t", "0.1", "--no-meta"], tmp_path)
        assert res.returncode == 0
        ratio = float(res.stdout.strip().splitlines()[-1].split("=")[1])
        assert ratio == pytest.approx(np.exp(-np.pi ** 2 / 10), abs=1e-5)
        norms = (tmp_path / "pde_diffusion_n48_norms.csv").read_text().splitlines()
        assert norms[0] == "step,t,norm"
        final = (tmp_path / "pde_diffusion_n48_final.csv").read_text().splitlines()
        assert final[0] == "x,re_u,im_u"

    def test_schrodinger_unitary_ratio(self, tmp_path):
        res = run_cli(["pde", "schrodinger", "--basis", "hermite",
                       "--potential", "harmonic", "--n", "32", "--t", "1",
                       "--no-meta"], tmp_path)
        assert res.returncode == 0
        ratio = float(res.stdout.strip().splitlines()[-1].split("=")[1])
        assert ratio == pytest.approx(1.0, abs=1e-10)

    def test_bad_potential_exit_2(self, tmp_path):
        res = run_cli(["pde", "schrodinger", "--basis", "hermite",
                       "--potential", "cubic-well", "--n", "8", "--t", "1"],
                      tmp_path)
        assert res.returncode == 2

    def test_bad_basis_exit_2(self, tmp_path):
        res = run_cli(["pde", "schrodinger", "--basis", "laguerre",
                       "--potential", "zero", "--n", "8", "--t", "1"], tmp_path)
        assert res.returncode == 2


def test_env_var_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SKEWSPEC_OUT_DIR", str(tmp_path / "sub"))
    assert main(["expand", "--basis", "hermite", "--n", "4", "--fn", "gaussian",
                 "--no-meta"]) == 0
    assert (tmp_path / "sub" / "expand_hermite_gaussian_n4.csv").exists()
