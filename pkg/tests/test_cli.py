import pytest

from zexplore.cli import main
from zexplore.figures import HEADERS


def test_zeros_prints_three_records(capsys, tmp_path):
    out = tmp_path / "z.csv"
    assert main(["zeros", "--min", "10", "--max", "30", "--out", str(out)]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("FULL")]
    assert len(lines) == 3 and "rho0=14.134725" in lines[0]
    assert out.read_text().splitlines()[0] == "kind,rho0,n,residual,beta0"


def test_half_zeros(capsys):
    assert main(["zeros", "--min", "2", "--max", "5", "--half", "imag"]) == 0
    assert "IMAG_HALF" in capsys.readouterr().out


def test_figure_four_csv(tmp_path):
    out = tmp_path / "fig4.csv"
    assert main(["figure", "--n", "4", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "sigma,abs_zc,abs_zc_reflected,ratio"
    assert not (tmp_path / "fig4.png").exists()


def test_figure_plot_flag(tmp_path):
    pytest.importorskip("matplotlib")
    out = tmp_path / "fig1.csv"
    assert main(["figure", "--n", "1", "--out", str(out), "--plot"]) == 0
    assert out.read_text().splitlines()[0] == HEADERS[1]
    assert (tmp_path / "fig1.png").stat().st_size > 0


def test_figure_csv_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["figure", "--n", "2", "--out", str(a)])
    main(["figure", "--n", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_identities_standard_sweep(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["identities", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "failed=0" in text.splitlines()[-1]
    assert out.read_text().startswith("id,sigma,rho,")


def test_identities_custom_grid(capsys):
    assert main(["identities", "--ids", "FE-COMP,MAG-RATIO", "--sigma-min", "0.2", "--sigma-max", "0.8",
                 "--n-sigma", "3", "--rho-min", "3", "--rho-max", "30", "--n-rho", "4"]) == 0
    assert "TOTAL ok=24 skipped=0 failed=0" in capsys.readouterr().out


def test_identities_failure_exit_code(capsys):
    assert main(["identities", "--ids", "FE-COMP", "--tol", "1e-30"]) == 1
    assert "FAILED FE-COMP" in capsys.readouterr().out


def test_trace_writes_two_files(tmp_path):
    out = tmp_path / "alpha.csv"
    assert main(["trace", "--sigma", "0.5", "--kind", "alpha", "--max", "22", "--out", str(out)]) == 0
    jumps = (tmp_path / "alpha_jumps.csv").read_text().splitlines()
    assert out.read_text().splitlines()[0] == "rho,angle,principal_arg,k"
    assert len(jumps) == 3


def test_oracle_check(capsys):
    assert main(["oracle-check"]) == 0
    assert "150/150" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["zeros", "--min", "10"],
    ["figure", "--n", "7", "--out", "x.csv"],
    ["identities", "--unknown-flag"],
    ["identities", "--ids", "NOPE"],
    ["zeros", "--min", "30", "--max", "10"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
