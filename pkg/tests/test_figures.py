import io
import math

import pytest

from zexplore import figures as fg

PI = math.pi
# mpmath.zetazero ordinates inside [30, 50]
ZEROS_30_50 = (30.424876125859512, 32.93506158773919, 37.586178158825675, 40.9187190121475,
               43.327073280915, 48.00515088116716, 49.7738324776723)


@pytest.fixture(scope="module")
def fig3():
    return fg.figure3_data()


def test_figure1_constant_k():
    rows = fg.figure1_data()
    assert len(rows) == 241
    assert {r.k for r in rows} == {2}
    assert max(abs(r.residual) for r in rows) < 1e-6


def test_figure2_interpretations_differ_by_integer_pi():
    rows = fg.figure2_data()
    for r in rows:
        g = r.interpretation_gap_over_pi
        assert abs(g - round(g)) < 1e-6
    assert rows[0].interpretation_gap_over_pi == 0
    assert rows[-1].interpretation_gap_over_pi != 0


def test_figure3_jumps_only_at_zeros(fig3):
    _, jumps = fig3
    assert len(jumps) == len(ZEROS_30_50)
    assert max(abs(a - b) for a, b in zip(jumps, ZEROS_30_50)) < 1e-6


def test_figure3_slope_negative(fig3):
    rows, _ = fig3
    slopes = [r.slope for r in rows if not math.isnan(r.slope)]
    assert len(slopes) >= 390
    assert max(slopes) < 0


def test_figure3_outside_band(fig3):
    rows, _ = fig3
    for r in rows:
        assert not -PI / 2 < r.beta_minus_alpha < PI / 2


def test_reduce_band():
    assert fg.reduce_band(PI / 2) == pytest.approx(-1.5 * PI)
    assert fg.reduce_band(0.0) == 0.0
    assert fg.reduce_band(-2 * PI) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_csv_headers_and_determinism(n):
    rows = fg.figure_rows(n)
    a, b = io.StringIO(), io.StringIO()
    fg.write_csv(n, rows, a)
    fg.write_csv(n, fg.figure_rows(n), b)
    assert a.getvalue() == b.getvalue()
    lines = a.getvalue().splitlines()
    assert lines[0] == fg.HEADERS[n]
    assert len(lines) == len(rows) + 1


def test_unknown_figure():
    with pytest.raises(ValueError):
        fg.figure_rows(5)


def test_render_png(tmp_path):
    pytest.importorskip("matplotlib")
    p = tmp_path / "fig4.png"
    fg.render_png(4, fg.figure_rows(4), p)
    assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
