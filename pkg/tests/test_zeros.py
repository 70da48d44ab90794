import cmath
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zexplore import complexfn as cf
from zexplore import zeros as zz
from zexplore.argtrack import track
from zexplore.complexfn import ComplexPoint
from zexplore.errors import DomainError
from zexplore.symbols import f_critical

# imaginary parts of the first ten nontrivial zeros, from mpmath.zetazero
ZETA_ZEROS = (
    14.134725141734695, 21.022039638771556, 25.01085758014569, 30.424876125859512,
    32.93506158773919, 37.586178158825675, 40.9187190121475, 43.327073280915,
    48.00515088116716, 49.7738324776723,
)
FIRST_IMAG_HALF = 3.436218226086962  # mpmath findroot on Im zeta(1/2 + i t)


@pytest.fixture(scope="module")
def zeros_10_30():
    return zz.find_zeros(10.0, 30.0)


def test_three_zeros_between_10_and_30(zeros_10_30):
    assert [r.kind for r in zeros_10_30] == [zz.FULL] * 3
    for rec, ref in zip(zeros_10_30, ZETA_ZEROS[:3]):
        assert abs(rec.rho0 - ref) < 1e-6
        assert rec.residual_abs_zeta < 1e-8
        assert rec.criterion_residual < 1e-5


def test_no_zeros_below_10():
    assert zz.find_zeros(1.0, 10.0) == []


def test_zeros_up_to_50():
    found = [r.rho0 for r in zz.find_zeros(10.0, 50.0)]
    assert len(found) == len(ZETA_ZEROS)
    assert max(abs(a - b) for a, b in zip(found, ZETA_ZEROS)) < 1e-6


def test_no_zeros_off_the_line():
    assert zz.find_zeros(10.0, 30.0, sigma=0.7) == []


def test_each_zero_is_an_odd_jump(zeros_10_30):
    tr = track(0.5, 30.0)
    for rec in zeros_10_30:
        jumps = tr.jumps_between(rec.rho0 - 1e-3, rec.rho0 + 1e-3)
        assert len(jumps) == 1 and jumps[0].parity == "odd"


def test_range_validation():
    with pytest.raises(DomainError):
        zz.find_zeros(30.0, 10.0)
    with pytest.raises(DomainError):
        zz.find_zeros(10.0, 200.0)
    with pytest.raises(ValueError):
        zz.find_half_zeros(2.0, 5.0, "BOTH")


def test_first_imaginary_half_zero():
    recs = zz.find_half_zeros(2.0, 5.0, zz.IMAG_HALF)
    assert len(recs) == 1
    assert abs(recs[0].rho0 - FIRST_IMAG_HALF) < 1e-8


def test_real_half_zeros_have_alpha_at_half_pi():
    recs = zz.find_half_zeros(2.0, 30.0, zz.REAL_HALF)
    assert recs
    tr = track(0.5, 30.0)
    for r in recs:
        a = tr.angle_at(r.rho0)
        assert abs(math.cos(a)) < 1e-6
        assert r.criterion_residual < 1e-6


def test_anomalous_flag_matches_component_signs():
    # zeta has no imaginary half-zero with zeta_R < 0 below rho = 100
    recs = zz.find_half_zeros(2.0, 100.0, zz.IMAG_HALF)
    assert len(recs) == 31
    for r in recs:
        z, z1, _ = cf.zeta_derivs(complex(0.5, r.rho0), order=2)
        assert r.anomalous == (z.real < 0 and z1.real > 0)


def test_anomalous_flag_on_linear_source():
    # F(s) = -1 + (s - 1/2 - 5i): Im F = 0 at rho = 5 with F_R = -1 and F'_R = 1
    def source(s, cfg=None):
        return complex(-1.0, 0.0) + (complex(s) - complex(0.5, 5.0)), 1.0 + 0j, 0j

    recs = zz.find_half_zeros(1.0, 9.0, zz.IMAG_HALF, source=source)
    assert len(recs) == 1
    assert abs(recs[0].rho0 - 5.0) < 1e-9 and recs[0].anomalous


def test_zero_conditions_at_first_zero():
    rep = zz.zero_conditions(ComplexPoint(0.5, ZETA_ZEROS[0]))
    assert rep["Tan2Beta"].residual < 1e-5
    assert rep["al-be"].holds and rep["tanBeta"].holds
    assert rep.all_hold, {k: c.residual for k, c in rep.conditions.items() if not c.holds}


@pytest.mark.parametrize("rho0", ZETA_ZEROS[:3])
def test_zero_conditions_at_found_zeros(rho0):
    rep = zz.zero_conditions(ComplexPoint(0.5, rho0))
    assert rep.all_hold, {k: c.residual for k, c in rep.conditions.items() if not c.holds}


def test_zero_conditions_fail_away_from_zero():
    rep = zz.zero_conditions(ComplexPoint(0.5, 15.0))
    assert rep["tanBetaW"].residual > 1e-2
    assert not rep["Zabs1=Zabs2"].holds


def test_tan2beta_asymptotic_at_50():
    assert zz.tan2beta_asy_gap(50.0) < 1e-8


@settings(max_examples=40, deadline=None)
@given(st.floats(1.0, 60.0))
def test_tan2beta_rhs_is_tan_two_alpha_everywhere(rho):
    if abs(cf.zeta(complex(0.5, rho))) < 1e-6:
        return
    assert zz.tan2beta_vs_tan2alpha(rho) < 1e-9


def test_f_sign_change():
    rho_s = zz.f_sign_change()
    assert abs(rho_s - 6.28) < 0.01
    assert all(f_critical(6.3 + i * (100 - 6.3) / 199) < 0 for i in range(200))
    assert f_critical(6.0) > 0


def test_zero_csv():
    buf = io.StringIO()
    zz.write_zero_csv(zz.find_zeros(10.0, 22.0), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "kind,rho0,n,residual,beta0"
    assert len(lines) == 3 and lines[1].startswith("FULL,1.41347251417")


def test_scan_handles_root_on_grid_point():
    brackets = list(zz._scan(lambda x: x - 1.0, 0.0, 2.0, 0.5))
    assert len(brackets) == 1
    a, b, _, _ = brackets[0]
    assert a < 1.0 < b
