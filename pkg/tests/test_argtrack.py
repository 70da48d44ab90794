import cmath
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zexplore import argtrack as at
from zexplore import complexfn as cf
from zexplore.complexfn import ComplexPoint
from zexplore.errors import DomainError, NonIntegerResidual

PI = math.pi
FIRST_ZERO = 14.134725141734695


# shared by fixtures and hypothesis tests (function-scoped fixtures do not mix with @given)
_ALPHA_HALF = at.track(0.5, 52.0, "alpha")


@pytest.fixture(scope="module")
def alpha_half():
    return _ALPHA_HALF


@pytest.fixture(scope="module")
def third():
    return at.track(1 / 3, 20.0, "alpha"), at.track(1 / 3, 20.0, "alpha_tilde")


def test_theta_trace_matches_log_gamma():
    tr = at.track(0.5, 26.0, "theta")
    assert abs(tr.angle_at(25.0) - cf.log_gamma(complex(0.5, 25.0)).imag) < 1e-9


def test_jump_at_first_zero_is_odd(alpha_half):
    jumps = alpha_half.jumps_between(14.0, 14.3)
    assert len(jumps) == 1
    j = jumps[0]
    assert abs(j.rho - FIRST_ZERO) < 1e-6
    assert j.parity == "odd" and abs(j.jump_over_pi) == 1


def test_every_zero_below_50_gives_one_odd_jump(alpha_half):
    jumps = alpha_half.jumps_between(1.0, 50.0)
    assert len(jumps) == 10
    assert all(j.parity == "odd" for j in jumps)


def test_alpha_matches_closed_form_with_integer_k(alpha_half):
    x = (alpha_half.angle_at(10.0) - at.critical_alpha_closed(10.0)) / PI
    assert abs(x - round(x)) < 1e-9


def test_alpha_p_closed_figure_one_point(third):
    ta, tt = third
    total = ta.angle_at(10.0) + tt.angle_at(10.0)
    assert abs(at.alpha_p_closed(ComplexPoint(1 / 3, 10.0), 2) - total) < 1e-7


def test_alpha_p_closed_on_critical_line_is_twice_alpha():
    for rho in (3.0, 10.0, 20.0):
        x = (at.alpha_p_closed(ComplexPoint(0.5, rho)) - 2 * at.critical_alpha_closed(rho)) / PI
        assert abs(x - round(x)) < 1e-9


@pytest.mark.parametrize("sigma,rho", [(1 / 3, 10.0), (0.2, 4.0), (0.7, 30.0), (0.5, 12.0)])
def test_alpha_p_rate_matches_finite_difference(sigma, rho):
    h = 1e-4
    fd = (at.alpha_p_closed(ComplexPoint(sigma, rho + h)) - at.alpha_p_closed(ComplexPoint(sigma, rho - h))) / (2 * h)
    assert abs(fd - at.alpha_p_rate(ComplexPoint(sigma, rho))) < 1e-6


def test_alpha_p_rate_negative_for_large_rho():
    for i in range(9):
        sig = 0.1 + 0.1 * i
        for rho in (10.0, 20.0, 50.0, 100.0):
            assert at.alpha_p_rate(ComplexPoint(sig, rho)) < 0


def test_winding_figure_one(third):
    ta, tt = third
    w = at.winding_k(ComplexPoint(1 / 3, 10.0), ta.angle_at(10.0) + tt.angle_at(10.0))
    assert w.k == 2 and w.parity == "even"


def test_winding_small_rho_keeps_initial_k():
    ta = at.track(0.5, 6.0, "alpha")
    tt = at.track(0.5, 6.0, "alpha_tilde")
    k0 = at.winding_k(ComplexPoint(0.5, 0.1), ta.angle_at(0.1) + tt.angle_at(0.1)).k
    w = at.winding_k(ComplexPoint(0.5, 5.0), ta.angle_at(5.0) + tt.angle_at(5.0))
    assert w.k == k0 and w.parity == "even"


def test_winding_rejects_non_integer():
    with pytest.raises(NonIntegerResidual):
        at.winding_k(ComplexPoint(0.3, 5.0), 0.5)


def test_branch_counter_steps_by_two_at_axis_crossings(alpha_half):
    rows = list(alpha_half.rows())
    steps = []
    for (r0, a0, p0, k0), (r1, a1, p1, k1) in zip(rows, rows[1:]):
        if k1 != k0:
            steps.append(k1 - k0)
            # principal value wrapped, continuous angle did not jump (away from zeros)
            if not alpha_half.jumps_between(r0, r1):
                assert abs(p1 - p0) > PI
    assert steps and all(abs(s) == 2 for s in steps)


def test_brent_below_first_zero_is_integer_pi():
    tr = at.track(0.5, 14.0, "alpha")
    for rho in (0.5, 5.0, 10.0, 13.5):
        x = at.brent_compare(rho, tr).diff_continuous_over_pi
        assert abs(x - 1) < 1e-9


def test_brent_interpretations_differ_by_integer_pi(alpha_half):
    b = at.brent_compare(15.0, alpha_half)
    gap = (b.rhs_continuous - b.rhs_principal) / PI
    assert gap != 0 and abs(gap - round(gap)) < 1e-9


def test_brent_rhs_small_rho_limit():
    # arctan(e^{-pi rho}) -> pi/4, theta -> 0
    assert abs(at.brent_rhs(0.0, 0.0) - (PI / 8 - PI / 8)) < 1e-15


def test_angle_at_outside_range():
    tr = at.track(0.5, 2.0)
    with pytest.raises(DomainError):
        tr.angle_at(3.0)


def test_polar_bundle_branch_counters():
    pb = at.polar_bundle(ComplexPoint(0.5, 20.0))
    z = cf.zeta(complex(0.5, 20.0))
    assert abs(pb.abs_z - abs(z)) < 1e-14
    assert abs(cmath.phase(z) - (pb.alpha - pb.k_alpha * PI)) < 1e-9


def test_trace_csv_headers():
    tr = at.track(0.5, 15.0)
    a, b = io.StringIO(), io.StringIO()
    at.write_trace_csv(tr, a)
    at.write_jumps_csv(tr, b)
    assert a.getvalue().splitlines()[0] == "rho,angle,principal_arg,k"
    lines = b.getvalue().splitlines()
    assert lines[0] == "rho,jump_over_pi,parity" and len(lines) == 2


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 50.0))
def test_unwrap_consistency(rho):
    tr = _ALPHA_HALF
    z = cf.zeta(complex(0.5, rho))
    if abs(z) < 1e-8:
        return
    a = tr.angle_at(rho)
    assert abs(math.cos(a) - z.real / abs(z)) < 1e-9
    assert abs(math.sin(a) - z.imag / abs(z)) < 1e-9


def test_unwrap_consistency_at_every_sample(alpha_half):
    for r, a, p, k in alpha_half.rows():
        z = cf.zeta(complex(0.5, r))
        assert abs(math.cos(a) - z.real / abs(z)) < 1e-9
        assert abs(math.sin(a) - z.imag / abs(z)) < 1e-9


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 0.9), st.floats(1.0, 13.0))
def test_argument_sum_is_closed_form_plus_integer_pi(sigma, rho):
    # no zeros below 14, so the tracked sum sits on one segment
    ta = at.track(sigma, rho, "alpha")
    tt = at.track(sigma, rho, "alpha_tilde")
    w = at.winding_k(ComplexPoint(sigma, rho), ta.angle_at(rho) + tt.angle_at(rho), tol=1e-6)
    assert abs(w.residual) < 1e-6

