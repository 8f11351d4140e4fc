import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hypgap.bvp
from hypgap import (
    ProblemParams,
    RejectedLambda,
    SolutionProfile,
    count_crossings,
    find_L_one,
    first_zero_theta,
    frobenius_coefficient,
    integrate_shoot,
    integrate_shoot_hp,
    rayleigh_quotient,
    residual,
    shoot,
    sobolev_constant,
)

PI = math.pi


@settings(max_examples=30, deadline=None, derandomize=True)
@given(
    st.floats(min_value=2.05, max_value=3.95),
    st.floats(min_value=-5.0, max_value=15.0),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_frobenius_coefficient_identity(n, lam, u0):
    params = ProblemParams(n, 1.0)
    a = frobenius_coefficient(params, lam, u0)
    assert 2.0 * params.n * a + lam * u0 + u0**params.p == pytest.approx(0.0, abs=1e-9 * max(1.0, abs(lam * u0), u0**params.p))


def test_linear_limit_n3(params31):
    # u0 -> 0 turns the shot into the linear problem; the regular solution is
    # sin(k theta)/sinh(theta) with k = sqrt(lambda - 1), first zero pi/k
    z, _ = integrate_shoot(params31, 7.0, 1e-7, theta_cap=2.0)
    assert z == pytest.approx(PI / math.sqrt(6.0), abs=1e-6)


def test_linear_limit_matches_first_zero_search():
    # cross-module consistency: the small-u0 zero equals the Legendre first
    # zero at L = lambda - n(n-2)/4 and order alpha
    n, L = 2.7, 5.0
    params = ProblemParams(n, 2.0)
    lam = n * (n - 2.0) / 4.0 + L
    z_shoot, _ = integrate_shoot(params, lam, 1e-7, theta_cap=2.0)
    z_leg = first_zero_theta(L, params.alpha, params, 2.0)
    assert z_shoot == pytest.approx(z_leg, abs=1e-6)


def test_solution_at_lambda7(params31, solution31_lam7):
    prof = solution31_lam7.profile
    p = params31.p
    assert solution31_lam7.kind == "Solution"
    # gates of an accepted solution
    assert np.all(prof.values[1:-1] > 0.0)
    assert abs(prof.values[-1]) <= 1e-8 * prof.u0
    assert prof.residual_max <= 1e-6 * max(1.0, prof.u0**p)
    delta = prof.thetas[1]
    a = frobenius_coefficient(params31, 7.0, prof.u0)
    assert abs(prof.dvalues[1]) <= 3.0 * abs(a) * delta
    assert prof.dvalues[0] == 0.0
    # self-consistency: the shooting height reproduces the boundary zero
    z, _ = integrate_shoot(params31, 7.0, prof.u0, theta_cap=2.0)
    assert z == pytest.approx(1.0, abs=1e-8)


def test_quotient_below_sobolev(params31, solution31_lam7):
    q = rayleigh_quotient(solution31_lam7.profile, params31, 7.0)
    assert q < sobolev_constant(3.0)


def test_quotient_scale_invariance(params31, solution31_lam7):
    prof = solution31_lam7.profile
    scaled = SolutionProfile(
        prof.lam, prof.u0, prof.thetas, 2.0 * prof.values, 2.0 * prof.dvalues, prof.residual_max
    )
    q1 = rayleigh_quotient(prof, params31, 7.0)
    q2 = rayleigh_quotient(scaled, params31, 7.0)
    assert q2 == pytest.approx(q1, rel=1e-10)


def test_no_solution_inside_gap(params31):
    out = shoot(params31, 3.0)
    assert out.kind == "NoSolution"
    assert out.profile is None
    assert len(out.evidence) >= 20
    u0s = [u0 for u0, _ in out.evidence]
    assert min(u0s) == pytest.approx(1e-3) and max(u0s) == pytest.approx(1e6)
    for _, zeta in out.evidence:
        assert zeta is None or zeta > params31.theta1


def test_rejected_lambda(params31):
    with pytest.raises(RejectedLambda):
        shoot(params31, 12.0)
    lam1 = 0.75 + find_L_one(params31)
    with pytest.raises(RejectedLambda):
        shoot(params31, lam1)


def test_count_crossings(params31):
    grid = np.geomspace(1e-3, 1e6, 30)
    assert count_crossings(params31, 7.0, grid) == 1
    assert count_crossings(params31, 3.0, grid) == 0
    assert count_crossings(params31, 7.0, np.array([])) == 0


def test_residual_planted_quadratic(params31):
    # u = c0 + c2 theta^2 with consistent derivatives: the stencil recovers
    # u'' = 2 c2 exactly, so the defect is computable by hand
    c0, c2, lam = 2.0, -0.4, 3.0
    thetas = np.linspace(0.0, 1.0, 201)
    u = c0 + c2 * thetas**2
    du = 2.0 * c2 * thetas
    prof = SolutionProfile(lam, c0, thetas, u, du, math.nan)
    got = residual(prof, params31, lam)
    ti = thetas[2:-2]
    ui = u[2:-2]
    expected = np.max(
        np.abs(2.0 * c2 + 2.0 / np.tanh(ti) * du[2:-2] + lam * ui + ui**5)
    )
    assert got == pytest.approx(expected, rel=1e-11)


def test_residual_detects_corruption(params31, solution31_lam7):
    prof = solution31_lam7.profile
    eps = 1e-6
    values = prof.values.copy()
    mid = len(values) // 2
    values[mid] += eps
    h = prof.thetas[1] - prof.thetas[0]
    corrupted = SolutionProfile(prof.lam, prof.u0, prof.thetas, values, prof.dvalues, math.nan)
    assert residual(corrupted, params31, 7.0) >= eps / h**2


def test_residual_requires_interior_nodes(params31):
    thetas = np.linspace(0.0, 1.0, 50)
    prof = SolutionProfile(3.0, 1.0, thetas, np.ones_like(thetas), np.zeros_like(thetas), 0.0)
    with pytest.raises(ValueError):
        residual(prof, params31, 3.0)


def test_sobolev_constant_values():
    # frozen from 30-digit evaluation of pi n(n-2) (Gamma(n/2)/Gamma(n))^(2/n)
    assert sobolev_constant(3.0) == pytest.approx(5.4779040895313319, rel=1e-12)
    assert sobolev_constant(4.0) == pytest.approx(8.0 * PI / math.sqrt(6.0), rel=1e-12)
    assert sobolev_constant(4.0) == pytest.approx(10.260398641294913, rel=1e-12)
    assert sobolev_constant(2.01) < 0.15
    with pytest.raises(ValueError):
        sobolev_constant(2.0)
    with pytest.raises(ValueError):
        sobolev_constant(4.3)


def test_shooting_height_stable_under_tolerance(params31, solution31_lam7, monkeypatch):
    # halving the integrator tolerance moves u0 by <= 1e-7 relative
    monkeypatch.setattr(hypgap.bvp, "SHOOT_RTOL", 5e-11)
    out = shoot(params31, 7.0)
    assert out.profile.u0 == pytest.approx(solution31_lam7.profile.u0, rel=1e-7)


def test_hp_integration_consistency(params31):
    # well-conditioned point: both precisions agree
    z_d, _ = integrate_shoot(params31, 3.0, 100.0, theta_cap=2.0)
    z_hp = integrate_shoot_hp(params31, 3.0, 100.0, theta_cap=2.0)
    assert z_d == pytest.approx(z_hp, abs=1e-7)
    # conditioning-dominated point: extended precision recovers the plateau
    # of the singular linear solution, first zero pi/(2 sqrt(lambda - 1))
    z_hp = integrate_shoot_hp(params31, 3.0, 1e6, theta_cap=2.0)
    assert z_hp == pytest.approx(PI / (2.0 * math.sqrt(2.0)), abs=1e-8)
