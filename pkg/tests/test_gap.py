import math

import pytest

from hypgap import (
    ProblemParams,
    fd_eigen_L_one,
    fd_eigen_L_one_extrapolated,
    fd_eigen_L_star,
    fd_eigen_L_star_extrapolated,
    find_L_one,
    find_L_star,
    first_zero_theta,
    gap_interval,
)

PI = math.pi

# L* and L1 frozen from a 30-digit mpmath root search on the defining series
# (first positive L with P^{-alpha}, resp. P^{alpha}, vanishing at theta1)
MPMATH_GAP_TABLE = {
    (2.2, 0.5): (20.555395503064597, 26.491306665587173),
    (2.2, 1.0): (5.3834754163927868, 6.867042947081492),
    (2.5, 1.0): (4.3356256380580669, 8.0428606070575998),
    (3.0, 1.0): (2.7174011002723397, 10.119604401089359),
    (3.0, 2.0): (0.86685027506808491, 2.7174011002723397),
    (3.5, 0.5): (4.6279683416790788, 48.895976222085132),
    (3.8, 1.0): (0.48414759271847585, 13.737646766101116),
}


def test_first_zero_examples(params31):
    z = first_zero_theta(0.25 + PI * PI, -0.5, params31, 2.0)
    assert z == pytest.approx(1.0, abs=1e-10)
    z = first_zero_theta(0.25 + PI * PI / 4.0, 0.5, params31, 2.0)
    assert z == pytest.approx(1.0, abs=1e-10)
    assert first_zero_theta(0.0, 0.5, params31, 10.0) is None


def test_first_zero_decreasing_in_L(params31):
    # Sturm comparison: a larger L pushes the first zero left
    zs = [first_zero_theta(L, 0.5, params31, 4.0) for L in (3.0, 6.0, 12.0, 24.0)]
    assert all(z is not None for z in zs)
    assert all(a > b for a, b in zip(zs, zs[1:]))


@pytest.mark.parametrize("theta1", [0.5, 1.0, 2.0])
def test_n3_closed_forms(theta1):
    params = ProblemParams(3.0, theta1)
    assert find_L_star(params) == pytest.approx(0.25 + PI**2 / (4 * theta1**2), abs=1e-8)
    assert find_L_one(params) == pytest.approx(0.25 + PI**2 / theta1**2, abs=1e-8)


@pytest.mark.parametrize("key", sorted(MPMATH_GAP_TABLE))
def test_against_mpmath_roots(key):
    n, theta1 = key
    Ls_ref, Lo_ref = MPMATH_GAP_TABLE[key]
    params = ProblemParams(n, theta1)
    assert find_L_star(params) == pytest.approx(Ls_ref, abs=2e-8)
    assert find_L_one(params) == pytest.approx(Lo_ref, abs=2e-8)


def test_gap_interval_structure(gap31):
    assert gap31.lambda_trivial == pytest.approx(0.75)
    assert gap31.lambda_gap_top == pytest.approx(1.0 + PI**2 / 4.0, abs=1e-8)
    assert gap31.lambda_one == pytest.approx(1.0 + PI**2, abs=1e-8)
    assert 0.0 < gap31.L_star < gap31.L_one
    assert gap31.L_one >= 0.25
    assert gap31.lambda_trivial < gap31.lambda_gap_top < gap31.lambda_one
    assert gap31.tol <= 1e-9


def test_gap_ordering_off_n3():
    g = gap_interval(ProblemParams(3.5, 1.0))
    assert g.lambda_trivial < g.lambda_gap_top < g.lambda_one


def test_domain_monotonicity():
    # enlarging the ball can only lower both thresholds
    Ls = [find_L_star(ProblemParams(2.8, t)) for t in (0.5, 1.0, 2.0)]
    Lo = [find_L_one(ProblemParams(2.8, t)) for t in (0.5, 1.0, 2.0)]
    assert Ls[0] > Ls[1] > Ls[2]
    assert Lo[0] > Lo[1] > Lo[2]


def test_fd_eigen_L_one_n3(params31):
    v = fd_eigen_L_one(params31, 4000)
    assert v == pytest.approx(0.25 + PI**2, abs=1e-4)


def test_fd_eigen_L_star_n3(params31):
    v = fd_eigen_L_star(params31, 4000)
    assert v == pytest.approx(0.25 + PI**2 / 4.0, abs=1e-4)
    assert v > 0.0


def test_fd_eigen_second_order_convergence(params31):
    # eigenvalue error must shrink like m^-2 under grid doubling
    a, b, c = (fd_eigen_L_one(params31, m) for m in (500, 1000, 2000))
    ratio = (a - b) / (b - c)
    assert 3.5 < ratio < 4.5
    a, b, c = (fd_eigen_L_star(ProblemParams(3.8, 1.0), m) for m in (500, 1000, 2000))
    ratio = (a - b) / (b - c)
    assert 3.5 < ratio < 4.5


def test_fd_eigen_requires_minimum_grid(params31):
    with pytest.raises(ValueError):
        fd_eigen_L_one(params31, 99)
    with pytest.raises(ValueError):
        fd_eigen_L_star(params31, 50)


@pytest.mark.parametrize("n,theta1", [(2.5, 1.0), (3.0, 2.0), (3.5, 0.5)])
def test_cross_oracle_agreement(n, theta1):
    # Legendre first-zero search vs Richardson-extrapolated finite elements
    params = ProblemParams(n, theta1)
    assert abs(find_L_star(params) - fd_eigen_L_star_extrapolated(params, 1000)) <= 1e-6
    assert abs(find_L_one(params) - fd_eigen_L_one_extrapolated(params, 1000)) <= 1e-6


def test_mckean_bound_sampled():
    for n, theta1 in [(2.2, 2.0), (3.0, 2.0), (3.8, 2.0)]:
        assert find_L_one(ProblemParams(n, theta1)) >= 0.25
