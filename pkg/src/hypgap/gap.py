"""Gap boundaries: locate L* and L1, assemble the admissible-lambda interval.

L* (order -alpha) and L1 (order +alpha) are the smallest positive values of
L = -l(l+1) for which P_l^nu(cosh theta) stays positive on (0, theta1) and
vanishes exactly at theta1.  The first Dirichlet eigenvalue is then
lambda_1 = n(n-2)/4 + L1, and positive solutions of the nonlinear problem
exist precisely for lambda in (n(n-2)/4 + L*, lambda_1).

Two independent finite-element eigenvalue oracles cross-check the Legendre
route: ``fd_eigen_L_one`` discretizes the radial Dirichlet eigenproblem in
theta with weight sinh^(n-1), and ``fd_eigen_L_star`` the constrained
minimization in the stereographic variable r with weights r^(3-n) and
r^(3-n) rho^2, rho = 2/(1-r^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketFailure, DomainTooLarge, InvariantViolation
from .legendre import ProblemParams, _Evaluator

# Search constants: zero located to 1e-12 in theta; L bisection stops when the
# matched first zero is within 1e-10 of theta1 or the bracket is 1e-11 relative.
ZERO_SCAN_POINTS = 200
ZERO_SCAN_START = 1e-3
ZERO_THETA_TOL = 1e-12
L_MATCH_TOL = 1e-10
L_BRACKET_RTOL = 1e-11
L_BRACKET_MAX = 1e8

_QUAD_ORDER = 8


@dataclass(frozen=True)
class GapResult:
    """The three lambda thresholds for one (n, theta1)."""

    L_star: float
    L_one: float
    lambda_trivial: float  # n(n-2)/4
    lambda_gap_top: float  # n(n-2)/4 + L*
    lambda_one: float  # n(n-2)/4 + L1
    tol: float  # worst |first_zero - theta1| achieved by the two searches


def first_zero_theta(
    L: float, nu: float, params: ProblemParams, theta_cap: float
) -> float | None:
    """Smallest theta in (0, theta_cap] where P_l^nu(cosh theta) vanishes.

    Scans ZERO_SCAN_POINTS grid points for a sign change, then bisects the
    bracketing interval down to ZERO_THETA_TOL.  Returns None when the grid
    shows no sign change.
    """
    if theta_cap > params.theta_max:
        raise DomainTooLarge(f"theta_cap={theta_cap} exceeds theta_max={params.theta_max}")
    ev = _Evaluator(L, nu, theta_cap)
    grid = np.linspace(ZERO_SCAN_START, theta_cap, ZERO_SCAN_POINTS)
    vals = ev.values(grid)
    signs = np.sign(vals)
    idx = None
    for k in range(len(grid) - 1):
        if signs[k] == 0.0:
            return float(grid[k])
        if signs[k] * signs[k + 1] < 0.0:
            idx = k
            break
    else:
        if signs[-1] == 0.0:
            return float(grid[-1])
    if idx is None:
        return None
    lo, hi = float(grid[idx]), float(grid[idx + 1])
    flo = vals[idx]
    while hi - lo > ZERO_THETA_TOL:
        mid = 0.5 * (lo + hi)
        fm = ev.value(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _find_L_boundary(
    params: ProblemParams, nu: float, match_tol: float = L_MATCH_TOL
) -> tuple[float, float]:
    """Smallest L > 0 whose first zero of P_l^nu sits at theta1.

    The first zero is strictly decreasing in L (Sturm comparison), so the
    predicate "a zero exists at or below theta1" brackets L monotonically:
    geometric doubling from 1e-6 until it flips, then bisection.
    Returns (L, achieved |first_zero - theta1|).
    """
    target = params.theta1
    L_lo, L_hi = 0.0, 1e-6
    z = first_zero_theta(L_hi, nu, params, target)
    while z is None:
        L_lo, L_hi = L_hi, 2.0 * L_hi
        if L_hi > L_BRACKET_MAX:
            raise BracketFailure(
                f"no zero of P^({nu}) at or below theta1={target} for L up to {L_BRACKET_MAX}"
            )
        z = first_zero_theta(L_hi, nu, params, target)

    best_L, best_err = L_hi, abs(z - target)
    while best_err > match_tol and (L_hi - L_lo) > L_BRACKET_RTOL * max(1.0, L_hi):
        mid = 0.5 * (L_lo + L_hi)
        z = first_zero_theta(mid, nu, params, target)
        if z is None:
            L_lo = mid
        else:
            L_hi = mid
            err = abs(z - target)
            if err < best_err:
                best_L, best_err = mid, err
    return best_L, best_err


def find_L_star(params: ProblemParams) -> float:
    """Gap-top degree parameter: the order is -alpha = (n-2)/2."""
    return _find_L_boundary(params, -params.alpha)[0]


def find_L_one(params: ProblemParams) -> float:
    """First-eigenvalue degree parameter: the order is alpha = (2-n)/2."""
    return _find_L_boundary(params, params.alpha)[0]


def gap_interval(params: ProblemParams, match_tol: float = L_MATCH_TOL) -> GapResult:
    """Assemble the full gap description, enforcing the ordering invariants.

    ``match_tol`` is the |first zero - theta1| stop for both boundary
    searches (the L-bracket width stop stays at its default).
    """
    lam_triv = params.n * (params.n - 2.0) / 4.0
    L_star, err_star = _find_L_boundary(params, -params.alpha, match_tol)
    L_one, err_one = _find_L_boundary(params, params.alpha, match_tol)
    if not 0.0 < L_star < L_one:
        raise InvariantViolation(
            f"expected 0 < L* < L1, got L*={L_star}, L1={L_one} "
            f"(n={params.n}, theta1={params.theta1})"
        )
    if L_one < 0.25 - 1e-9:
        raise InvariantViolation(f"L1={L_one} violates the L1 >= 1/4 bound")
    return GapResult(
        L_star=L_star,
        L_one=L_one,
        lambda_trivial=lam_triv,
        lambda_gap_top=lam_triv + L_star,
        lambda_one=lam_triv + L_one,
        tol=max(err_star, err_one),
    )


# ---------------------------------------------------------------------------
# Finite-element eigenvalue oracles (independent of the Legendre machinery)
# ---------------------------------------------------------------------------


def _assemble_p1(x_right: float, m: int, beta: float, smooth_stiff, smooth_mass):
    """P1 stiffness/mass tridiagonals on [0, x_right] with weights x^beta * smooth.

    The first element uses Gauss-Jacobi quadrature with weight x^beta (the
    stiffness/mass weights may be singular or degenerate at 0); all other
    elements use plain Gauss-Legendre on the full weight.  Natural condition
    at 0, Dirichlet at x_right (last node eliminated).  Returns
    (K_diag, K_off, M_diag, M_off) of sizes (m, m-1, m, m-1) for nodes 0..m-1.
    """
    from scipy.special import roots_jacobi, roots_legendre  # deferred import

    h = x_right / m
    nodes = np.arange(m + 1) * h

    tg, wg = roots_legendre(_QUAD_ORDER)
    tj, wj = roots_jacobi(_QUAD_ORDER, 0.0, beta)

    # interior elements k = 1..m-1, mapped Gauss points, full weight
    lefts = nodes[1:m][:, None]
    xs = lefts + (tg[None, :] + 1.0) * (0.5 * h)
    ws = np.broadcast_to(wg[None, :] * (0.5 * h), xs.shape)
    w_stiff = (xs**beta) * smooth_stiff(xs)
    w_mass = (xs**beta) * smooth_mass(xs)

    # first element: x = h (1+t)/2, integral gains (h/2)^(beta+1) (1+t)^beta
    x0 = (tj + 1.0) * (0.5 * h)
    w0 = wj * (0.5 * h) ** (beta + 1.0)
    w0_stiff = w0 * smooth_stiff(x0)
    w0_mass = w0 * smooth_mass(x0)

    # hat functions on element [x_k, x_k + h]
    def hats(x, left):
        nr = (x - left) / h
        return 1.0 - nr, nr

    K_diag = np.zeros(m + 1)
    K_off = np.zeros(m)
    M_diag = np.zeros(m + 1)
    M_off = np.zeros(m)

    # stiffness: gradient of hats is -1/h, +1/h, so each element adds
    # (integral of w)/h^2 * [[1,-1],[-1,1]]
    s_int = np.empty(m)
    s_int[0] = np.sum(w0_stiff)
    s_int[1:] = np.sum(ws * w_stiff, axis=1)
    K_diag[:-1] += s_int / h**2
    K_diag[1:] += s_int / h**2
    K_off -= s_int / h**2

    nl0, nr0 = hats(x0, 0.0)
    M_diag[0] += np.sum(w0_mass * nl0 * nl0)
    M_diag[1] += np.sum(w0_mass * nr0 * nr0)
    M_off[0] += np.sum(w0_mass * nl0 * nr0)

    nl, nr = hats(xs, lefts)
    mw = ws * w_mass
    M_diag[1:m] += np.sum(mw * nl * nl, axis=1)
    M_diag[2:] += np.sum(mw * nr * nr, axis=1)
    M_off[1:] += np.sum(mw * nl * nr, axis=1)

    # Dirichlet at the right end: drop the last node
    return K_diag[:m], K_off[: m - 1], M_diag[:m], M_off[: m - 1]


def _tridiag_matvec(diag, off, x):
    y = diag * x
    y[:-1] += off * x[1:]
    y[1:] += off * x[:-1]
    return y


def _smallest_generalized_eig(K_diag, K_off, M_diag, M_off, rtol=1e-10, maxit=400):
    """Smallest eigenvalue of K u = lambda M u by inverse power iteration."""
    from scipy.linalg import solve_banded  # deferred import

    m = len(K_diag)
    ab = np.zeros((3, m))
    ab[0, 1:] = K_off
    ab[1, :] = K_diag
    ab[2, :-1] = K_off

    # positive initial guess overlapping the ground state
    x = np.cos(0.5 * np.pi * np.arange(m) / m)
    lam = None
    for _ in range(maxit):
        y = solve_banded((1, 1), ab, _tridiag_matvec(M_diag, M_off, x))
        y /= np.sqrt(abs(y @ _tridiag_matvec(M_diag, M_off, y)))
        lam_new = (y @ _tridiag_matvec(K_diag, K_off, y)) / (
            y @ _tridiag_matvec(M_diag, M_off, y)
        )
        if lam is not None and abs(lam_new - lam) <= rtol * abs(lam_new):
            return lam_new
        lam, x = lam_new, y
    raise BracketFailure(f"inverse power iteration failed to converge in {maxit} steps")


def fd_eigen_L_one(params: ProblemParams, m: int) -> float:
    """Independent oracle for L1 via the radial Dirichlet eigenproblem.

    Discretizes -(sinh^(n-1) u')' = lambda sinh^(n-1) u on (0, theta1) with
    u(theta1) = 0 and the natural no-flux behavior at 0 (the weight vanishes
    there), as a symmetric three-point generalized eigenproblem on m cells.
    Returns lambda_1 - n(n-2)/4.
    """
    if m < 100:
        raise ValueError(f"need m >= 100 cells, got {m}")
    n = params.n
    smooth = lambda th: (np.sinh(th) / th) ** (n - 1.0)
    K_diag, K_off, M_diag, M_off = _assemble_p1(params.theta1, m, n - 1.0, smooth, smooth)
    lam1 = _smallest_generalized_eig(K_diag, K_off, M_diag, M_off)
    return lam1 - n * (n - 2.0) / 4.0


def fd_eigen_L_star(params: ProblemParams, m: int) -> float:
    """Independent oracle for L*: constrained minimization in the stereographic
    variable.

    First eigenvalue mu of -(phi' r^(3-n))' = mu phi r^(3-n) rho^2 on (0, R)
    with phi(R) = 0, R = tanh(theta1/2), rho = 2/(1-r^2); mu equals L*.
    """
    if m < 100:
        raise ValueError(f"need m >= 100 cells, got {m}")
    n = params.n
    R = math.tanh(0.5 * params.theta1)
    rho2 = lambda r: (2.0 / (1.0 - r**2)) ** 2
    one = lambda r: np.ones_like(r)
    K_diag, K_off, M_diag, M_off = _assemble_p1(R, m, 3.0 - n, one, rho2)
    return _smallest_generalized_eig(K_diag, K_off, M_diag, M_off)


def fd_eigen_L_one_extrapolated(params: ProblemParams, m: int) -> float:
    """Richardson extrapolation of fd_eigen_L_one over (m, 2m)."""
    return (4.0 * fd_eigen_L_one(params, 2 * m) - fd_eigen_L_one(params, m)) / 3.0


def fd_eigen_L_star_extrapolated(params: ProblemParams, m: int) -> float:
    """Richardson extrapolation of fd_eigen_L_star over (m, 2m)."""
    return (4.0 * fd_eigen_L_star(params, 2 * m) - fd_eigen_L_star(params, m)) / 3.0
