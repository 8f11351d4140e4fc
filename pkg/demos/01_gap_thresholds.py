#!/usr/bin/env python3
"""Locating the solution gap for the critical-exponent problem on a
hyperbolic ball.

The radial problem

    -u'' - (n-1) coth(theta) u' = lambda u + u^((n+2)/(n-2)),
    u'(0) = u(theta1) = 0,  u > 0,

has positive solutions exactly for lambda strictly between
n(n-2)/4 + L* and lambda_1 = n(n-2)/4 + L1.  Both thresholds come from
first zeros of associated Legendre functions of order -alpha and alpha,
alpha = (2-n)/2.  This script walks through the basic queries.
"""

import math

from hypgap import (
    ProblemParams,
    fd_eigen_L_one_extrapolated,
    fd_eigen_L_star_extrapolated,
    gap_interval,
)

# --- one parameter point ---------------------------------------------------

params = ProblemParams(n=3.0, theta1=1.0)
g = gap_interval(params)

print("n = 3, theta1 = 1")
print(f"  L*              = {g.L_star:.12g}")
print(f"  L1              = {g.L_one:.12g}")
print(f"  trivial bound   = {g.lambda_trivial:.12g}")
print(f"  gap top         = {g.lambda_gap_top:.12g}")
print(f"  lambda_1        = {g.lambda_one:.12g}")
print(f"  gap             = ({g.lambda_trivial:.6g}, {g.lambda_gap_top:.6g}]")
print(f"  existence range = ({g.lambda_gap_top:.6g}, {g.lambda_one:.6g})")

# at n = 3 everything is elementary: L* = 1/4 + pi^2/(4 theta1^2) and
# L1 = 1/4 + pi^2/theta1^2, so the call above can be checked by hand
print("\nclosed-form check at n = 3:")
print(f"  L* error = {abs(g.L_star - (0.25 + math.pi**2 / 4)):.2e}")
print(f"  L1 error = {abs(g.L_one - (0.25 + math.pi**2)):.2e}")

# --- independent cross-check -----------------------------------------------

# The same thresholds solve two classical eigenvalue problems, which the
# package discretizes by finite elements (completely independent of the
# Legendre series machinery).  Richardson extrapolation makes the comparison
# sharp to ~1e-8.
for n, theta1 in [(2.5, 1.0), (3.5, 0.5)]:
    p = ProblemParams(n, theta1)
    g = gap_interval(p)
    fd_star = fd_eigen_L_star_extrapolated(p, 1000)
    fd_one = fd_eigen_L_one_extrapolated(p, 1000)
    print(f"\nn = {n}, theta1 = {theta1}")
    print(f"  L* = {g.L_star:.10f}   (finite elements: {fd_star:.10f})")
    print(f"  L1 = {g.L_one:.10f}   (finite elements: {fd_one:.10f})")

# --- the ball radius matters ------------------------------------------------

print("\nshrinking balls push both thresholds up (n = 2.8):")
for theta1 in (2.0, 1.0, 0.5):
    g = gap_interval(ProblemParams(2.8, theta1))
    print(f"  theta1 = {theta1}: gap top = {g.lambda_gap_top:.6f}, lambda_1 = {g.lambda_one:.6f}")
