#!/usr/bin/env python3
"""Independent oracle for the torsion integral of the unit square.

Solves u_xx + u_yy = -4 on [0,1]^2 with u = 0 on the boundary through the
classical Saint-Venant double series and prints

    P = int u = 1/3 - (64/pi^5) * sum_{n odd} tanh(n pi / 2) / n^5

together with alpha = sqrt(P), the disc and annulus closed forms, and the
first zero of J0 by bisection on an 80-term power series.
Uses mpmath at 30 digits so the printed values do not depend on float64.
"""
from mpmath import mp, mpf, pi, tanh, sqrt, log, factorial

mp.dps = 30

def square_integral(terms=2000):
    s = mpf(0)
    for k in range(terms):
        n = 2 * k + 1
        s += tanh(n * pi / 2) / mpf(n) ** 5
    return mpf(1) / 3 - 64 / pi ** 5 * s

def square_integral_double_sum(terms=400):
    s = mpf(0)
    for a in range(terms):
        m = 2 * a + 1
        for b in range(terms):
            n = 2 * b + 1
            s += mpf(1) / (m * m * n * n * (m * m + n * n))
    # -Lap u = 4, coefficient of sin(m pi x) sin(n pi y) is 4*16/(pi^2 m n pi^2 (m^2+n^2)),
    # and int sin(m pi x) sin(n pi y) = 4/(pi^2 m n) for odd m, n.
    return 256 / pi ** 6 * s

def j0(x, terms=80):
    t = mpf(1)
    s = t
    for m in range(1, terms):
        t *= -(x / 2) ** 2 / (m * m)
        s += t
    return s

def j0_first_zero():
    lo, hi = mpf(2), mpf(3)
    for _ in range(100):
        mid = (lo + hi) / 2
        if j0(lo) * j0(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2

if __name__ == "__main__":
    p = square_integral()
    print("square integral_u      ", mp.nstr(p, 15))
    print("square integral (2-sum)", mp.nstr(square_integral_double_sum(), 8))
    print("square alpha           ", mp.nstr(sqrt(p), 15))
    print("disc alpha             ", mp.nstr(sqrt(pi / 2), 15))
    r = mpf(2)
    print("annulus(1,2) alpha     ", mp.nstr(sqrt(pi / 2 * (r ** 4 - 1 - (r * r - 1) ** 2 / log(r))), 15))
    j = j0_first_zero()
    print("j0 first zero          ", mp.nstr(j, 15))
    print("4 / j0^2               ", mp.nstr(4 / j ** 2, 15))
