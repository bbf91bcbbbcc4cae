#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the test suite.

Run with mpmath installed:

    python tools/compute_oracle_constants.py

Everything is evaluated at 60 decimal digits and printed with 25 significant
digits; the test files quote these numbers verbatim.  Rectenna constants are
the simulation values a=1.29, B=1.55e3 1/sqrt(W), I_s=5 uA, R_L=10 kOhm,
p_sat=25 uW.
"""

import mpmath as mp

mp.mp.dps = 60

A = mp.mpf("1.29")
B = mp.mpf("1.55e3")
I_S = mp.mpf("5e-6")
R_L = mp.mpf("1e4")
P_SAT = mp.mpf("25e-6")


def harvested_unclipped(p):
    x = B * mp.sqrt(2 * p)
    u = A * mp.e**A * mp.besseli(0, x)
    w = mp.lambertw(u).real
    return (w / A - 1) ** 2 * I_S**2 * R_L


def i0_truncated(x, n_terms=30):
    x = mp.mpf(x)
    return mp.fsum((x / 2) ** (2 * k) / mp.factorial(k) ** 2 for k in range(n_terms))


def i1_truncated(x, n_terms=30):
    x = mp.mpf(x)
    return mp.fsum(
        (x / 2) ** (2 * k + 1) / (mp.factorial(k) * mp.factorial(k + 1))
        for k in range(n_terms)
    )


def main():
    print("harvested_unclipped(p_sat)   =", mp.nstr(harvested_unclipped(P_SAT), 25))
    print("harvested_unclipped(12.5uW)  =", mp.nstr(harvested_unclipped(mp.mpf("12.5e-6")), 25))
    print("I0 30-term series at x=1     =", mp.nstr(i0_truncated(1), 25))
    print("I1 30-term series at x=2     =", mp.nstr(i1_truncated(2), 25))
    for x in (0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 29.5, 30.5, 50.0, 120.0, 300.0, 700.0):
        print(f"ln I0({x:6.1f}) =", mp.nstr(mp.log(mp.besseli(0, x)), 25))
    for x in (0.5, 2.0, 10.0, 29.5, 30.5, 120.0, 700.0):
        print(f"ln I1({x:6.1f}) =", mp.nstr(mp.log(mp.besseli(1, x)), 25))


if __name__ == "__main__":
    main()
