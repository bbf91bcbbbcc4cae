#!/usr/bin/env python3
"""Walk the rectenna transfer function: harvested power vs input power.

Prints a small table around the saturation point and writes eh_curve.csv,
the same file the `wptregion eh-curve` subcommand produces.
"""

import numpy as np

from wptregion import RectennaParams, phi, phi_prime, varphi

params = RectennaParams()
print(f"rectenna: a={params.a}, b={params.b:g} 1/sqrt(W), "
      f"I_s={params.i_s:g} A, R_L={params.r_l:g} ohm, p_sat={params.p_sat:g} W")
print(f"saturated output: {phi(params.p_sat, params):.6e} W\n")

print(f"{'p_in (uW)':>10} {'phi (uW)':>12} {'varphi (uW)':>12} {'slope':>8}")
for p_uw in (0, 2, 5, 10, 15, 20, 24, 25, 30, 50, 100):
    # hit the saturation threshold exactly rather than one ulp below
    p = params.p_sat if p_uw == 25 else p_uw * 1e-6
    print(f"{p_uw:>10} {phi(p, params) * 1e6:>12.5f} "
          f"{varphi(p, params) * 1e6:>12.5f} {phi_prime(p, params):>8.4f}")

grid = np.linspace(0.0, 60e-6, 241)
with open("eh_curve.csv", "w") as fh:
    fh.write("p_watts,phi_watts\n")
    for p in grid:
        fh.write(f"{float(p)!r},{phi(float(p), params)!r}\n")
print("\nwrote eh_curve.csv")
