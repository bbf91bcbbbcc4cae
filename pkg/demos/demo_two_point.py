#!/usr/bin/env python3
"""The two-mass-point effect on a convex-then-flat curve.

For a saturating harvester the power-to-value map is convex below the knee
and flat above it, so time-sharing between zero power and the knee beats any
deterministic transmit power with the same mean.
"""

import numpy as np

from wptregion import SampledCurve, expected_value, solve_two_point

grid = np.arange(0.0, 10.0 + 1e-9, 0.25)
knee = 5.0
values = np.minimum(grid**2, knee**2)
curve = SampledCurve(grid, values)

print(f"{'budget':>8} {'nu1*':>6} {'nu2*':>6} {'beta':>7} {'two-point':>10} {'fixed':>8} {'gain':>6}")
for budget in (1.0, 2.0, 3.0, 4.0, 5.0, 7.0):
    mass = solve_two_point(curve, budget)
    best = expected_value(curve, mass)
    fixed = float(np.interp(budget, grid, values))
    print(f"{budget:>8.2f} {mass.nu1:>6.2f} {mass.nu2:>6.2f} {mass.beta:>7.3f} "
          f"{best:>10.3f} {fixed:>8.3f} {best / max(fixed, 1e-12):>6.2f}x")

print("\nabove the knee the curve is flat and the policy collapses:")
mass = solve_two_point(curve, 7.0)
print(f"  budget 7.0 -> single mass at {mass.nu1:.2f} (beta = {mass.beta})")
