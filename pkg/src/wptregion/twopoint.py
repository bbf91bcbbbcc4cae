"""Two-mass-point maximization of E{f(nu)} under a mean constraint.

For a non-decreasing curve f sampled on a power grid, the optimal
distribution of nu with E{nu} <= nu_bar concentrates on at most two grid
points.  They are found by the min-max chord-slope search: nu1 minimizes,
over grid points below nu_bar, the maximal slope to grid points at or above
nu_bar; nu2 maximizes the slope from nu1.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["SampledCurve", "TwoPointMass", "slope", "solve_two_point", "expected_value"]

# below this gap between the mass powers the policy collapses to a single mass
EPS_DEGENERATE = 1e-12

_VALUE_DIP_TOL = 1e-12


@dataclass(frozen=True)
class SampledCurve:
    """Ascending power grid starting at 0 and the sampled values f(rho_j)."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.shape != values.shape or grid.size < 2:
            raise ValueError("grid and values must be 1-d arrays of equal length >= 2")
        if grid[0] != 0.0:
            raise ValueError(f"grid must start at 0, got {grid[0]}")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError("grid must be strictly ascending")
        if np.any(np.diff(values) < -_VALUE_DIP_TOL):
            raise ValueError("values must be non-decreasing (within 1e-12)")


@dataclass(frozen=True)
class TwoPointMass:
    """Mass powers nu1 <= nu2 with P(nu = nu1) = beta, plus their grid indices."""

    nu1: float
    nu2: float
    beta: float
    i1: int
    i2: int


def slope(curve, i, j):
    """Chord slope (f(rho_j) - f(rho_i)) / (rho_j - rho_i), requires j > i."""
    if j <= i:
        raise IndexError(f"slope requires j > i, got i={i}, j={j}")
    return (curve.values[j] - curve.values[i]) / (curve.grid[j] - curve.grid[i])


def _degenerate(curve, nu_bar):
    # single mass at the best feasible grid point; first index wins ties
    m = int(np.searchsorted(curve.grid, nu_bar, side="right"))
    k = int(np.argmax(curve.values[:m]))
    return TwoPointMass(float(curve.grid[k]), float(curve.grid[k]), 1.0, k, k)


def solve_two_point(curve, nu_bar):
    """Min-max slope search for the optimal two-point distribution.

    Ties in the argmin/argmax are broken toward the smallest index.  When the
    upper mass lands exactly on nu_bar (or no strictly-smaller grid point
    exists) the result degenerates to a single mass with beta = 1.
    """
    grid = curve.grid
    values = curve.values
    if nu_bar < grid[0] or nu_bar > grid[-1]:
        raise ValueError(f"nu_bar={nu_bar} outside grid range [{grid[0]}, {grid[-1]}]")
    n = int(np.searchsorted(grid, nu_bar, side="left"))
    if n == 0:
        return _degenerate(curve, nu_bar)
    s_mat = (values[None, n:] - values[:n, None]) / (grid[None, n:] - grid[:n, None])
    i_star = int(np.argmin(s_mat.max(axis=1)))
    j_star = int(np.argmax(s_mat[i_star]))
    i2 = n + j_star
    nu1 = float(grid[i_star])
    nu2 = float(grid[i2])
    if nu2 - nu1 < EPS_DEGENERATE:
        return _degenerate(curve, nu_bar)
    beta = (nu2 - nu_bar) / (nu2 - nu1)
    if beta <= 0.0:
        # upper mass sits exactly on nu_bar: single deterministic power
        return _degenerate(curve, nu_bar)
    return TwoPointMass(nu1, nu2, min(beta, 1.0), i_star, i2)


def _grid_index(curve, nu):
    grid = curve.grid
    idx = int(np.searchsorted(grid, nu, side="left"))
    for k in (idx, idx - 1, idx + 1):
        if 0 <= k < grid.size and abs(grid[k] - nu) <= 1e-12 * max(1.0, abs(nu)):
            return k
    raise KeyError(f"mass point {nu} is not on the curve grid")


def expected_value(curve, mass):
    """E{f(nu)} of a two-point mass whose points lie on the curve grid."""
    f1 = curve.values[_grid_index(curve, mass.nu1)]
    f2 = curve.values[_grid_index(curve, mass.nu2)]
    return float(mass.beta * f1 + (1.0 - mass.beta) * f2)
