"""Two-mass-point search against a brute-force enumeration oracle."""

import numpy as np
import pytest

from wptregion.twopoint import (
    SampledCurve,
    expected_value,
    slope,
    solve_two_point,
)


def brute_force_best(curve, nu_bar):
    """Independent oracle: enumerate every feasible one- and two-point grid
    policy and return the best expected value."""
    grid, vals = curve.grid, curve.values
    best = -np.inf
    for i in range(grid.size):
        if grid[i] <= nu_bar + 1e-15:
            best = max(best, vals[i])
    for i in range(grid.size):
        if grid[i] > nu_bar:
            break
        for j in range(i + 1, grid.size):
            if grid[j] < nu_bar:
                continue
            beta = (grid[j] - nu_bar) / (grid[j] - grid[i])
            best = max(best, beta * vals[i] + (1.0 - beta) * vals[j])
    return best


def random_monotone_curve(rng, n_max=200):
    n = int(rng.integers(5, n_max))
    steps = rng.uniform(0.05, 1.0, n)
    grid = np.concatenate([[0.0], np.cumsum(steps)])
    incr = rng.uniform(0.0, 1.0, n) * (rng.random(n) < 0.7)
    vals = np.concatenate([[rng.uniform(0, 0.2)], np.cumsum(incr)])
    vals[0], vals[1:] = vals[0], vals[0] + (vals[1:] - vals[1] + incr[0])
    vals = np.maximum.accumulate(vals)
    return SampledCurve(grid, vals)


class TestSlope:
    def setup_method(self):
        self.curve = SampledCurve(np.arange(6.0), np.arange(6.0) ** 2)

    def test_identity_function(self):
        c = SampledCurve(np.arange(4.0), np.arange(4.0))
        assert slope(c, 0, 3) == 1.0

    def test_constant_function(self):
        c = SampledCurve(np.arange(4.0), np.full(4, 2.5))
        assert slope(c, 1, 3) == 0.0

    def test_square(self):
        # between nu=2 and nu=5: (25 - 4) / 3 = 7
        assert slope(self.curve, 2, 5) == pytest.approx(7.0)

    def test_bad_order(self):
        with pytest.raises(IndexError):
            slope(self.curve, 3, 3)
        with pytest.raises(IndexError):
            slope(self.curve, 4, 2)


class TestSolveTwoPoint:
    def test_convex_endpoints(self):
        # f = nu^2 is convex: mass at the interval ends
        grid = np.arange(0.0, 10.0 + 1e-9, 0.5)
        curve = SampledCurve(grid, grid**2)
        mass = solve_two_point(curve, 4.0)
        assert mass.nu1 == 0.0
        assert mass.nu2 == 10.0
        assert mass.beta == pytest.approx(0.6)
        assert expected_value(curve, mass) == pytest.approx(40.0)

    def test_concave_degenerates(self):
        # f = sqrt(nu) is concave: deterministic power at the mean
        grid = np.arange(0.0, 10.0 + 1e-9, 0.5)
        curve = SampledCurve(grid, np.sqrt(grid))
        mass = solve_two_point(curve, 4.0)
        assert mass.beta == 1.0
        assert mass.nu1 == mass.nu2 == 4.0

    def test_convex_then_flat(self):
        # f = nu^2 capped at 25: knee-and-endpoint policy
        grid = np.arange(0.0, 10.0 + 1e-9, 0.5)
        vals = np.minimum(grid**2, 25.0)
        curve = SampledCurve(grid, vals)
        mass = solve_two_point(curve, 4.0)
        assert expected_value(curve, mass) == pytest.approx(
            brute_force_best(curve, 4.0), abs=1e-9
        )
        assert mass.nu1 == 0.0
        assert mass.nu2 == 5.0
        assert mass.beta == pytest.approx(0.2)
        assert expected_value(curve, mass) == pytest.approx(20.0)

    def test_matches_brute_force_on_random_curves(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            curve = random_monotone_curve(rng)
            nu_bar = float(rng.uniform(0.0, curve.grid[-1]))
            mass = solve_two_point(curve, nu_bar)
            got = expected_value(curve, mass)
            want = brute_force_best(curve, nu_bar)
            assert got == pytest.approx(want, abs=1e-9 * max(1.0, abs(want)))

    def test_chord_upper_bound(self):
        # the line through the two chosen points dominates the whole curve
        rng = np.random.default_rng(7)
        for _ in range(60):
            curve = random_monotone_curve(rng, n_max=120)
            nu_bar = float(rng.uniform(0.0, curve.grid[-1]))
            mass = solve_two_point(curve, nu_bar)
            if mass.nu2 == mass.nu1:
                continue
            s = (curve.values[mass.i2] - curve.values[mass.i1]) / (mass.nu2 - mass.nu1)
            line = curve.values[mass.i1] + s * (curve.grid - mass.nu1)
            scale = max(1.0, float(np.max(np.abs(curve.values))))
            assert np.all(curve.values <= line + 1e-9 * scale)

    def test_mean_feasibility(self):
        rng = np.random.default_rng(77)
        for _ in range(60):
            curve = random_monotone_curve(rng, n_max=120)
            nu_bar = float(rng.uniform(0.0, curve.grid[-1]))
            mass = solve_two_point(curve, nu_bar)
            mean = mass.beta * mass.nu1 + (1.0 - mass.beta) * mass.nu2
            assert mean <= nu_bar + 1e-9

    def test_dominates_single_points(self):
        rng = np.random.default_rng(123)
        for _ in range(40):
            curve = random_monotone_curve(rng, n_max=100)
            nu_bar = float(rng.uniform(0.0, curve.grid[-1]))
            mass = solve_two_point(curve, nu_bar)
            got = expected_value(curve, mass)
            feasible = curve.grid <= nu_bar + 1e-15
            assert got >= curve.values[feasible].max() - 1e-12

    def test_zero_budget(self):
        grid = np.arange(0.0, 5.0, 0.5)
        curve = SampledCurve(grid, grid**2)
        mass = solve_two_point(curve, 0.0)
        assert mass.nu1 == mass.nu2 == 0.0
        assert mass.beta == 1.0

    def test_out_of_range(self):
        curve = SampledCurve(np.arange(4.0), np.arange(4.0))
        with pytest.raises(ValueError):
            solve_two_point(curve, 5.0)
        with pytest.raises(ValueError):
            solve_two_point(curve, -0.1)


class TestExpectedValue:
    def test_degenerate(self):
        grid = np.arange(0.0, 5.0, 0.5)
        curve = SampledCurve(grid, grid)
        mass = solve_two_point(curve, 2.0)
        assert expected_value(curve, mass) == pytest.approx(2.0)

    def test_arithmetic(self):
        curve = SampledCurve(np.array([0.0, 10.0]), np.array([0.0, 100.0]))
        mass = solve_two_point(curve, 4.0)
        assert mass.beta == pytest.approx(0.6)
        assert expected_value(curve, mass) == pytest.approx(40.0)

    def test_matches_monte_carlo(self):
        grid = np.arange(0.0, 10.0 + 1e-9, 0.5)
        curve = SampledCurve(grid, grid**2)
        mass = solve_two_point(curve, 4.0)
        rng = np.random.default_rng(555)
        draws = np.where(rng.random(10**6) < mass.beta, mass.nu1, mass.nu2)
        mc = float(np.mean(draws**2))
        assert expected_value(curve, mass) == pytest.approx(mc, rel=1e-2)

    def test_off_grid_mass_rejected(self):
        grid = np.arange(0.0, 5.0, 0.5)
        curve = SampledCurve(grid, grid)
        mass = solve_two_point(curve, 2.0)
        other = SampledCurve(np.array([0.0, 0.3, 0.9]), np.array([0.0, 0.1, 0.2]))
        with pytest.raises(KeyError):
            expected_value(other, mass)


class TestCurveValidation:
    def test_rejects_nonzero_start(self):
        with pytest.raises(ValueError):
            SampledCurve(np.array([1.0, 2.0]), np.array([0.0, 1.0]))

    def test_rejects_non_ascending(self):
        with pytest.raises(ValueError):
            SampledCurve(np.array([0.0, 2.0, 2.0]), np.array([0.0, 1.0, 2.0]))

    def test_rejects_decreasing_values(self):
        with pytest.raises(ValueError):
            SampledCurve(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 0.5]))
