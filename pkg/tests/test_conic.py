"""Conic subproblem solver: analytic cases, post-hoc invariants, and an
independent cvxpy cross-check on random instances."""

import numpy as np
import pytest

from wptregion import conic
from wptregion.conic import (
    INFEASIBLE,
    OPTIMAL,
    SatConstraint,
    SdpProblem,
    feasibility_check,
    solve_linear_sdp,
)

cp = pytest.importorskip("cvxpy")


def assert_solution_invariants(sol, problem):
    assert sol.status == OPTIMAL
    assert float(np.linalg.eigvalsh(sol.W)[0]) >= -1e-8
    assert float(np.real(np.trace(sol.W))) <= problem.trace_cap + 1e-8 * (
        1.0 + problem.trace_cap
    )
    for c in problem.sat_constraints:
        q = float(np.real(c.g @ sol.W @ c.g.conj()))
        if c.sigma > 0:
            assert q <= c.p_sat * (1.0 + 1e-8) + 1e-8 * c.p_sat
        else:
            assert q >= c.p_sat * (1.0 - 1e-8) - 1e-8 * c.p_sat
    assert sol.kkt_residual <= 1e-6


def cvxpy_reference(problem):
    n = problem.objective.shape[0]
    w_var = cp.Variable((n, n), hermitian=True)
    cons = [w_var >> 0, cp.real(cp.trace(w_var)) <= problem.trace_cap]
    for c in problem.sat_constraints:
        form = cp.real(cp.quad_form(c.g.conj()[:, None], w_var))
        if c.sigma > 0:
            cons.append(form <= c.p_sat)
        else:
            cons.append(form >= c.p_sat)
    objective = cp.Maximize(cp.real(cp.trace(problem.objective.conj().T @ w_var)))
    prob = cp.Problem(objective, cons)
    prob.solve(solver=cp.CLARABEL)
    return prob.status, prob.value


class TestAnalyticCases:
    def test_rank_one_objective_full_trace(self):
        c = np.zeros(4, dtype=complex)
        c[0] = 1.0
        problem = SdpProblem(np.outer(c, c.conj()), 2.0, ())
        sol = solve_linear_sdp(problem)
        assert_solution_invariants(sol, problem)
        assert sol.value == pytest.approx(2.0, abs=1e-6)
        assert np.allclose(sol.W, 2.0 * np.outer(c, c.conj()), atol=1e-8)

    def test_binding_saturation_cap(self):
        g = np.array([1.0, 0.5 + 0.2j])
        p_sat = 0.8
        problem = SdpProblem(
            np.outer(g.conj(), g), 3.0, (SatConstraint(g, +1, p_sat),)
        )
        assert 3.0 * np.linalg.norm(g) ** 2 > p_sat
        sol = solve_linear_sdp(problem)
        assert_solution_invariants(sol, problem)
        assert sol.value == pytest.approx(p_sat, abs=1e-6)

    def test_infeasible_lower_bound(self):
        g = np.array([1.0, 1.0j]) / np.sqrt(2.0)
        nu = 0.9  # nu * ||g||^2 = 0.9 < p_sat = 1
        problem = SdpProblem(np.zeros((2, 2)), nu, (SatConstraint(g, -1, 1.0),))
        sol = solve_linear_sdp(problem)
        assert sol.status == INFEASIBLE

    def test_zero_trace_cap(self):
        problem = SdpProblem(np.eye(3), 0.0, ())
        sol = solve_linear_sdp(problem)
        assert sol.status == OPTIMAL
        assert sol.value == 0.0


class TestFeasibility:
    def test_upper_bounds_only(self):
        g = np.array([1.0, 0.0])
        problem = SdpProblem(np.zeros((2, 2)), 1.0, (SatConstraint(g, +1, 0.5),))
        res = feasibility_check(problem)
        assert res.feasible

    def test_one_lower_bound_short_budget(self):
        g = np.array([1.0, 0.0])
        problem = SdpProblem(np.zeros((2, 2)), 0.9, (SatConstraint(g, -1, 1.0),))
        assert not feasibility_check(problem).feasible

    def test_two_orthogonal_lower_bounds(self):
        g1 = np.array([1.0, 0.0])
        g2 = np.array([0.0, 2.0])
        p_sat = 1.0
        nu = p_sat / 1.0 + p_sat / 4.0 + 1e-3
        problem = SdpProblem(
            np.zeros((2, 2)), nu,
            (SatConstraint(g1, -1, p_sat), SatConstraint(g2, -1, p_sat)),
        )
        res = feasibility_check(problem)
        assert res.feasible
        # cross-check the constructed witness against the analytic one
        manual = p_sat * np.outer(g1.conj(), g1) / np.linalg.norm(g1) ** 4 \
            + p_sat * np.outer(g2.conj(), g2) / np.linalg.norm(g2) ** 4
        assert float(np.real(g1 @ manual @ g1.conj())) >= p_sat * (1 - 1e-12)
        for g in (g1, g2):
            q = float(np.real(g @ res.witness @ g.conj()))
            assert q >= p_sat * (1.0 - 1e-7)
        assert float(np.real(np.trace(res.witness))) <= nu + 1e-9

    def test_two_lower_bounds_insufficient(self):
        g1 = np.array([1.0, 0.0])
        g2 = np.array([0.0, 1.0])
        problem = SdpProblem(
            np.zeros((2, 2)), 1.5,
            (SatConstraint(g1, -1, 1.0), SatConstraint(g2, -1, 1.0)),
        )
        assert not feasibility_check(problem).feasible

    def test_correlated_lower_and_upper(self):
        # saturating node 1 forces node 2 over its cap: genuinely infeasible
        g1 = np.array([1.0, 0.0])
        g2 = 10.0 * g1
        problem = SdpProblem(
            np.zeros((2, 2)), 10.0,
            (SatConstraint(g1, -1, 1.0), SatConstraint(g2, +1, 1.0)),
        )
        assert not feasibility_check(problem).feasible


def random_problem(rng, n, with_lower=False):
    k = rng.integers(1, 3)
    vecs = []
    for _ in range(2):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vecs.append(v / np.linalg.norm(v) * rng.uniform(0.5, 2.0))
    c_mat = sum(
        rng.uniform(0.1, 2.0) * np.outer(v.conj(), v) for v in vecs[:k]
    )
    c_mat = 0.5 * (c_mat + c_mat.conj().T)
    nu = float(rng.uniform(0.5, 4.0))
    cons = []
    for m, v in enumerate(vecs):
        if with_lower and m == 0 and nu * np.linalg.norm(v) ** 2 > 1.2:
            cons.append(SatConstraint(v, -1, 1.0))
        else:
            cons.append(SatConstraint(v, +1, float(rng.uniform(0.3, 1.5))))
    return SdpProblem(np.asarray(c_mat), nu, tuple(cons))


class TestAgainstCvxpy:
    @pytest.mark.parametrize("with_lower", [False, True])
    def test_random_instances(self, with_lower):
        rng = np.random.default_rng(31 if with_lower else 13)
        checked = 0
        for _ in range(25):
            problem = random_problem(rng, int(rng.integers(2, 5)), with_lower)
            sol = solve_linear_sdp(problem)
            status, ref = cvxpy_reference(problem)
            if sol.status == INFEASIBLE:
                assert status in ("infeasible", "infeasible_inaccurate")
                continue
            assert status in ("optimal", "optimal_inaccurate")
            assert_solution_invariants(sol, problem)
            scale = max(1.0, abs(ref))
            tol = 1e-5 if status == "optimal" else 1e-4
            assert sol.value == pytest.approx(ref, abs=tol * scale)
            checked += 1
        assert checked >= 15


class TestProperties:
    def test_value_bounded_by_trace_cap_eigenvalue(self):
        rng = np.random.default_rng(99)
        for _ in range(20):
            problem = random_problem(rng, 3)
            sol = solve_linear_sdp(problem)
            if sol.status != OPTIMAL:
                continue
            lam_max = float(np.linalg.eigvalsh(problem.objective)[-1])
            assert sol.value <= problem.trace_cap * lam_max + 1e-6

    def test_monotone_in_trace_cap(self):
        rng = np.random.default_rng(17)
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        c_mat = np.outer(v.conj(), v)
        prev = -np.inf
        for nu in np.linspace(0.1, 3.0, 10):
            problem = SdpProblem(c_mat, float(nu), (SatConstraint(g, +1, 2.0),))
            sol = solve_linear_sdp(problem)
            assert sol.status == OPTIMAL
            assert sol.value >= prev - 1e-9
            prev = sol.value

    def test_validation(self):
        with pytest.raises(ValueError):
            SdpProblem(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0, ())
        with pytest.raises(ValueError):
            SdpProblem(np.eye(2), -1.0, ())
        with pytest.raises(ValueError):
            SatConstraint(np.array([1.0]), 0, 1.0)
        with pytest.raises(ValueError):
            SdpProblem(np.eye(2), 1.0, tuple(SatConstraint(np.ones(2), 1, 1.0) for _ in range(3)))
