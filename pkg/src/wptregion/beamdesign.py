"""Best weighted harvested power at a fixed transmit power budget.

Computes the power-to-value map nu -> max_w {sum_m xi_m phi(|g_m w|^2) :
||w||^2 <= nu} by semidefinite relaxation.  The PSD cone is partitioned into
four saturation regions (node m saturated or not); on each region the
weighted harvested power is convex, so it is maximized by iterating
tangent-plane underestimates, each solved as a linear-objective SDP.  The
winner across regions is extracted to a rank-1 beamformer and the reported
value is re-evaluated on the extracted vector.
"""

from dataclasses import dataclass
import logging
import math

import numpy as np

from . import conic, ehmodel

logger = logging.getLogger(__name__)

__all__ = [
    "ChannelPair",
    "Weights",
    "PhiPoint",
    "RegionSolve",
    "psi_of_w",
    "sca_maximize_region",
    "compute_phi_point",
    "REGIONS",
]

REGIONS = ((0, 0), (0, 1), (1, 0), (1, 1))

# harvested powers are uW-scale; the conic objective and the stopping rule
# work on 1e6-rescaled values so magnitudes are O(1)
RESCALE = 1e6

DEFAULT_SCA_EPSILON = 1e-3
DEFAULT_SCA_MAX_ITER = 100


@dataclass(frozen=True)
class ChannelPair:
    """Row channel vectors of the two harvester nodes."""

    g1: np.ndarray
    g2: np.ndarray
    n_t: int

    def __post_init__(self):
        g1 = np.asarray(self.g1, dtype=complex).ravel()
        g2 = np.asarray(self.g2, dtype=complex).ravel()
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        if self.n_t < 1 or g1.size != self.n_t or g2.size != self.n_t:
            raise ValueError("channel vectors must have length n_t >= 1")
        if np.linalg.norm(g1) == 0.0 or np.linalg.norm(g2) == 0.0:
            raise ValueError("channel vectors must be nonzero")


@dataclass(frozen=True)
class Weights:
    xi1: float
    xi2: float

    def __post_init__(self):
        if not (0.0 <= self.xi1 <= 1.0 and 0.0 <= self.xi2 <= 1.0):
            raise ValueError("weights must lie in [0, 1]")
        if abs(self.xi1 + self.xi2 - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")


@dataclass(frozen=True)
class RegionSolve:
    """Outcome of one saturation-region SCA run (pre-extraction)."""

    w_mat: np.ndarray
    value: float
    history: tuple
    region: tuple


@dataclass(frozen=True)
class PhiPoint:
    """One sample of the power-to-value map with its achieving beamformer."""

    nu: float
    value: float
    w: np.ndarray
    region: tuple
    eig_ratio: float
    psi_relaxed: float
    max_dip: float
    n_iter: int


def psi_of_w(w, channels, weights, params):
    """Weighted harvested power of a deterministic beamformer."""
    w = np.asarray(w, dtype=complex).ravel()
    p1 = abs(channels.g1 @ w) ** 2
    p2 = abs(channels.g2 @ w) ** 2
    return weights.xi1 * ehmodel.phi(p1, params) + weights.xi2 * ehmodel.phi(p2, params)


def _seed_seq(seed, *tail):
    if isinstance(seed, (tuple, list)):
        ent = tuple(int(s) for s in seed) + tail
    else:
        ent = (int(seed),) + tail
    return np.random.SeedSequence(ent)


def _qform_full(g, w_mat):
    return float(np.real(g @ w_mat @ g.conj()))


def _initial_point(region, nu, channels, params, witness, rng):
    """Feasible start: the feasibility witness nudged toward a random rank-1
    direction, staying inside the saturation region."""
    n = channels.n_t
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    nv = float(np.linalg.norm(v))
    if nv < 1e-12:
        v = np.zeros(n, dtype=complex)
        v[0] = 1.0
        nv = 1.0
    x_rand = nu * np.outer(v, v.conj()) / (nv * nv)
    p_sat = params.p_sat
    sigmas = (1 if region[0] == 0 else -1, 1 if region[1] == 0 else -1)
    beta_max = 1.0
    for g, sigma in zip((channels.g1, channels.g2), sigmas):
        q_wit = _qform_full(g, witness)
        q_rand = _qform_full(g, x_rand)
        if sigma > 0 and q_rand > p_sat:
            beta_max = min(beta_max, max(0.0, (p_sat - q_wit) / (q_rand - q_wit)))
        if sigma < 0 and q_rand < p_sat:
            beta_max = min(beta_max, max(0.0, (q_wit - p_sat) / (q_wit - q_rand)))
    if region == (0, 0):
        beta = min(1.0, 0.95 * beta_max) if beta_max < 1.0 else 1.0
    else:
        beta = min(0.3, 0.5 * beta_max)
    return (1.0 - beta) * witness + beta * x_rand


def _sca_run(region, nu, channels, weights, params, cons, witness, rng,
             epsilon, max_iter):
    w_cur = _initial_point(region, nu, channels, params, witness, rng)
    val, grad = ehmodel.weighted_psi(w_cur, channels, weights, params)
    history = [val]
    for _k in range(max_iter):
        gain_scale = nu * float(np.linalg.eigvalsh(grad)[-1]) if nu > 0 else 0.0
        if gain_scale * RESCALE <= 1e-15:
            break  # flat linearization: both nodes on their saturated branch
        problem = conic.SdpProblem(grad * RESCALE, nu, cons)
        sol = conic.solve_linear_sdp(problem)
        if sol.status != conic.OPTIMAL:
            return None
        val_new, grad = ehmodel.weighted_psi(sol.W, channels, weights, params)
        history.append(val_new)
        w_cur = sol.W
        if abs(val_new - val) * RESCALE <= epsilon:
            break
        val = val_new
    return RegionSolve(w_cur, history[-1], tuple(history), region)


def _can_saturate_both(nu, channels, params):
    # min_m |g_m w|^2 <= nu ||g_m||^2 along any direction, so both nodes can
    # only saturate when the budget clears both single-node thresholds
    return (
        nu * float(np.linalg.norm(channels.g1) ** 2) >= params.p_sat
        and nu * float(np.linalg.norm(channels.g2) ** 2) >= params.p_sat
    )


def _saturating_vector(nu, channels, params):
    """Best rank-1 attempt at saturating both nodes: maximize min_m |g_m w|^2
    over ||w||^2 = nu by a refined grid search on the 2-d channel subspace."""
    g1, g2 = channels.g1, channels.g2
    v_mat = conic._orthonormal_columns([g1.conj(), g2.conj()], channels.n_t)
    h1 = g1 @ v_mat
    h2 = g2 @ v_mat
    if v_mat.shape[1] == 1:
        w = math.sqrt(nu) * v_mat[:, 0]
        return w, min(nu * abs(h1[0]) ** 2, nu * abs(h2[0]) ** 2)

    # unit directions c = (cos tau, sin tau e^{i chi}) cover the subspace up
    # to an irrelevant global phase
    t_lo, t_hi = 0.0, 0.5 * math.pi
    c_lo, c_hi = 0.0, 2.0 * math.pi
    best = (-1.0, 0.0, 0.0)
    for _round in range(6):
        taus = np.linspace(t_lo, t_hi, 17)
        chis = np.linspace(c_lo, c_hi, 17)
        tt, cc = np.meshgrid(taus, chis, indexing="ij")
        cvecs = np.stack(
            [np.cos(tt), np.sin(tt) * np.exp(1j * cc)], axis=-1
        ).reshape(-1, 2)
        q = nu * np.minimum(
            np.abs(cvecs @ h1) ** 2, np.abs(cvecs @ h2) ** 2
        )
        k = int(np.argmax(q))
        if q[k] > best[0]:
            best = (float(q[k]), float(tt.ravel()[k]), float(cc.ravel()[k]))
        dt = 1.5 * (t_hi - t_lo) / 16
        dc = 1.5 * (c_hi - c_lo) / 16
        t_lo, t_hi = max(0.0, best[1] - dt), min(0.5 * math.pi, best[1] + dt)
        c_lo, c_hi = best[2] - dc, best[2] + dc
    _q, tau, chi = best
    c = np.array([math.cos(tau), math.sin(tau) * complex(math.cos(chi), math.sin(chi))])
    w = math.sqrt(nu) * (v_mat @ c)
    q_w = nu * min(abs(h1 @ c) ** 2, abs(h2 @ c) ** 2)
    return w, float(q_w)


def sca_maximize_region(region, nu, channels, weights, params, seed,
                        epsilon=DEFAULT_SCA_EPSILON, max_iter=DEFAULT_SCA_MAX_ITER):
    """SCA maximization of the weighted harvested power over one saturation
    region; returns None when the region is infeasible or both attempts fail."""
    if nu < 0.0:
        raise ValueError(f"transmit power must be >= 0, got {nu}")
    n = channels.n_t
    cons = (
        conic.SatConstraint(channels.g1, 1 if region[0] == 0 else -1, params.p_sat),
        conic.SatConstraint(channels.g2, 1 if region[1] == 0 else -1, params.p_sat),
    )
    base = conic.SdpProblem(np.zeros((n, n), dtype=complex), nu, cons)
    feas = conic.feasibility_check(base)
    if not feas.feasible:
        return None
    witness = feas.witness
    if region == (1, 1) and _can_saturate_both(nu, channels, params):
        w_sat, q_min = _saturating_vector(nu, channels, params)
        if q_min >= params.p_sat * (1.0 - 1e-12):
            witness = np.outer(w_sat, w_sat.conj())
    # the objective is constant over the whole region when every node is
    # either forced into saturation or carries zero weight; any feasible point
    # is then optimal, and the witness constructions above are rank-1
    # whenever possible
    flat = all(
        xi == 0.0 or sat == 1
        for xi, sat in ((weights.xi1, region[0]), (weights.xi2, region[1]))
    )
    if flat:
        val_wit, _ = ehmodel.weighted_psi(witness, channels, weights, params)
        return RegionSolve(witness, val_wit, (val_wit,), region)
    for attempt in (0, 1):
        rng = np.random.default_rng(_seed_seq(seed, region[0], region[1], attempt))
        solve = _sca_run(region, nu, channels, weights, params, cons, witness, rng,
                         epsilon, max_iter)
        if solve is not None:
            return solve
        logger.warning("SCA attempt %d failed in region %s at nu=%.6g", attempt, region, nu)
    return None


def _normalize_phase(w):
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        return w
    for entry in w:
        if abs(entry) > 1e-12 * norm:
            return w * (entry.conjugate() / abs(entry))
    return w


def _extract_beamformer(w_mat):
    """Dominant-eigenvector rank-1 extraction at the matrix's full trace."""
    trace = max(float(np.real(np.trace(w_mat))), 0.0)
    lam, vec = np.linalg.eigh(w_mat)
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    w = math.sqrt(trace) * vec[:, order[0]]
    w = _normalize_phase(w)
    if lam.size > 1 and lam[0] > 1e-300:
        eig_ratio = max(float(lam[1]), 0.0) / float(lam[0])
    else:
        eig_ratio = 0.0
    return w, eig_ratio


def compute_phi_point(nu, channels, weights, params, seed,
                      epsilon=DEFAULT_SCA_EPSILON, max_iter=DEFAULT_SCA_MAX_ITER):
    """Best-of-four-regions solve at transmit power nu, with rank-1 extraction.

    The returned value is the weighted harvested power of the extracted
    beamformer itself, never the relaxed matrix objective.
    """
    if nu < 0.0:
        raise ValueError(f"transmit power must be >= 0, got {nu}")
    solves = []
    for region in REGIONS:
        out = sca_maximize_region(region, nu, channels, weights, params, seed,
                                  epsilon, max_iter)
        if out is not None:
            solves.append(out)
    if nu > 0.0 and _can_saturate_both(nu, channels, params):
        w_sat, q_min = _saturating_vector(nu, channels, params)
        if q_min >= params.p_sat:
            sat_value = ehmodel.phi(params.p_sat, params)
            solves.append(
                RegionSolve(np.outer(w_sat, w_sat.conj()), sat_value, (sat_value,), (1, 1))
            )
    if not solves:
        raise RuntimeError("no saturation region produced a solution (unexpected for nu >= 0)")
    # the reported point must be achievable by a vector, so rank the region
    # winners by the value their extracted beamformer actually attains; exact
    # value ties (the saturation plateau) go to the cleanest rank-1 matrix
    best = None
    for s in solves:
        w, eig_ratio = _extract_beamformer(s.w_mat)
        value = psi_of_w(w, channels, weights, params)
        if best is None or (value, -eig_ratio) > (best[0], -best[3]):
            best = (value, s, w, eig_ratio)
    value, best_solve, w, eig_ratio = best
    psi_relaxed = max(s.value for s in solves)
    max_dip = 0.0
    n_iter = 0
    for s in solves:
        n_iter += max(len(s.history) - 1, 0)
        for a, b in zip(s.history, s.history[1:]):
            max_dip = max(max_dip, a - b)
    return PhiPoint(
        nu=float(nu),
        value=float(value),
        w=w,
        region=best_solve.region,
        eig_ratio=eig_ratio,
        psi_relaxed=float(psi_relaxed),
        max_dip=float(max_dip),
        n_iter=n_iter,
    )
