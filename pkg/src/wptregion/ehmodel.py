"""Nonlinear rectenna transfer function with saturation.

Harvested DC power as a function of the received signal power p (watts):

    varphi(p) = ((W0(a e^a I0(B sqrt(2p))) - a) / a)^2 * I_s^2 * R_L
    phi(p)    = min(varphi(p), varphi(p_sat))

plus the analytic first derivative used by the tangent-underestimate step of
the beamforming loop.  All powers are in watts throughout; once the Bessel
argument crosses the series threshold the composition runs in the log domain,
so phi stays finite arbitrarily deep into saturation.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import specfun

__all__ = ["RectennaParams", "varphi", "phi", "phi_prime", "weighted_psi"]


@dataclass(frozen=True)
class RectennaParams:
    """Rectifier circuit constants: diode constant a, input scaling b (1/sqrt(W)),
    reverse saturation current i_s (A), load resistance r_l (ohm), and the input
    power p_sat (W) at which the output saturates."""

    a: float = 1.29
    b: float = 1.55e3
    i_s: float = 5e-6
    r_l: float = 1e4
    p_sat: float = 25e-6

    def __post_init__(self):
        if not 0.0 < self.a <= 10.0:
            raise ValueError(f"a must be in (0, 10], got {self.a}")
        for name in ("b", "i_s", "r_l", "p_sat"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@lru_cache(maxsize=16)
def _derived(params):
    # (a e^a, ln(a e^a), I_s^2 R_L)
    a = params.a
    return a * math.exp(a), math.log(a) + a, params.i_s**2 * params.r_l


@lru_cache(maxsize=16)
def _varphi_sat(params):
    return varphi(params.p_sat, params)


def varphi(p, params):
    """Unclipped harvested power (W) for input power p (W)."""
    if p < 0.0:
        raise ValueError(f"input power must be >= 0, got {p}")
    if p == 0.0:
        return 0.0
    ae_a, log_ae_a, pw = _derived(params)
    a = params.a
    x = params.b * math.sqrt(2.0 * p)
    if x <= specfun.LOG_SWITCH:
        w = specfun.lambert_w0(ae_a * specfun.bessel_i0(x))
    else:
        w = specfun.lambert_w0_log(log_ae_a + specfun.bessel_i0_log(x))
    r = (w - a) / a
    return r * r * pw


def phi(p, params):
    """Harvested power (W) with saturation clipping at p_sat."""
    if p < 0.0:
        raise ValueError(f"input power must be >= 0, got {p}")
    sat = _varphi_sat(params)
    if p >= params.p_sat:
        return sat
    v = varphi(p, params)
    return v if v < sat else sat


def phi_prime(p, params):
    """d phi / dp.  Zero on the saturated branch (p >= p_sat) and at p = 0,
    where the (W0 - a) factor vanishes analytically."""
    if p < 0.0:
        raise ValueError(f"input power must be >= 0, got {p}")
    if p >= params.p_sat or p == 0.0:
        return 0.0
    ae_a, log_ae_a, pw = _derived(params)
    a = params.a
    sq2p = math.sqrt(2.0 * p)
    x = params.b * sq2p
    if x <= specfun.LOG_SWITCH:
        i0 = specfun.bessel_i0(x)
        w = specfun.lambert_w0(ae_a * i0)
        ratio = specfun.bessel_i1(x) / i0
    else:
        l0 = specfun.bessel_i0_log(x)
        w = specfun.lambert_w0_log(log_ae_a + l0)
        ratio = math.exp(specfun.bessel_i1_log(x) - l0)
    # chain rule: 2 (w/a - 1) * (1/a) * W0'(u) u'(p), with
    # W0'(u) u'(p) = (w / (1 + w)) * (I1/I0)(x) * b / sqrt(2p)
    return 2.0 * ((w - a) / a) * (w / (a * (1.0 + w))) * ratio * params.b / sq2p * pw


def weighted_psi(w_mat, channels, weights, params):
    """Weighted harvested power of a transmit covariance and its gradient.

    Returns (value, grad) with value = sum_m xi_m phi(g_m W g_m^H) and
    grad = sum_m xi_m phi'(p_m) g_m^H g_m, a Hermitian PSD matrix.
    """
    w_mat = np.asarray(w_mat, dtype=complex)
    if np.max(np.abs(w_mat - w_mat.conj().T)) > 1e-9:
        raise ValueError("weighted_psi requires a Hermitian matrix")
    value = 0.0
    grad = np.zeros_like(w_mat)
    for xi, g in ((weights.xi1, channels.g1), (weights.xi2, channels.g2)):
        p_m = float(np.real(g @ w_mat @ g.conj()))
        p_m = max(p_m, 0.0)
        value += xi * phi(p_m, params)
        slope = xi * phi_prime(p_m, params)
        if slope != 0.0:
            grad += slope * np.outer(g.conj(), g)
    return value, grad
