"""Scalar special functions for the rectenna transfer function.

Principal-branch Lambert-W and modified Bessel functions of the first kind,
orders zero and one.  Everything is plain-float arithmetic; the log-domain
variants keep composites finite far beyond the point where I0 itself
overflows double precision (x ~ 713).
"""

import math

__all__ = [
    "LOG_SWITCH",
    "lambert_w0",
    "lambert_w0_log",
    "bessel_i0",
    "bessel_i0_log",
    "bessel_i1",
    "bessel_i1_log",
]

# composites switch to log-domain evaluation above this argument
LOG_SWITCH = 30.0

# direct series evaluation of I0/I1 overflows just past x ~ 713
_OVERFLOW_X = 700.0

_SERIES_EPS = 1e-17
_STEP_TOL = 1e-14
_MAX_ITER = 80

# above this the Halley residual w*exp(w) - u risks overflow; solve in logs
_W_LOG_PATH = 1e15


def lambert_w0(u):
    """Principal branch of the Lambert-W function: w with w*exp(w) = u, u >= 0."""
    if u < 0.0:
        raise ValueError(f"lambert_w0 requires u >= 0, got {u}")
    if u == 0.0:
        return 0.0
    if u > _W_LOG_PATH:
        return lambert_w0_log(math.log(u))
    if u > math.e:
        lu = math.log(u)
        w = lu - math.log(lu)
    else:
        w = math.log1p(u)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - u
        wp1 = w + 1.0
        # Halley step for f(w) = w e^w - u
        dw = f / (ew * wp1 - f * (w + 2.0) / (2.0 * wp1))
        w -= dw
        if abs(dw) <= _STEP_TOL * (abs(w) + 1e-300):
            return w
    raise ArithmeticError(f"lambert_w0 failed to converge for u={u}")


def lambert_w0_log(log_u):
    """Solve w + ln(w) = log_u for w > 0, i.e. W0(exp(log_u)) without overflow."""
    ell = log_u
    w = ell - math.log(ell) if ell > 1.0 else math.exp(ell - 1.0)
    for _ in range(_MAX_ITER):
        f = w + math.log(w) - ell
        fp = 1.0 + 1.0 / w
        dw = f / fp
        if w - dw <= 0.0:
            dw = 0.5 * w
        w -= dw
        if abs(dw) <= _STEP_TOL * (abs(w) + 1e-300):
            return w
    raise ArithmeticError(f"lambert_w0_log failed to converge for log_u={log_u}")


def bessel_i0(x):
    """Modified Bessel function I0(x) by power series, x in [0, ~700]."""
    if x < 0.0:
        raise ValueError(f"bessel_i0 requires x >= 0, got {x}")
    if x > _OVERFLOW_X:
        raise OverflowError(
            f"bessel_i0({x}) would overflow double precision; use bessel_i0_log"
        )
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    k = 1
    while term > _SERIES_EPS * s:
        term *= q / (k * k)
        s += term
        k += 1
    return s


def bessel_i1(x):
    """Modified Bessel function I1(x) by power series, x in [0, ~700]."""
    if x < 0.0:
        raise ValueError(f"bessel_i1 requires x >= 0, got {x}")
    if x > _OVERFLOW_X:
        raise OverflowError(
            f"bessel_i1({x}) would overflow double precision; use bessel_i1_log"
        )
    q = 0.25 * x * x
    term = 0.5 * x
    s = term
    k = 0
    while term > _SERIES_EPS * s:
        term *= q / ((k + 1) * (k + 2))
        s += term
        k += 1
    return s


def _asym_sum(mu, x):
    # large-argument expansion I_nu(x) ~ e^x / sqrt(2 pi x) * sum, mu = 4 nu^2;
    # the series is asymptotic, so stop at the smallest term
    s = 1.0
    term = 1.0
    for k in range(60):
        nxt = term * (-(mu - (2 * k + 1) ** 2)) / ((k + 1) * 8.0 * x)
        if abs(nxt) >= abs(term):
            break
        s += nxt
        term = nxt
        if abs(nxt) <= _SERIES_EPS * abs(s):
            break
    return s


def bessel_i0_log(x):
    """ln I0(x), valid for all x >= 0 (series below the switch, asymptotic above)."""
    if x < 0.0:
        raise ValueError(f"bessel_i0_log requires x >= 0, got {x}")
    if x <= LOG_SWITCH:
        return math.log(bessel_i0(x))
    return x - 0.5 * math.log(2.0 * math.pi * x) + math.log(_asym_sum(0.0, x))


def bessel_i1_log(x):
    """ln I1(x), valid for all x >= 0; returns -inf at x = 0."""
    if x < 0.0:
        raise ValueError(f"bessel_i1_log requires x >= 0, got {x}")
    if x == 0.0:
        return -math.inf
    if x <= LOG_SWITCH:
        return math.log(bessel_i1(x))
    return x - 0.5 * math.log(2.0 * math.pi * x) + math.log(_asym_sum(4.0, x))
