"""Airy function Ai and its derivative, split into a series and an
asymptotic branch.

The series branch sums the two standard Maclaurin series in powers of
x^3 (coefficient recurrence ``c_{k+3} = c_k / ((k+2)(k+3))``, anchored
at Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3)).
For moderate positive x the two series cancel to ~exp(-2*zeta) of their
size, so the summation runs in extended precision (mpmath) with the
working precision scaled to the digits lost; the returned double is then
correctly rounded.

The asymptotic branch covers the exponentially small tail x > 6.  It
evaluates Ai(x) = sqrt(x/3)/pi * K_{1/3}(zeta), zeta = (2/3) x^(3/2),
through the exact Laplace integral of the modified Bessel function

    K_nu(z) = sqrt(pi/(2 z)) e^-z / Gamma(nu+1/2)
              * int_0^inf e^-t t^(nu-1/2) (1 + t/(2z))^(nu-1/2) dt,

with fixed generalized Gauss-Laguerre quadrature.  Expanding the
binomial under the integral reproduces, term by term, the divergent
exponential expansion e^-zeta/(2 sqrt(pi) x^(1/4)) (1 - 5/(72 zeta) + ...);
the quadrature evaluates its resummation, which stays accurate down to
the branch point where the truncated expansion itself would bottom out
near 1e-6.  Deep negative arguments (x < -15) use the standard
oscillatory expansion, which is at full double accuracy there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy.special import roots_genlaguerre

__all__ = ["AiryResult", "airy_ai", "airy_ai_deriv"]

SERIES_MAX = 6.0       # series/asymptotic switch for x > 0
SERIES_MIN = -15.0     # below this the oscillatory expansion is exact to rounding
_TINY = math.ulp(0.0)  # smallest positive subnormal, keeps Ai(x) > 0 under underflow


@dataclass(frozen=True)
class AiryResult:
    """Value of Ai and the branch that produced it."""

    value: float
    method: str  # "series" or "asymptotic"


def _zeta(x: float) -> float:
    return (2.0 / 3.0) * x ** 1.5


# ---------------------------------------------------------------------------
# series branch (extended precision)

def _series_dps(x: float) -> int:
    # digits lost to cancellation grow like 2*zeta/ln(10)
    return 25 + int(2.0 * _zeta(abs(x)) / math.log(10.0)) + 5


def _ai_series(x: float, deriv: bool = False) -> float:
    # a private context keeps the evaluation thread-safe; the global
    # mpmath precision is never touched
    ctx = mp.ctx_mp.MPContext()
    ctx.dps = _series_dps(x)
    xm = ctx.mpf(x)
    c1 = ctx.mpf(3) ** (ctx.mpf(-2) / 3) / ctx.gamma(ctx.mpf(2) / 3)
    c2 = ctx.mpf(3) ** (ctx.mpf(-1) / 3) / ctx.gamma(ctx.mpf(1) / 3)
    x3 = xm ** 3
    # f = sum a_k x^{3k},        a_k = a_{k-1} / ((3k)(3k-1))
    # g = x * sum b_k x^{3k},    b_k = b_{k-1} / ((3k)(3k+1))
    a = ctx.mpf(1)
    b = ctx.mpf(1)
    if not deriv:
        f = a
        g = b
        k = 1
        while True:
            a = a * x3 / ((3 * k) * (3 * k - 1))
            b = b * x3 / ((3 * k) * (3 * k + 1))
            f += a
            g += b
            if k > 3 and abs(a) < ctx.eps * abs(f) and abs(b) < ctx.eps * abs(g):
                break
            k += 1
        return float(c1 * f - c2 * xm * g)
    # f' = sum a_k (3k) x^{3k-1},  (x g)' = sum b_k (3k+1) x^{3k}
    if x == 0.0:
        return float(-c2)
    fp = ctx.mpf(0)
    gp = ctx.mpf(1)
    k = 1
    while True:
        a = a * x3 / ((3 * k) * (3 * k - 1))
        b = b * x3 / ((3 * k) * (3 * k + 1))
        fp += a * (3 * k) / xm
        gp += b * (3 * k + 1)
        if k > 3 and abs(a) < ctx.eps * (abs(fp) + 1) and abs(b) < ctx.eps * abs(gp):
            break
        k += 1
    return float(c1 * fp - c2 * gp)


# ---------------------------------------------------------------------------
# asymptotic branch, x > SERIES_MAX

@lru_cache(maxsize=None)
def _laguerre_rule(nu: float, n: int = 60):
    t, w = roots_genlaguerre(n, nu - 0.5)
    return t, w, math.gamma(nu + 0.5)


def _besselk_exp_scaled(nu: float, z: float) -> float:
    """exp(z) * K_nu(z) by fixed Gauss-Laguerre quadrature (z >= ~2)."""
    t, w, norm = _laguerre_rule(nu)
    s = float(np.sum(w * (1.0 + t / (2.0 * z)) ** (nu - 0.5)))
    return math.sqrt(math.pi / (2.0 * z)) * s / norm


def _ai_asymptotic(x: float) -> float:
    z = _zeta(x)
    if z > 745.0:  # exp(-z) underflows; clamp positive
        return _TINY
    val = math.sqrt(x / 3.0) / math.pi * _besselk_exp_scaled(1.0 / 3.0, z) * math.exp(-z)
    return max(val, _TINY)


def _ai_deriv_asymptotic(x: float) -> float:
    z = _zeta(x)
    if z > 745.0:
        return -_TINY
    return -x / (math.sqrt(3.0) * math.pi) * _besselk_exp_scaled(2.0 / 3.0, z) * math.exp(-z)


# ---------------------------------------------------------------------------
# oscillatory branch, x < SERIES_MIN (and diagnostics for any x < 0)

def _osc_sums(xi: float, deriv: bool, max_terms: int = 80):
    """Even/odd partial sums of the oscillatory expansion coefficients.

    Uses u_k for the value, v_k = -(6k+1)/(6k-1) u_k for the derivative;
    truncated at the smallest term.
    """
    u = 1.0
    terms = [1.0]
    for k in range(1, max_terms):
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        c = -u * (6 * k + 1) / (6 * k - 1) if deriv else u
        t = c / xi ** k
        if abs(t) >= abs(terms[-1]):
            break
        terms.append(t)
    even = sum((-1) ** k * t for k, t in enumerate(terms[0::2]))
    odd = sum((-1) ** k * t for k, t in enumerate(terms[1::2]))
    return even, odd


def _ai_oscillatory(x: float, deriv: bool = False) -> float:
    t = -x
    xi = _zeta(t)
    even, odd = _osc_sums(xi, deriv)
    c = math.cos(xi - 0.25 * math.pi)
    s = math.sin(xi - 0.25 * math.pi)
    if not deriv:
        return (c * even + s * odd) / (math.sqrt(math.pi) * t ** 0.25)
    return t ** 0.25 / math.sqrt(math.pi) * (s * even - c * odd)


# ---------------------------------------------------------------------------
# public API

def airy_ai(x: float) -> AiryResult:
    """Evaluate Ai(x).

    Absolute accuracy 1e-12 * max(1, |Ai(x)|) for |x| <= 12, relative
    1e-10 beyond; strictly positive for x >= 0.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if x > SERIES_MAX:
        return AiryResult(_ai_asymptotic(x), "asymptotic")
    if x < SERIES_MIN:
        return AiryResult(_ai_oscillatory(x), "asymptotic")
    val = _ai_series(x)
    if x >= 0.0:
        val = max(val, _TINY)
    return AiryResult(val, "series")


def airy_ai_deriv(x: float) -> float:
    """Evaluate Ai'(x) (1e-10 relative for |x| <= 12)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if x > SERIES_MAX:
        return _ai_deriv_asymptotic(x)
    if x < SERIES_MIN:
        return _ai_oscillatory(x, deriv=True)
    return _ai_series(x, deriv=True)
