"""Adaptive log-domain quadrature for squared monomial norms.

The norm of the j-th monomial section at power p is

    ||z^j||^2_p = 2 pi * integral over the radial domain of
                  r^{2j+1} exp(-2 w_p(r)) rho(r) dr,

whose integrand spans hundreds of orders of magnitude once p is large.  The
engine therefore works entirely on the log-integrand: it locates the peak,
shifts by it, and feeds the bounded remainder to adaptive Gauss-Kronrod
integration, returning ln ||z^j||^2 directly.

Endpoint singularities are removed analytically before sampling:

* conical models (domain (0, inf), cone order a) are mapped through
  u = r^{2a}, x = u/(1+u) onto (0, 1); when the transformed integrand still
  carries an algebraic endpoint singularity x^{A-1} (A < 1) or
  (1-x)^{B-1} (B < 1), a further power substitution x = c v^{1/A} flattens
  it exactly;
* log-singular models (the punctured disc) are mapped through r = e^{-t}
  onto (0, inf), where the integrand is Gamma-like and smooth.

Divergence of a norm is decided analytically from the model's endpoint
exponents, never numerically; `log_norm_integral` refuses inadmissible
indices outright.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import minimize_scalar

DEFAULT_RELTOL = 1e-11  # contract on the returned norm
_QUAD_EPSREL = 1e-12    # target handed to the Gauss-Kronrod refinement


class QuadratureError(RuntimeError):
    """Quadrature failed to meet its tolerance after the refinement cap."""


def is_admissible(model, p: int, j: int) -> bool:
    """True when the norm integral of index j converges (endpoint-exponent test)."""
    if model.origin_exponent(j, p) <= -1.0:
        return False
    if model.far_exponent is not None and model.far_exponent(j, p) >= -1.0:
        return False
    return True


def _integrate_shifted(logf, lo: float, hi: float, scan: np.ndarray):
    """Integrate exp(logf) over (lo, hi): peak scan, golden refine, max shift.

    Returns (log of the integral, estimated relative error).
    """
    values = np.array([logf(x) for x in scan])
    k = int(np.argmax(values))
    left = scan[max(k - 1, 0)]
    right = scan[min(k + 1, len(scan) - 1)]
    if left < right:
        res = minimize_scalar(
            lambda x: -logf(x),
            bounds=(left, right),
            method="bounded",
            options={"xatol": 1e-14 * max(right - left, 1.0)},
        )
        peak, m = res.x, max(-res.fun, values[k])
    else:
        peak, m = scan[k], values[k]

    g = lambda x: math.exp(logf(x) - m)
    with warnings.catch_warnings():
        # epsrel sits at the float64 floor; the returned estimate is checked instead
        warnings.simplefilter("ignore", IntegrationWarning)
        i1, e1 = quad(g, lo, peak, epsabs=1e-300, epsrel=_QUAD_EPSREL, limit=400)
        i2, e2 = quad(g, peak, hi, epsabs=1e-300, epsrel=_QUAD_EPSREL, limit=400)
    total = i1 + i2
    if not total > 0 or not math.isfinite(total):
        raise QuadratureError("integrand collapsed to zero after peak shift")
    return m + math.log(total), (e1 + e2) / total


def _conical_log_integral(model, p: int, j: int):
    """ln of the norm integral for a conical model via the x = u/(1+u) chart."""
    a = model.cone_order
    two_a = 2.0 * a
    exp0 = model.origin_exponent(j, p)
    exp_far = model.far_exponent(j, p)
    A = (exp0 + 1.0) / two_a        # x-exponent of the transformed integrand at 0
    B = -(exp_far + 1.0) / two_a    # (1-x)-exponent at 1

    def G(x: float) -> float:
        lr = (math.log(x) - math.log1p(-x)) / two_a
        log_f = (2 * j + 1) * lr - 2.0 * model.weight_lr(p, lr) + model.log_rho_lr(lr)
        log_jac = lr - math.log(two_a) - math.log(x) - math.log1p(-x)
        return log_f + log_jac

    scan01 = np.linspace(0.0, 1.0, 402)[1:-1]
    if A < 1.0:
        logf = lambda v: G(0.5 * v ** (1.0 / A)) + math.log(0.5 / A) + (1.0 / A - 1.0) * math.log(v)
        l_left, e_left = _integrate_shifted(logf, 0.0, 1.0, scan01)
    else:
        l_left, e_left = _integrate_shifted(G, 0.0, 0.5, np.linspace(0.0, 0.5, 402)[1:-1])
    if B < 1.0:
        logf = lambda w: G(1.0 - 0.5 * w ** (1.0 / B)) + math.log(0.5 / B) + (1.0 / B - 1.0) * math.log(w)
        l_right, e_right = _integrate_shifted(logf, 0.0, 1.0, scan01)
    else:
        l_right, e_right = _integrate_shifted(G, 0.5, 1.0, np.linspace(0.5, 1.0, 402)[1:-1])

    m = max(l_left, l_right)
    total = m + math.log(math.exp(l_left - m) + math.exp(l_right - m))
    return total, max(e_left, e_right)


def _log_endpoint_integral(model, p: int, j: int):
    """ln of the norm integral for a log-singular model via r = e^{-t}."""
    r_hi = model.domain[1]
    t_lo = -math.log(r_hi) if r_hi != math.inf else 0.0

    def G(t: float) -> float:
        lr = -t
        return (2 * j + 1) * lr - 2.0 * model.weight_lr(p, lr) + model.log_rho_lr(lr) - t

    # Gamma-like in t: the peak sits somewhere in (0, ~p); scan widely in log t
    scan = np.geomspace(1e-12, 1e7, 2400) + t_lo
    return _integrate_shifted(G, t_lo, math.inf, scan)


def log_norm_integral(model, p: int, j: int, *, reltol: float = DEFAULT_RELTOL) -> float:
    """ln ||z^j||^2_p by adaptive quadrature; raises on inadmissible j."""
    if not is_admissible(model, p, j):
        raise ValueError(
            f"norm of index j={j} diverges for model {model.name!r} at p={p}"
        )
    if model.cone_order is not None:
        log_val, relerr = _conical_log_integral(model, p, j)
    else:
        log_val, relerr = _log_endpoint_integral(model, p, j)
    if relerr > reltol:
        raise QuadratureError(
            f"norm quadrature for j={j} (model {model.name!r}, p={p}) reached "
            f"relative error {relerr:.2e} > {reltol:.0e} at the refinement cap"
        )
    return math.log(2.0 * math.pi) + log_val
