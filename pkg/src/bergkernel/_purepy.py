"""Pure-numpy twin of the compiled core (`_core.pyx`).

Same surface, same numbers up to last-ulp differences; selected at import
time when the extension is unavailable (see `_backend`).
"""

from __future__ import annotations

import math

import numpy as np

_LANCZOS_COF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_TWO_PI = 2.5066282746310005


def lgamma(x: float) -> float:
    """ln Gamma(x) for x > 0 (positivity is checked by the caller)."""
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - lgamma(1.0 - x)
    y = x
    tmp = x + 5.2421875
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = 0.999999999999997092
    for c in _LANCZOS_COF:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_TWO_PI * ser / x)


def lgamma_vec(xs) -> np.ndarray:
    x = np.asarray(xs, dtype=np.float64)
    out = np.empty_like(x)
    small = x < 0.5
    xb = np.where(small, 1.0 - x, x)  # shifted series needs x >= 0.5
    y = xb.copy()
    tmp = xb + 5.2421875
    tmp = (xb + 0.5) * np.log(tmp) - tmp
    ser = np.full_like(xb, 0.999999999999997092)
    for c in _LANCZOS_COF:
        y += 1.0
        ser += c / y
    main = tmp + np.log(_SQRT_TWO_PI * ser / xb)
    out[~small] = main[~small]
    if small.any():
        xs_ = x[small]
        out[small] = np.log(np.pi / np.sin(np.pi * xs_)) - main[small]
    return out


def lse(v) -> float:
    c = np.asarray(v, dtype=np.float64)
    if c.size == 0:
        return float("-inf")
    m = c.max()
    if m == float("-inf"):
        return float("-inf")
    return float(m + np.log(np.exp(c - m).sum()))


def lse_affine(c, t: float) -> float:
    cc = np.asarray(c, dtype=np.float64)
    if cc.size == 0:
        return float("-inf")
    v = cc + np.arange(cc.size) * t
    m = v.max()
    if m == float("-inf"):
        return float("-inf")
    return float(m + np.log(np.exp(v - m).sum()))


def ml_sum(r: float, s: float, zeta: float, rtol: float, max_terms: int):
    """Sum of zeta^j / Gamma(r*j + s); see the compiled twin for the contract."""
    if zeta == 0.0:
        return (0.0 if s == 0.0 else math.exp(-lgamma(s))), 1, True
    lz = math.log(zeta)
    total, prev, j = 0.0, math.inf, 0
    while j <= max_terms:
        arg = r * j + s
        term = 0.0 if arg == 0.0 else math.exp(j * lz - lgamma(arg))
        total += term
        # a term of exactly zero has underflowed: everything after it is smaller
        if j >= 2 and term <= rtol * total and (term < prev or term == 0.0):
            return total, j + 1, True
        prev = term
        j += 1
    return total, j, False
