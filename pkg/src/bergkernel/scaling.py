"""Density-of-states scaling near the cone point.

Zooming onto the singularity with the magnetic-length substitution
|z|^{2a} = a y / p turns the kernel into the scaled profile

    F_p(y) = P_p((a y / p)^{1/(2a)}) / p,

which converges (locally uniformly in y > 0) to an explicit Mittag-Leffler
profile.  The fixed-flux variant has a genuine limit; the growing-pole
variant is only subsequentially convergent, with limit points indexed by the
accumulation value theta of the integer-part sequence j_p - p nu, which lives
in (-a, 1-a] and is dense in it for irrational nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernel import PunctureDivergenceError, kernel_evaluator, pole_kernel
from .models import (
    SpindleParams,
    flux_lowest_index,
    pole_lowest_index,
    pole_model,
    spindle_model,
)
from .specfn import MLParams, mittag_leffler

VARIANTS = ("flux", "pole")


@dataclass(frozen=True)
class ScaledProfile:
    """Sampled (y, F_p(y)) pairs for one power p.

    Samples whose puncture value diverges carry value inf and have their
    positions recorded in `diverged`; they are flagged, never dropped.
    """

    p: int
    y: tuple[float, ...]
    values: tuple[float, ...]
    diverged: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.y, self.y[1:])):
            raise ValueError("y grid must be strictly increasing")
        if any(v < 0 or math.isnan(v) for v in self.values):
            raise ValueError("scaled values must be nonnegative (inf marks divergence)")


def scaled_profile(
    params: SpindleParams, p: int, y_grid, variant: str = "flux"
) -> ScaledProfile:
    """Sample F_p over y_grid using the requested kernel variant."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    a = params.a
    if variant == "flux":
        evaluate = kernel_evaluator(spindle_model(a, params.nu), p)
    else:
        params.require_pole_range()
        evaluate = kernel_evaluator(pole_model(a, params.nu), p)
    values, diverged = [], []
    for i, y in enumerate(y_grid):
        y = float(y)
        if y < 0:
            raise ValueError(f"y must be nonnegative, got {y}")
        r = (a * y / p) ** (1.0 / (2.0 * a))
        try:
            values.append(evaluate(r) / p)
        except PunctureDivergenceError:
            values.append(math.inf)
            diverged.append(i)
    return ScaledProfile(
        p=p,
        y=tuple(float(y) for y in y_grid),
        values=tuple(values),
        diverged=tuple(diverged),
    )


def limit_profile(params: SpindleParams, y: float) -> float:
    """Mittag-Leffler limit of the fixed-flux scaled profiles,

        (1/a) y^{d/a} e^{-y} E_{1/a, 1+d/a}(y^{1/a}),   d = j0 - nu.

    Admits y = 0 only when d >= 0 (limit 0 for d > 0, 1/a for d = 0).
    """
    a, nu = params.a, params.nu
    d = flux_lowest_index(params) - nu
    y = float(y)
    if y < 0:
        raise ValueError(f"y must be nonnegative, got {y}")
    if y == 0.0:
        if d > 0:
            return 0.0
        if d == 0:
            return 1.0 / a
        raise ValueError(f"limit profile diverges at y=0 when j0 - nu = {d} < 0")
    ml = mittag_leffler(MLParams(1.0 / a, 1.0 + d / a), y ** (1.0 / a))
    return (1.0 / a) * y ** (d / a) * math.exp(-y) * ml


def pole_limit_profile(params: SpindleParams, theta: float, y: float) -> float:
    """Subsequential limit of the growing-pole profiles along j_p - p nu -> theta:

        ((1-nu)/a) w^{theta/a} e^{-w} E_{1/a, 1+theta/a}(w^{1/a}),  w = (1-nu) y.

    theta must lie in [-a, 1-a].  nu = 0 is admitted as the degenerate
    fluxless case (matching the fixed-flux limit at theta = 0).
    """
    a, nu = params.a, params.nu
    if not 0 <= nu < 1:
        raise ValueError(f"pole limit requires 0 <= nu < 1, got {nu}")
    if not -a <= theta <= 1.0 - a:
        raise ValueError(f"theta={theta} outside the admissible interval [{-a}, {1 - a}]")
    y = float(y)
    if not y > 0:
        raise ValueError(f"y must be positive, got {y}")
    w = (1.0 - nu) * y
    ml = mittag_leffler(MLParams(1.0 / a, 1.0 + theta / a), w ** (1.0 / a))
    return (1.0 - nu) / a * w ** (theta / a) * math.exp(-w) * ml


def theta_sequence(params: SpindleParams, p: int) -> float:
    """j_p - p nu with j_p = floor(p nu - a) + 1; confined to (-a, 1-a]."""
    params.require_pole_range()
    return pole_lowest_index(params, p) - p * params.nu


def scaled_gap(params: SpindleParams, p: int, y_grid, variant: str = "flux",
               theta: float | None = None) -> float:
    """max over y_grid of |F_p(y) - limit(y)|, the convergence monitor D(p)."""
    profile = scaled_profile(params, p, y_grid, variant)
    if variant == "flux":
        limits = [limit_profile(params, y) for y in profile.y]
    else:
        if theta is None:
            raise ValueError("pole-variant gap needs the subsequence limit theta")
        limits = [pole_limit_profile(params, theta, y) for y in profile.y]
    return max(abs(f - g) for f, g in zip(profile.values, limits))
