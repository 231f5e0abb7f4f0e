"""Empirical verification of the asymptotic estimates.

The inequalities being checked are existential ("there is a constant C such
that ..."), so no specific constant is asserted.  Instead each check computes
the empirical supremum of deviation / bound-shape over an admissible
parameter grid and requires it to be finite and stable under grid refinement
(the refined constant may not drift outside [0.5, 2] times the coarse one).
That is the testable surrogate for existence.

Distances to the singular point are coordinate radii |z|: the proofs work in
a fixed coordinate chart, and no auxiliary reference metric is pinned down.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .kernel import eval_kernel, kernel_evaluator
from .models import RadialModel
from .specfn import log_gamma

DEFAULT_P_SET = (64, 128, 256, 512, 1024, 2048)


class ConfigurationError(ValueError):
    """An admissibility filter left no (p, r) pairs to check."""


@dataclass
class BoundReport:
    """Outcome of one asymptotic-inequality check.

    `fitted_constant` is the empirical sup of deviation/bound-shape on the
    coarse grid; `stability_ratio` the refined-grid constant divided by it.
    """

    model: str
    alpha: float
    beta: float
    delta: float
    grid: dict
    fitted_constant: float
    stability_ratio: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "exponents": {"alpha": self.alpha, "beta": self.beta, "delta": self.delta},
            "grid": self.grid,
            "fitted_constant": self.fitted_constant,
            "stability_ratio": self.stability_ratio,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BoundReport":
        d = json.loads(text)
        return cls(
            model=d["model"],
            alpha=d["exponents"]["alpha"],
            beta=d["exponents"]["beta"],
            delta=d["exponents"]["delta"],
            grid=d["grid"],
            fitted_constant=d["fitted_constant"],
            stability_ratio=d["stability_ratio"],
            passed=d["pass"],
        )


def deviation(model: RadialModel, p: int, r: float) -> float:
    """|P_p(r) / (p * c1_over_omega(r)) - 1|, the normalised kernel deviation.

    Canonical-bundle models supply c1_over_omega = -R/(2 pi), so this is the
    curvature-normalised form automatically.
    """
    return abs(eval_kernel(model, p, r) / (p * model.c1_over_omega(r)) - 1.0)


def _bound_shape(model: RadialModel, p: int, r: np.ndarray) -> np.ndarray:
    a, b = model.profile.alpha, model.profile.beta
    return p ** -0.125 * r ** -a + p ** -0.375 * r ** -b


def _sup_over_grid(model: RadialModel, p_set, r_values, trial_constant: float):
    """Empirical sup of deviation/shape over the admissible pairs; (sup, count)."""
    delta = model.profile.delta
    best, count = 0.0, 0
    lo, hi = model.domain
    for p in p_set:
        rs = np.array([r for r in r_values if lo < r < hi and p > trial_constant * r ** -delta])
        if rs.size == 0:
            continue
        evaluate = kernel_evaluator(model, p)
        dev = np.array([abs(evaluate(float(r)) / (p * model.c1_over_omega(float(r))) - 1.0) for r in rs])
        best = max(best, float(np.max(dev / _bound_shape(model, p, rs))))
        count += rs.size
    return best, count


def bound_check(
    model: RadialModel,
    p_set=DEFAULT_P_SET,
    r_set=None,
    *,
    trial_constant: float = 1.0,
    refine_factor: int = 4,
) -> BoundReport:
    """Check deviation <= C (p^{-1/8} r^{-alpha} + p^{-3/8} r^{-beta}).

    Pairs are filtered to the admissible regime p > trial_constant * r^{-delta}.
    Passing means the fitted constant is finite and does not move by more than
    a factor 2 when the radius grid is refined `refine_factor`-fold.
    """
    if r_set is None:
        hi = model.domain[1]
        r_set = np.linspace(0.05, 1.0 if hi == math.inf else 0.95 * hi, 24)
    r_set = np.asarray(r_set, dtype=float)
    coarse, n_pairs = _sup_over_grid(model, p_set, r_set, trial_constant)
    if n_pairs == 0:
        raise ConfigurationError(
            "no (p, r) pairs satisfy the admissibility gate "
            f"p > {trial_constant} * r^-{model.profile.delta:g}"
        )
    fine_grid = np.linspace(r_set.min(), r_set.max(), refine_factor * len(r_set))
    refined, _ = _sup_over_grid(model, p_set, fine_grid, trial_constant)
    ratio = refined / coarse if coarse > 0 else math.inf
    passed = math.isfinite(coarse) and 0.5 <= ratio <= 2.0
    return BoundReport(
        model=model.name,
        alpha=model.profile.alpha,
        beta=model.profile.beta,
        delta=model.profile.delta,
        grid={
            "p_set": [int(p) for p in p_set],
            "r_min": float(r_set.min()),
            "r_max": float(r_set.max()),
            "r_count": int(len(r_set)),
            "trial_constant": trial_constant,
            "admissible_pairs": n_pairs,
        },
        fitted_constant=coarse,
        stability_ratio=ratio,
        passed=passed,
    )


def corollary_check(
    model: RadialModel,
    eta: float,
    p_set=DEFAULT_P_SET,
    *,
    trial_constant: float = 1.0,
    n_samples: int = 12,
    refine_factor: int = 4,
) -> BoundReport:
    """Check deviation <= C' p^{-(1-eta)/8} just inside r > (C/p)^{eta/delta}.

    eta = 0 degenerates to a fixed compact set r > 1, which is empty on a
    bounded domain (ConfigurationError there).
    """
    if not 0 <= eta <= 1:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    delta = model.profile.delta
    hi = model.domain[1]
    r_cap = math.inf if hi == math.inf else 0.98 * hi

    def sup_with(n: int) -> tuple[float, int]:
        best, count = 0.0, 0
        for p in p_set:
            boundary = (trial_constant / p) ** (eta / delta)
            r_hi = min(2.0 * boundary, r_cap)
            if boundary * 1.001 >= r_hi:
                continue
            rs = np.linspace(boundary * 1.001, r_hi, n)
            evaluate = kernel_evaluator(model, p)
            dev = max(
                abs(evaluate(float(r)) / (p * model.c1_over_omega(float(r))) - 1.0)
                for r in rs
            )
            best = max(best, dev / p ** (-(1.0 - eta) / 8.0))
            count += n
        return best, count

    coarse, n_pairs = sup_with(n_samples)
    if n_pairs == 0:
        raise ConfigurationError(
            f"the eta={eta} regime r > (C/p)^(eta/delta) contains no admissible "
            f"radii inside the domain of model {model.name!r}"
        )
    refined, _ = sup_with(refine_factor * n_samples)
    ratio = refined / coarse if coarse > 0 else math.inf
    passed = math.isfinite(coarse) and 0.5 <= ratio <= 2.0
    return BoundReport(
        model=model.name,
        alpha=model.profile.alpha,
        beta=model.profile.beta,
        delta=model.profile.delta,
        grid={
            "p_set": [int(p) for p in p_set],
            "eta": eta,
            "samples_per_p": n_samples,
            "trial_constant": trial_constant,
            "admissible_pairs": n_pairs,
        },
        fitted_constant=coarse,
        stability_ratio=ratio,
        passed=passed,
    )


@dataclass
class GammaLemmaReport:
    """Grid check of Gamma(r+s)/Gamma(s) <= e^{1/12} (r+s)^r and its s -> inf limit."""

    r_range: tuple[float, float]
    s_range: tuple[float, float]
    grid_shape: tuple[int, int]
    violations: int
    max_limit_gap: float
    passed: bool

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def gamma_lemma_check(
    r_grid=None,
    s_grid=None,
    *,
    slack: float = 1e-12,
    limit_s: float = 1e6,
    limit_tol: float = 1e-3,
) -> GammaLemmaReport:
    """Pointwise inequality check in the log domain, plus the limit ratio at large s."""
    r_grid = np.linspace(0.0, 10.0, 200) if r_grid is None else np.asarray(r_grid, float)
    s_grid = np.linspace(1.0, 100.0, 200) if s_grid is None else np.asarray(s_grid, float)
    violations = 0
    bound_const = 1.0 / 12.0
    for s in s_grid:
        lg_s = log_gamma(s)
        for r in r_grid:
            lhs = log_gamma(r + s) - lg_s
            rhs = bound_const + r * math.log(r + s)
            if lhs > rhs + slack:
                violations += 1
    max_gap = 0.0
    for r in np.linspace(0.0, 10.0, 21):
        ratio = math.exp(log_gamma(r + limit_s) - log_gamma(limit_s) - r * math.log(limit_s))
        max_gap = max(max_gap, abs(ratio - 1.0))
    passed = violations == 0 and max_gap <= limit_tol
    return GammaLemmaReport(
        r_range=(float(r_grid.min()), float(r_grid.max())),
        s_range=(float(s_grid.min()), float(s_grid.max())),
        grid_shape=(len(r_grid), len(s_grid)),
        violations=violations,
        max_limit_gap=max_gap,
        passed=passed,
    )


@dataclass
class LeadingCoefficientReport:
    """Doubling-sequence check that P_p/p converges to the declared ratio."""

    model: str
    r: float
    p_set: list
    gaps: list
    passed: bool

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def b0_check(model: RadialModel, r: float, p_set=(64, 128, 256, 512, 1024)) -> LeadingCoefficientReport:
    """Assert |P_p/p - c1/omega| decreases along a doubling p-sequence at fixed r."""
    gaps = [deviation(model, p, r) for p in p_set]
    passed = all(b < a for a, b in zip(gaps, gaps[1:]))
    return LeadingCoefficientReport(
        model=model.name, r=float(r), p_set=[int(p) for p in p_set], gaps=gaps, passed=passed
    )


def two_term_suite(
    model: RadialModel,
    p_set=(40, 60, 80),
    r_set=(0.2, 0.3, 0.5),
) -> BoundReport:
    """Fit the two-term expansion P_p = c0 p + c1 on a doubling p-range.

    The leading coefficient must match the model's declared density ratio to
    1e-8 relative, the interior residual of the two-term fit must be at
    machine scale (the remainder beyond two terms is exponentially small),
    and the fitted constant term must agree across radii.  The fitted c1 is
    reported for inspection; no literature value is asserted here.
    """
    if len(p_set) < 3:
        raise ValueError("two_term_suite needs at least three powers")
    p_lo, p_mid, p_hi = p_set[0], p_set[len(p_set) // 2], p_set[-1]
    c0s, c1s, max_resid = [], [], 0.0
    for r in r_set:
        lead_target = model.c1_over_omega(float(r))
        v_lo = eval_kernel(model, p_lo, float(r))
        v_mid = eval_kernel(model, p_mid, float(r))
        v_hi = eval_kernel(model, p_hi, float(r))
        c0 = (v_hi - v_lo) / (p_hi - p_lo)
        c1 = v_lo - c0 * p_lo
        c0s.append(c0 / lead_target)
        c1s.append(c1)
        max_resid = max(max_resid, abs(v_mid - (c0 * p_mid + c1)) / p_mid)
    lead_ok = max(abs(c - 1.0) for c in c0s) < 1e-8
    resid_ok = max_resid < 1e-9
    spread_ok = max(c1s) - min(c1s) < 1e-6
    abs_c1 = [abs(c) for c in c1s]
    ratio = max(abs_c1) / min(abs_c1) if min(abs_c1) > 0 else math.inf
    return BoundReport(
        model=model.name,
        alpha=model.profile.alpha,
        beta=model.profile.beta,
        delta=model.profile.delta,
        grid={
            "p_set": [int(p) for p in p_set],
            "r_set": [float(r) for r in r_set],
            "fitted_leading_over_target": c0s,
            "max_two_term_residual_per_p": max_resid,
        },
        fitted_constant=float(np.mean(c1s)),
        stability_ratio=ratio,
        passed=lead_ok and resid_ok and spread_ok,
    )
