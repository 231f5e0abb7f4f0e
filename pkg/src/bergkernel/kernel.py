"""Bergman kernel density evaluation.

Three layers, each checkable against the next:

1. exact closed forms for the two-cone sphere: a Beta-reciprocal sum for
   arbitrary cone order and flux (both the fixed-flux and the growing-pole
   variants), plus the roots-of-unity closed form at integer 1/a;
2. a closed Gamma-quotient formula for the punctured-disc canonical norms,
   derived from int_0^1 r^A (-ln r)^B dr = Gamma(B+1)/(A+1)^{B+1};
3. the generic route: quadrature norms (`radial_norms`) assembled into the
   kernel sum (`radial_kernel`) for any radial model.

All sums run in the log domain with a max shift, so powers up to a few
thousand stay in binary64.  Values at the puncture r = 0 are handled by the
documented limits, never by evaluating the generic formula; a genuinely
divergent puncture value raises `PunctureDivergenceError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _backend, quadrature
from .models import (
    RadialModel,
    SpindleParams,
    flux_lowest_index,
    pole_lowest_index,
)

TAIL_RTOL = 1e-16  # relative tail mass allowed at a certified truncation


class PunctureDivergenceError(ValueError):
    """The kernel diverges at the puncture for these parameters."""


class TailNotCertifiedError(RuntimeError):
    """A truncated basis sum could not certify a monotone geometric tail."""


@dataclass(frozen=True)
class KernelProfile:
    """Sampled (radius, kernel value) pairs for one power p."""

    p: int
    radii: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("profile radii must be strictly increasing")
        if any(v < 0 or math.isnan(v) for v in self.values):
            raise ValueError("kernel values must be nonnegative (inf marks divergence)")


@dataclass(frozen=True, eq=False)
class MonomialBasis:
    """Log norms ln ||z^j||^2_p for a contiguous admissible index range.

    `unbounded` records that the model's true index set continues past
    j_max (the punctured disc), so kernel sums over this basis must certify
    their truncation tail.  `excluded` lists requested indices whose norm
    integral diverges (endpoint-exponent test).
    """

    j_min: int
    j_max: int
    log_norms: np.ndarray
    unbounded: bool = False
    excluded: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.j_max - self.j_min + 1 != len(self.log_norms):
            raise ValueError("log_norms length does not match the index range")
        if not np.all(np.isfinite(self.log_norms)):
            raise ValueError("every stored norm must be finite")


# ---------------------------------------------------------------------------
# closed forms: two-cone sphere
# ---------------------------------------------------------------------------

def spindle_log_norms(params: SpindleParams, p: int) -> np.ndarray:
    """ln ||z^j||^2_p = ln B(1 + (j-nu)/a, 1 + (p-j)/a) for j = j0 .. p."""
    a, nu = params.a, params.nu
    j0 = flux_lowest_index(params)
    if p < j0:
        raise ValueError(f"no admissible monomials: p={p} < lowest index {j0}")
    j = np.arange(j0, p + 1, dtype=float)
    impl = _backend.impl
    x = 1.0 + (j - nu) / a
    y = 1.0 + (p - j) / a
    return impl.lgamma_vec(x) + impl.lgamma_vec(y) - impl.lgamma(2.0 + (p - nu) / a)


def _beta_sum_kernel(log_norms: np.ndarray, pole_order: float, bundle_power: float,
                     two_a: float, r: float) -> float:
    """exp(pole prefactor) * sum_j r^{2j} / ||z^{j+jmin}||^2 in the log domain.

    pole_order is the prefactor exponent 2*(j_min - nu_eff); bundle_power the
    exponent of (1 + r^{2a}).
    """
    lr = math.log(r)
    lse = _backend.impl.lse_affine(-log_norms, 2.0 * lr)
    prefactor = pole_order * lr - bundle_power * np.logaddexp(0.0, two_a * lr)
    return math.exp(prefactor + lse)


def spindle_kernel(params: SpindleParams, p: int, r: float) -> float:
    """Kernel density of the flux variant at radius r >= 0.

    At r = 0: equals (p - nu)/a + 1 for integer flux, 0 when the prefactor
    exponent j0 - nu is positive, and diverges when it is negative.
    """
    a, nu = params.a, params.nu
    j0 = flux_lowest_index(params)
    if p < j0:
        raise ValueError(f"no admissible monomials: p={p} < lowest index {j0}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if r == 0.0:
        d = j0 - nu
        if d > 0:
            return 0.0
        if d == 0:
            return (p - nu) / a + 1.0
        raise PunctureDivergenceError(
            f"kernel diverges at the puncture for nu={nu}, a={a} (j0 - nu = {d})"
        )
    log_norms = spindle_log_norms(params, p)
    return _beta_sum_kernel(log_norms, 2.0 * (j0 - nu), (p - nu) / a, 2.0 * a, r)


def spindle_kernel_closed(s: int, p: int, r: float) -> float:
    """Roots-of-unity closed form of the fluxless kernel at cone order 1/s.

    The ell-sum runs over complex phases; its imaginary residue must cancel
    to 1e-10 relative and is asserted.
    """
    if not (isinstance(s, int) and s >= 1):
        raise ValueError(f"s must be a positive integer, got {s}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if r == 0.0 or s == 1:
        return float(s * p + 1) if r == 0.0 else float(p + 1)
    u = r ** (2.0 / s)
    total = 1.0 + 0.0j
    for ell in range(1, s):
        phase = complex(math.cos(2.0 * math.pi * ell / s), math.sin(2.0 * math.pi * ell / s))
        total += ((1.0 + phase * u) / (1.0 + u)) ** (p * s)
    if abs(total.imag) > 1e-10 * abs(total.real):
        raise ArithmeticError(
            f"imaginary residue {total.imag:.3e} of the phase sum exceeds "
            f"1e-10 relative (s={s}, p={p}, r={r})"
        )
    return (p + 1.0 / s) * total.real


def pole_kernel(params: SpindleParams, p: int, r: float) -> float:
    """Kernel density of the growing-pole variant (0 < nu <= 1) at r >= 0."""
    params.require_pole_range()
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    a, nu = params.a, params.nu
    if nu == 1.0:
        return 1.0  # single admissible monomial of unit pointwise norm
    jp = pole_lowest_index(params, p)
    d = jp - p * nu
    if r == 0.0:
        if d > 0:
            return 0.0
        if d == 0:
            return 1.0 + (p - jp) / a
        raise PunctureDivergenceError(
            f"kernel diverges at the puncture for nu={nu}, a={a}, p={p} (jp - p nu = {d})"
        )
    j = np.arange(jp, p + 1, dtype=float)
    impl = _backend.impl
    x = 1.0 + (j - p * nu) / a
    y = 1.0 + (p - j) / a
    log_norms = impl.lgamma_vec(x) + impl.lgamma_vec(y) - impl.lgamma(
        2.0 + p * (1.0 - nu) / a
    )
    return _beta_sum_kernel(log_norms, 2.0 * d, p * (1.0 - nu) / a, 2.0 * a, r)


# ---------------------------------------------------------------------------
# closed forms: punctured-disc canonical bundle
# ---------------------------------------------------------------------------

def poincare_disc_log_norm(p: int, j: int) -> float:
    """ln ||z^j||^2_p = ln(2 pi 2^{2p-2} Gamma(2p-1) / (2j+2p)^{2p-1}), j >= 1-p."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if j < 1 - p:
        raise ValueError(f"index j={j} is inadmissible for p={p} (needs j >= {1 - p})")
    impl = _backend.impl
    return (
        math.log(2.0 * math.pi)
        + (2 * p - 2) * math.log(2.0)
        + impl.lgamma(2.0 * p - 1.0)
        - (2 * p - 1) * math.log(2.0 * j + 2.0 * p)
    )


def poincare_disc_index_cap(p: int, r_max: float) -> int:
    """Monomial index cap making truncated disc sums certifiable up to r_max.

    The log-terms peak near k = j + p ~ (2p-1)/(2 |ln r|); the cap adds
    enough of the geometric tail that the certificate in `radial_kernel`
    clears its 1e-16 relative bound at every radius <= r_max.
    """
    if not 0 < r_max < 1:
        raise ValueError(f"r_max must lie in (0, 1), got {r_max}")
    k_peak = (2 * p - 1) / (2.0 * -math.log(r_max))
    return math.ceil(k_peak + 14.0 * math.sqrt(k_peak + 1.0) + 80.0) - p


def poincare_disc_kernel(p: int, r: float) -> float:
    """Punctured-disc canonical kernel at 0 < r < 1 via the closed norms.

    The index sum is infinite; terms are added until the log-term falls 50
    nats below the running maximum past the peak, which bounds the omitted
    geometric tail far below 1e-16 of the sum.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if r == 0.0:
        return 0.0  # the kernel vanishes at the puncture like r^2 (ln r)^{2p}
    if not 0 < r < 1:
        raise ValueError(f"disc kernel requires 0 <= r < 1, got {r}")
    x = -math.log(r)
    const = (
        math.log(2.0 * math.pi)
        + (2 * p - 2) * math.log(2.0)
        + _backend.impl.lgamma(2.0 * p - 1.0)
    )
    k_peak = (2 * p - 1) / (2 * x)
    k_max = int(k_peak + 14.0 * math.sqrt(k_peak + 1.0) + 80.0)
    while True:
        k = np.arange(1, k_max + 1, dtype=float)
        log_terms = (
            2 * p * (math.log(2.0) + math.log(r) + math.log(x))
            + (2 * k - 2 * p) * math.log(r)
            + (2 * p - 1) * (math.log(2.0) + np.log(k))
            - const
        )
        if log_terms[-1] < log_terms.max() - 50.0 and log_terms[-1] < log_terms[-2]:
            break
        k_max *= 2
        if k_max > 10**9:
            raise TailNotCertifiedError("disc kernel sum failed to enter its tail")
    return math.exp(_backend.impl.lse(log_terms))


# ---------------------------------------------------------------------------
# generic engine route
# ---------------------------------------------------------------------------

def radial_norms(
    model: RadialModel,
    p: int,
    j_range: Optional[tuple[int, int]] = None,
    *,
    reltol: float = quadrature.DEFAULT_RELTOL,
) -> MonomialBasis:
    """Quadrature norms for indices in j_range (inclusive).

    Defaults to the model's full admissible range; models with an unbounded
    index set (the disc) then need an explicit upper cutoff.  Divergent
    indices at the edges of the requested range are excluded and reported on
    the basis, not silently dropped.
    """
    lo_adm, hi_adm = model.admissible_j(p)
    unbounded = hi_adm is None
    if j_range is None:
        if unbounded:
            raise ValueError(
                f"model {model.name!r} has an unbounded index set; pass an explicit j_range"
            )
        j_range = (lo_adm, hi_adm)
    j_lo, j_hi = j_range
    if j_lo > j_hi:
        raise ValueError(f"empty index range {j_range}")

    excluded = [j for j in range(j_lo, j_hi + 1) if not quadrature.is_admissible(model, p, j)]
    kept = [j for j in range(j_lo, j_hi + 1) if j not in set(excluded)]
    if not kept:
        raise ValueError(f"no admissible indices in range {j_range} for model {model.name!r}")
    if kept != list(range(kept[0], kept[-1] + 1)):
        raise ValueError("admissible indices are not contiguous; unsupported model")

    log_norms = np.array(
        [quadrature.log_norm_integral(model, p, j, reltol=reltol) for j in kept]
    )
    still_unbounded = unbounded and (hi_adm is None) and (j_hi >= kept[-1])
    return MonomialBasis(
        j_min=kept[0],
        j_max=kept[-1],
        log_norms=log_norms,
        unbounded=still_unbounded,
        excluded=tuple(excluded),
    )


def radial_kernel(basis: MonomialBasis, model: RadialModel, p: int, r: float) -> float:
    """Kernel sum over a prepared basis: sum_j r^{2j} e^{-2 w_p(r)} / ||z^j||^2.

    For a truncated unbounded basis the omitted tail must be certified: the
    final log-terms have to decrease at a non-increasing rate (geometric
    envelope), and the resulting tail bound must stay below 1e-16 of the
    partial sum.  Otherwise `TailNotCertifiedError` is raised: the basis is
    too short for this radius.
    """
    lo, hi = model.domain
    if not lo < r < hi:
        raise ValueError(f"radius {r} outside the open domain of model {model.name!r}")
    lr = math.log(r)
    j = np.arange(basis.j_min, basis.j_max + 1, dtype=float)
    log_terms = 2.0 * j * lr - 2.0 * model.weight_lr(p, lr) - basis.log_norms
    m = log_terms.max()
    total = float(np.exp(log_terms - m).sum())
    if basis.unbounded:
        if len(log_terms) < 4:
            raise TailNotCertifiedError("basis too short to certify a tail")
        gaps = np.diff(log_terms[-4:])
        if not (np.all(gaps < 0.0) and np.all(np.diff(gaps) <= 1e-12)):
            raise TailNotCertifiedError(
                f"tail not certified monotone at truncation j={basis.j_max} (r={r}); "
                "rebuild the basis with a larger index cap"
            )
        q = math.exp(gaps[-1])
        tail = math.exp(log_terms[-1] - m) * q / (1.0 - q)
        if tail > TAIL_RTOL * total:
            raise TailNotCertifiedError(
                f"certified tail bound {tail:.2e} exceeds {TAIL_RTOL:.0e} of the sum "
                f"at r={r}; rebuild the basis with a larger index cap"
            )
    return math.exp(m + math.log(total))


def petersson_kernel(
    basis: Optional[MonomialBasis],
    model: RadialModel,
    p: int,
    r: float,
) -> float:
    """Weighted-product kernel of a canonical model: radial_kernel * rho(r)^p.

    Passing basis=None uses the closed-norm fast path where one exists.
    """
    if not model.canonical:
        raise ValueError(f"model {model.name!r} is not a canonical-bundle model")
    if basis is None:
        value = eval_kernel(model, p, r)
    else:
        value = radial_kernel(basis, model, p, r)
    return math.exp(math.log(value) + p * model.log_rho(r)) if value > 0 else 0.0


# ---------------------------------------------------------------------------
# dispatch helpers
# ---------------------------------------------------------------------------

def eval_kernel(model: RadialModel, p: int, r: float) -> float:
    """Kernel density of a built-in model via its fastest exact route."""
    if model.kind == "spindle-flux":
        return spindle_kernel(model.params, p, r)
    if model.kind == "spindle-pole":
        return pole_kernel(model.params, p, r)
    if model.kind == "poincare-disc":
        return poincare_disc_kernel(p, r)
    raise ValueError(f"no closed kernel route for model kind {model.kind!r}")


def kernel_evaluator(model: RadialModel, p: int) -> Callable[[float], float]:
    """Closure evaluating r -> P_p(r) with norms precomputed once.

    Used by parameter sweeps; sharing the norm array across radii is what
    makes the large-p verification grids cheap.
    """
    if model.kind == "spindle-flux":
        params = model.params
        j0 = flux_lowest_index(params)
        log_norms = spindle_log_norms(params, p)
        pole_order = 2.0 * (j0 - params.nu)
        bundle_power = (p - params.nu) / params.a
        two_a = 2.0 * params.a

        def evaluate(r: float) -> float:
            if r == 0.0:
                return spindle_kernel(params, p, 0.0)
            return _beta_sum_kernel(log_norms, pole_order, bundle_power, two_a, r)

        return evaluate
    if model.kind in ("spindle-pole", "poincare-disc"):
        return lambda r: eval_kernel(model, p, r)
    raise ValueError(f"no evaluator for model kind {model.kind!r}")


def kernel_profile(model: RadialModel, p: int, radii) -> KernelProfile:
    """Sample the kernel over a radius grid; divergent punctures become inf."""
    evaluate = kernel_evaluator(model, p)
    values = []
    for r in radii:
        try:
            values.append(evaluate(float(r)))
        except PunctureDivergenceError:
            values.append(math.inf)
    return KernelProfile(p=p, radii=tuple(float(r) for r in radii), values=tuple(values))
