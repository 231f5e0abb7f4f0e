"""Model geometries as first-class values.

A `RadialModel` bundles everything the norm/kernel engine needs about one
radially symmetric geometry: the metric density rho(r) against Lebesgue
measure, the weight of the Hermitian metric on the line bundle, the declared
singularity exponents at the puncture, and the leading-coefficient ratio that
the asymptotic checks compare against.  All evaluation is routed through
log-radius primitives so the engine can probe extremely small or large radii
without overflow.

Built-in geometries
-------------------
spindle           sphere with two antipodal cone points of order a (0 < a <= 1)
                  and an optional Aharonov-Bohm flux nu entering the weight of
                  the p-th power through a p-independent twist nu*log|z|;
                  density rho_a(r) = a / (pi r^{2(1-a)} (1 + r^{2a})^2).
spindle-pole      same density, but the weight of h itself carries the log
                  pole nu*log|z| (0 < nu <= 1), so the pole strength grows
                  like p*nu with the power.
poincare-disc     punctured unit disc with the complete metric
                  rho(r) = (2 r ln r)^{-2} of Gauss curvature -4, polarised by
                  powers of the canonical bundle.  The weight is taken in the
                  Petersson convention phi = (1/2) log rho; the constant gauge
                  offset between this and the canonical-frame weight cancels
                  identically in every kernel value.
fubini-study      the smooth a = 1 spindle.
log-singular-demo a = 1 spindle with flux nu = 1/2: a smooth metric whose
                  bundle weight has a pure logarithmic singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

MODEL_NAMES = (
    "spindle",
    "spindle-pole",
    "poincare-disc",
    "fubini-study",
    "log-singular-demo",
)


@dataclass(frozen=True)
class SpindleParams:
    """Cone order a in (0, 1] and flux nu of the two-cone sphere."""

    a: float
    nu: float = 0.0

    def __post_init__(self) -> None:
        if not 0 < self.a <= 1:
            raise ValueError(f"cone order a must lie in (0, 1], got {self.a}")

    def require_pole_range(self) -> None:
        """The log-pole variant additionally needs 0 < nu <= 1."""
        if not 0 < self.nu <= 1:
            raise ValueError(
                f"pole variant requires 0 < nu <= 1, got nu={self.nu}"
            )


@dataclass(frozen=True)
class SingularityProfile:
    """Declared singularity exponents of a model near its puncture.

    nu is the log-pole coefficient of the weight, alpha bounds the growth of
    third weight derivatives (|D^3 psi| <= third_deriv_bound * r^-alpha), and
    beta the growth of first density derivatives.  delta is derived and gates
    the admissible regime p > C * r^-delta of the bound checks.
    """

    nu: float
    alpha: float
    beta: float
    third_deriv_bound: float = 1.0
    density_deriv_bound: float = 1.0
    delta: float = field(init=False)

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("singularity exponents must be nonnegative")
        if self.third_deriv_bound <= 0 or self.density_deriv_bound <= 0:
            raise ValueError("derivative bounds must be positive")
        object.__setattr__(
            self, "delta", max(8.0 / 3.0, 8.0 * self.beta / 3.0, 8.0 * self.alpha)
        )


@dataclass(frozen=True, eq=False)
class RadialModel:
    """One radial geometry plus the declared data the engine needs.

    `log_rho_lr` and the weight callables act on lr = ln r; `weight(p, r)`
    is the full weight of the p-th power, p * phi(r) + twist(r), where the
    twist collects any p-independent part (the Aharonov-Bohm flux).
    `origin_exponent(j, p)` is the power of r of the norm integrand
    r^{2j+1} e^{-2 w_p(r)} rho(r) as r -> 0 (slowly varying log factors
    excluded); `far_exponent` plays the same role at the far end of the
    domain, with None marking a regular endpoint.
    """

    name: str
    kind: str  # 'spindle-flux' | 'spindle-pole' | 'poincare-disc'
    params: Optional[SpindleParams]
    domain: tuple[float, float]
    profile: SingularityProfile
    canonical: bool
    expected_curvature: float
    cone_order: Optional[float]
    log_rho_lr: Callable[[float], float]
    phi_lr: Callable[[float], float]
    twist_lr: Callable[[float], float]
    c1_over_omega_fn: Callable[[float], float]
    origin_exponent: Callable[[int, int], float]
    far_exponent: Optional[Callable[[int, int], float]]
    admissible_j: Callable[[int], tuple[int, Optional[int]]]

    # -- radius-space conveniences ------------------------------------
    def log_rho(self, r: float) -> float:
        self._require_interior(r)
        return self.log_rho_lr(math.log(r))

    def rho(self, r: float) -> float:
        """Metric density against Lebesgue measure; positive on the interior."""
        return math.exp(self.log_rho(r))

    def phi(self, r: float) -> float:
        """Per-power part of the weight of h."""
        self._require_interior(r)
        return self.phi_lr(math.log(r))

    def twist(self, r: float) -> float:
        self._require_interior(r)
        return self.twist_lr(math.log(r))

    def weight(self, p: int, r: float) -> float:
        """Weight of h_p: p * phi(r) + twist(r)."""
        self._require_interior(r)
        return self.weight_lr(p, math.log(r))

    def weight_lr(self, p: int, lr: float) -> float:
        return p * self.phi_lr(lr) + self.twist_lr(lr)

    def c1_over_omega(self, r: float) -> float:
        """Leading-coefficient ratio the kernel density converges to.

        For canonical-bundle models this is -R/(2 pi) with R the Gauss
        curvature, which plays exactly the role of c1/omega.
        """
        self._require_interior(r)
        return self.c1_over_omega_fn(r)

    def _require_interior(self, r: float) -> None:
        lo, hi = self.domain
        if not (lo < r < hi):
            raise ValueError(
                f"radius {r} outside the open domain ({lo}, {hi}) of model {self.name!r}"
            )


def _spindle_callables(a: float, nu: float, pole: bool):
    """Shared log-radius primitives of the two-cone sphere metrics."""
    two_a = 2.0 * a
    log_a_over_pi = math.log(a / math.pi)

    def log_rho_lr(lr: float) -> float:
        return log_a_over_pi - 2.0 * (1.0 - a) * lr - 2.0 * np.logaddexp(0.0, two_a * lr)

    if pole:
        # weight of h: nu ln r + ((1-nu)/2a) ln(1+r^2a); scales with p
        def phi_lr(lr: float) -> float:
            return nu * lr + (1.0 - nu) / two_a * np.logaddexp(0.0, two_a * lr)

        def twist_lr(lr: float) -> float:
            return 0.0

    else:
        # weight of h_p: p * (1/2a) ln(1+r^2a) + flux twist (p-independent)
        def phi_lr(lr: float) -> float:
            return np.logaddexp(0.0, two_a * lr) / two_a

        def twist_lr(lr: float) -> float:
            return nu / two_a * (two_a * lr - np.logaddexp(0.0, two_a * lr))

    return log_rho_lr, phi_lr, twist_lr


def _conical_profile(a: float, nu: float) -> SingularityProfile:
    # a = 1 is smooth: only the logarithmic weight singularity remains.
    if a == 1.0:
        return SingularityProfile(nu=nu, alpha=0.0, beta=0.0)
    return SingularityProfile(nu=nu, alpha=1.0 + 2.0 * a, beta=1.0 + 2.0 * a)


def flux_lowest_index(params: SpindleParams) -> int:
    """Smallest monomial index with finite norm in the flux variant."""
    return max(math.floor(params.nu - params.a) + 1, 0)


def pole_lowest_index(params: SpindleParams, p: int) -> int:
    """Smallest monomial index with finite norm in the log-pole variant."""
    return math.floor(p * params.nu - params.a) + 1


def spindle_model(a: float, nu: float = 0.0, name: str = "spindle") -> RadialModel:
    params = SpindleParams(a, nu)
    log_rho_lr, phi_lr, twist_lr = _spindle_callables(a, nu, pole=False)
    return RadialModel(
        name=name,
        kind="spindle-flux",
        params=params,
        domain=(0.0, math.inf),
        profile=_conical_profile(a, nu),
        canonical=False,
        expected_curvature=4.0 * math.pi * a,
        cone_order=a,
        log_rho_lr=log_rho_lr,
        phi_lr=phi_lr,
        twist_lr=twist_lr,
        c1_over_omega_fn=lambda r: 1.0,
        origin_exponent=lambda j, p: 2.0 * (j - nu) + 2.0 * a - 1.0,
        far_exponent=lambda j, p: 2.0 * (j - p) - 2.0 * a - 1.0,
        admissible_j=lambda p: (flux_lowest_index(params), p),
    )


def pole_model(a: float, nu: float, name: str = "spindle-pole") -> RadialModel:
    params = SpindleParams(a, nu)
    params.require_pole_range()
    log_rho_lr, phi_lr, twist_lr = _spindle_callables(a, nu, pole=True)
    return RadialModel(
        name=name,
        kind="spindle-pole",
        params=params,
        domain=(0.0, math.inf),
        profile=_conical_profile(a, nu),
        canonical=False,
        expected_curvature=4.0 * math.pi * a,
        cone_order=a,
        log_rho_lr=log_rho_lr,
        phi_lr=phi_lr,
        twist_lr=twist_lr,
        c1_over_omega_fn=lambda r: 1.0 - nu,
        origin_exponent=lambda j, p: 2.0 * (j - p * nu) + 2.0 * a - 1.0,
        far_exponent=lambda j, p: 2.0 * (j - p) - 2.0 * a - 1.0,
        admissible_j=lambda p: (pole_lowest_index(params, p), p),
    )


def poincare_disc_model() -> RadialModel:
    log2 = math.log(2.0)

    def log_rho_lr(lr: float) -> float:
        # rho = (2 r ln r)^{-2}; lr < 0 on the punctured disc
        return -2.0 * (log2 + lr + math.log(-lr))

    def phi_lr(lr: float) -> float:
        return 0.5 * log_rho_lr(lr)

    return RadialModel(
        name="poincare-disc",
        kind="poincare-disc",
        params=None,
        domain=(0.0, 1.0),
        profile=SingularityProfile(nu=-1.0, alpha=3.0, beta=3.0),
        canonical=True,
        expected_curvature=-4.0,
        cone_order=None,
        log_rho_lr=log_rho_lr,
        phi_lr=phi_lr,
        twist_lr=lambda lr: 0.0,
        c1_over_omega_fn=lambda r: 2.0 / math.pi,  # -R/(2 pi) with R = -4
        origin_exponent=lambda j, p: 2.0 * j + 2.0 * p - 1.0,
        far_exponent=None,
        admissible_j=lambda p: (1 - p, None),
    )


def fubini_study_model() -> RadialModel:
    return spindle_model(1.0, 0.0, name="fubini-study")


def log_singular_demo_model(nu: float = 0.5) -> RadialModel:
    if not 0 < nu < 1:
        raise ValueError(f"demo flux must lie in (0, 1), got {nu}")
    return spindle_model(1.0, nu, name="log-singular-demo")


def model_by_name(name: str, a: float | None = None, nu: float | None = None) -> RadialModel:
    """CLI-facing model registry; a and nu default per model where sensible."""
    if name == "spindle":
        return spindle_model(a if a is not None else 0.5, nu if nu is not None else 0.0)
    if name == "spindle-pole":
        if a is None or nu is None:
            raise ValueError("spindle-pole requires both a and nu")
        return pole_model(a, nu)
    if name == "poincare-disc":
        return poincare_disc_model()
    if name == "fubini-study":
        return fubini_study_model()
    if name == "log-singular-demo":
        return log_singular_demo_model(nu if nu is not None else 0.5)
    raise ValueError(f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}")


# ---------------------------------------------------------------------------
# densities and curvature
# ---------------------------------------------------------------------------

def spindle_density(params: SpindleParams, r: float) -> float:
    """rho_a(r) = a / (pi r^{2(1-a)} (1 + r^{2a})^2); singular at 0 for a < 1."""
    if not r > 0:
        raise ValueError(f"spindle density requires r > 0, got {r}")
    a = params.a
    return a / (math.pi * r ** (2.0 * (1.0 - a)) * (1.0 + r ** (2.0 * a)) ** 2)


def poincare_disc_density(r: float) -> float:
    """rho(r) = (2 r ln r)^{-2} on 0 < r < 1."""
    if not 0 < r < 1:
        raise ValueError(f"disc density requires 0 < r < 1, got {r}")
    return (2.0 * r * math.log(r)) ** -2


def gauss_curvature(model: RadialModel, r: float, h: float = 1e-4) -> float:
    """Finite-difference Gauss curvature -(2/rho) d d-bar log rho at radius r.

    Radial symmetry reduces d d-bar to (1/4)(d^2/dr^2 + (1/r) d/dr) applied to
    log rho, discretised with central five-point stencils of step h.  The
    truncation error is O(h^4); the practical accuracy floor is binary64
    cancellation, about eps * |log rho| / h^2, so h should grow with the
    radius once 1/rho becomes large (the tests use h * (1 + r^2)).

    Expected constants: 4 pi a on the two-cone sphere family (any flux) and
    -4 on the punctured disc.
    """
    if h <= 0:
        raise ValueError("stencil step h must be positive")
    lo, hi = model.domain
    if not (lo < r - 2 * h and r + 2 * h < hi):
        raise ValueError(
            f"stencil [{r - 2 * h}, {r + 2 * h}] leaves the open domain ({lo}, {hi})"
        )
    u = [model.log_rho(r + k * h) for k in (-2, -1, 0, 1, 2)]
    d2 = (-u[0] + 16 * u[1] - 30 * u[2] + 16 * u[3] - u[4]) / (12 * h * h)
    d1 = (u[0] - 8 * u[1] + 8 * u[3] - u[4]) / (12 * h)
    return -2.0 * math.exp(-u[2]) * 0.25 * (d2 + d1 / r)
