"""Bergman kernel density profiles on surfaces with conical and puncture
singularities: exact closed forms, a generic radial quadrature engine,
density-of-states scaling limits, and empirical verification of the
asymptotic estimates.
"""

from ._backend import available_backends, backend_name, set_backend
from .kernel import (
    KernelProfile,
    MonomialBasis,
    PunctureDivergenceError,
    TailNotCertifiedError,
    eval_kernel,
    kernel_evaluator,
    kernel_profile,
    petersson_kernel,
    poincare_disc_index_cap,
    poincare_disc_kernel,
    poincare_disc_log_norm,
    pole_kernel,
    radial_kernel,
    radial_norms,
    spindle_kernel,
    spindle_kernel_closed,
    spindle_log_norms,
)
from .models import (
    MODEL_NAMES,
    RadialModel,
    SingularityProfile,
    SpindleParams,
    fubini_study_model,
    gauss_curvature,
    log_singular_demo_model,
    model_by_name,
    poincare_disc_density,
    poincare_disc_model,
    pole_model,
    spindle_density,
    spindle_model,
)
from .scaling import (
    ScaledProfile,
    limit_profile,
    pole_limit_profile,
    scaled_gap,
    scaled_profile,
    theta_sequence,
)
from .specfn import (
    ConvergenceError,
    MLParams,
    log_beta,
    log_gamma,
    mittag_leffler,
)
from .verify import (
    BoundReport,
    b0_check,
    bound_check,
    corollary_check,
    deviation,
    gamma_lemma_check,
    two_term_suite,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
