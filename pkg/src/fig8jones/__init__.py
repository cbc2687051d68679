"""Colored Jones polynomials of the figure-eight knot at deformed roots of unity."""

__version__ = "0.1.0"

from .special import (  # noqa: E402
    DEFAULT_PRECISION,
    DomainError,
    PrecisionConfig,
    hyperbolic_gamma,
    lobachevsky,
    phi,
    phi_hyperbolic,
    theta,
)
from .evaluator import (  # noqa: E402
    Parameter,
    critical_indices,
    f_max,
    g_factor,
    jones_log_growth,
    jones_value,
    partial_products,
    sign_table_check,
)
from .asymptotics import (  # noqa: E402
    appendix_V,
    appendix_W,
    appendix_dV,
    classify,
    cone_manifold_volume,
    delta_gap,
    imaginary_growth,
    vhat,
)
