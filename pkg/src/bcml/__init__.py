"""Bicomplex arithmetic, bicomplex Gamma, and the bicomplex one-parameter
Mittag-Leffler function, with a numerical identity-verification harness."""

from .bicomplex import (
    E1,
    E2,
    I1,
    I2,
    J,
    ONE,
    ZERO,
    Bicomplex,
    Hyperbolic,
    abs_value,
    arg_j,
    div,
    exp,
    format_bicomplex,
    from_cartesian,
    from_idempotent,
    i1_modulus,
    i2_modulus,
    is_null_cone,
    j_modulus,
    mul,
    n_xi,
    n_xi_radical,
    norm,
    parse_bicomplex,
    pow_int,
    root_q,
    to_idempotent,
)
from .errors import (
    BCGammaPole,
    BicomplexError,
    Divergent,
    DomainAlpha,
    GammaPole,
    IntegralDomain,
    NonFinite,
    NotConverged,
    NullConeArgument,
    NullConeDivisor,
    NullConeError,
    NullConeRoot,
    OutsideDisk,
    ParseError,
    PoleOnContour,
)
from .functions import (
    MLParameter,
    bc_gamma,
    bc_gamma_integral,
    bc_gamma_weierstrass,
    bc_ml,
    growth_order_slope,
    laplace_transform_ml,
    order_and_type,
    special_case,
)
from .identities import (
    ResidualReport,
    contour_residual,
    cr_residual,
    decomposition_residual,
    duplication_residual,
    laplace_residual,
    make_report,
    multiplication_residual,
    ode_residual,
    order_type_residual,
    paper_recurrence_residual,
    special_case_residual,
)
from .kernels import (
    MLEvalOptions,
    cgamma,
    ml_contour,
    ml_series,
    ml_weierstrass,
    rgamma,
    rgamma_euler,
)
from .series import FracPowerSeries, differentiate, evaluate, ml_as_series

__version__ = "0.1.0"
