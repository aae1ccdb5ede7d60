"""Generalized Stieltjes transforms ``G(lam, mu; z) = int (z - x)**-lam mu(dx)``.

Closed forms for beta-type laws, the Wigner, arcsine, Bernoulli and free
Poisson relations, the Jacobi series of the kernel and the Humbert root
machinery, each checkable against an independent quadrature oracle.
"""

from .errors import (
    BranchError,
    ConfigError,
    ConvergenceError,
    CutError,
    ParameterError,
    PoleError,
    QuadratureError,
    SectorError,
    StieltjesLabError,
    SupportError,
    ZeroError,
)
from .humbert import (
    HumbertParams,
    TrinomialRoot,
    branch_points,
    f_map,
    gamma0_gst_identity_d2,
    gamma0_integral_d2,
    humbert_coeffs,
    humbert_functional_normalization,
    root_select,
    root_via_2f1_d2,
    root_via_series,
)
from .jacobi import (
    ExpansionTruncation,
    JacobiParams,
    jacobi_poly,
    kernel_coeffs,
    kernel_expansion_coeff,
    kernel_reconstruct,
    ultraspherical_poly,
)
from .measures import (
    Atom,
    BetaParams,
    MeasureSpec,
    arcsine,
    bernoulli_power_measure,
    bernoulli_sym,
    beta_measure,
    discretize,
    free_poisson_quarter,
    integrate,
    kappa,
    kappa_convolution_density,
    moment,
    mult_convolve,
    wigner,
)
from .quadrature import QuadraturePolicy, tanh_sinh
from .report import VerificationReport
from .special import (
    euler_2f1_oracle,
    gamma,
    gauss_2f1,
    hyper_pfq,
    ln_gamma,
    pochhammer,
    rgamma,
)
from .stieltjes import (
    EvalGrid,
    GstResult,
    examp1_closed,
    examp2_closed,
    free_poisson_closed,
    gst_beta_closed,
    gst_beta_closed_alt,
    gst_quadrature,
    power_relation_check,
    prop1_closed,
    prop2_closed,
    shrinkage_closed,
    stieltjes_arcsine,
    stieltjes_bernoulli,
    stieltjes_free_poisson,
    stieltjes_wigner,
)

__version__ = "0.1.0"
