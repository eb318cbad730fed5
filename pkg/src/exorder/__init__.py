"""Expectile-based measures of skewness and dispersion, stochastic-order
checkers, and the asymptotic efficiency of interexpectile ranges."""

from .distributions import (NIG, AffineModel, ContinuousModel, Exponential,
                            Laplace, Logistic, Lomax, Normal, Sample,
                            ScaledBernoulli, StudentT, Uniform, parse_spec,
                            sample_from)
from .errors import (ConvergenceError, DomainError, ExorderError, MomentError,
                     SingularityError)
from .expectiles import (ExpectileCurve, IdentificationFn, empirical_expectile,
                         empirical_ier, empirical_iqr, empirical_quantile,
                         expectile, expectile_cdf, ier, iqr)
from .kernels import BACKEND as KERNEL_BACKEND
from .skewness import (Classification, SkewnessProfile, big_s, big_s_tilde,
                       classify_skewness, s2, s2_tilde, skewness_profile)
from .version import __version__

__all__ = [
    "__version__", "KERNEL_BACKEND",
    # distributions
    "ContinuousModel", "Normal", "StudentT", "Lomax", "NIG", "Logistic",
    "Laplace", "Uniform", "Exponential", "AffineModel", "ScaledBernoulli",
    "Sample", "parse_spec", "sample_from",
    # errors
    "ExorderError", "DomainError", "MomentError", "SingularityError",
    "ConvergenceError",
    # expectiles
    "IdentificationFn", "ExpectileCurve", "expectile", "expectile_cdf",
    "empirical_expectile", "empirical_quantile", "empirical_ier",
    "empirical_iqr", "ier", "iqr",
    # skewness
    "Classification", "SkewnessProfile", "s2", "s2_tilde", "big_s",
    "big_s_tilde", "classify_skewness", "skewness_profile",
]
