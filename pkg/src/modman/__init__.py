"""Finite-dimensional quantum statistical manifolds.

Numerics for the standard representation of matrix algebras: modular
operators and flows, positivity cones, Radon-Nikodym elements, relative
entropy (three equivalent routes), exponential arcs with their scalar
potential and Legendre dual, the Kubo-Mori metric, and dually flat
parametric families with Newton inversion between natural and
expectation coordinates.  Everything is exact linear algebra on n x n
complex matrices; every structural identity ships as a runnable check
(see :mod:`modman.verify` and the ``modman verify`` command).
"""

from .arcs import (
    ExponentialArc,
    composition_residual,
    exponential_arc,
    generator_between,
)
from .divergence import (
    RelativeModularOperator,
    araki_divergence,
    araki_dual_form,
    relative_modular,
    umegaki_divergence,
)
from .errors import (
    ConstantGeneratorError,
    DimensionMismatch,
    DomainError,
    FaithfulnessError,
    InputError,
    MajorizationError,
    ModmanError,
    NotAttainedError,
    NumericError,
    OverflowError,
    PreconditionError,
)
from .km_metric import MetricContext, log_mean, metric_context
from .matfun import (
    DensityMatrix,
    SpectralDecomposition,
    as_hermitian,
    density,
    exp_divided_difference,
    frechet_exp,
    hermitian_part,
    is_psd,
    matrix_function,
    matrix_power_complex,
    normalized_exponential,
    spectral_decompose,
)
from .sampling import (
    complex_gaussian,
    random_density,
    random_hermitian,
    random_traceless_hermitian,
)
from .standard_form import (
    ConeVector,
    GnsSpace,
    TangentFunctional,
    build_standard_form,
    cone_vector,
    modular_conjugate,
    state_of_vector,
    tangent_functional,
    vector_of_state,
)
from .submanifold import SubmanifoldModel, m_geodesic, submanifold_model
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "ConeVector",
    "ConstantGeneratorError",
    "DensityMatrix",
    "DimensionMismatch",
    "DomainError",
    "ExponentialArc",
    "FaithfulnessError",
    "GnsSpace",
    "InputError",
    "MajorizationError",
    "MetricContext",
    "ModmanError",
    "NotAttainedError",
    "NumericError",
    "OverflowError",
    "PreconditionError",
    "RelativeModularOperator",
    "SpectralDecomposition",
    "SubmanifoldModel",
    "TangentFunctional",
    "araki_divergence",
    "araki_dual_form",
    "as_hermitian",
    "build_standard_form",
    "complex_gaussian",
    "composition_residual",
    "cone_vector",
    "density",
    "exp_divided_difference",
    "exponential_arc",
    "frechet_exp",
    "generator_between",
    "hermitian_part",
    "is_psd",
    "log_mean",
    "m_geodesic",
    "matrix_function",
    "matrix_power_complex",
    "metric_context",
    "modular_conjugate",
    "normalized_exponential",
    "random_density",
    "random_hermitian",
    "random_traceless_hermitian",
    "relative_modular",
    "run_verify",
    "spectral_decompose",
    "state_of_vector",
    "submanifold_model",
    "tangent_functional",
    "umegaki_divergence",
    "vector_of_state",
]
