"""Fourier, cosine and Laplace transforms characterized by their convolution property.

Finite abelian groups stand in for locally compact abelian groups and a
uniform grid stands in for the half-line.  ``characterizer`` turns an
operator kernel with the convolution property into the map theta through
which it factors.
"""
from .characterizer import (
    COSINE,
    FOURIER,
    LAPLACE,
    AmbiguousMatch,
    CharacterEquationViolation,
    EvenWitnessNotFound,
    ExtractionError,
    ExtractionReport,
    FactorizationViolation,
    FitResidualTooLarge,
    FunctionalEquationViolation,
    LaplaceOperatorKernel,
    ModulusViolation,
    MultiplicativeOperator,
    NonPositiveExponent,
    NonRealKernel,
    NotMultiplicative,
    ThetaAssignment,
    ZeroCrossing,
    check_multiplicativity,
    extract,
    extract_theta_cosine,
    extract_theta_fourier,
    extract_theta_laplace,
    verify_factorization,
)
from .factory import build_from_theta, build_laplace_from_exponents, perturb, random_theta
from .groups import (
    CosineClassElement,
    DualCharacter,
    FiniteAbelianGroup,
    add,
    char_eval,
    enumerate_cosine_class,
    enumerate_duals,
    neg,
)
from .kernels import BACKEND
from .laplace import GridSignal, HalfLineGrid, convergence_study, laplace_convolution, laplace_transform
from .signals import IndexSet, Signal, Spectrum, delta, evenize, random_signal, reflect, shift
from .transforms import (
    check_dalembert_lemma,
    check_shift_lemma,
    cosine_convolution,
    cosine_transform,
    fourier_convolution,
    fourier_transform,
)

__version__ = "0.1.0"
