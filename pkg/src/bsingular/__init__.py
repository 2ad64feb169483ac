"""Bernstein operator combinations with endpoint regularization,
weighted smoothness moduli, and convergence-rate verification sweeps."""

from .bernstein import (
    absolute_moment,
    basis,
    basis_row,
    bernstein_apply,
    bernstein_derivative,
    central_moment,
)
from .combination import (
    CombinationScheme,
    combo_apply,
    combo_derivative,
    make_scheme,
    moment_annihilation,
    scheme_from_degrees,
)
from .corpus import TestFunction, default_corpus
from .endpoint import (
    SmoothstepCutoff,
    lagrange_left,
    lagrange_right,
    modified_apply,
    modified_derivative,
    modified_function,
)
from .errors import (
    ConfigurationError,
    DegenerateFitError,
    DomainError,
    InsufficientSweepError,
    RangeError,
)
from .expressions import parse_function
from .fitting import fit_rate
from .functions import SampledFunction, constant, monomial
from .smoothness import (
    VARPHI,
    GridResolution,
    JacobiWeight,
    ModulusEstimate,
    StepWeight,
    diff_backward,
    diff_central,
    diff_forward,
    local_mesh,
    main_part_modulus,
    modulus_curve,
    omega_modulus,
    steklov_k_functional,
)

__version__ = "0.1.0"

__all__ = [
    "absolute_moment",
    "basis",
    "basis_row",
    "bernstein_apply",
    "bernstein_derivative",
    "central_moment",
    "CombinationScheme",
    "combo_apply",
    "combo_derivative",
    "make_scheme",
    "moment_annihilation",
    "scheme_from_degrees",
    "TestFunction",
    "default_corpus",
    "SmoothstepCutoff",
    "lagrange_left",
    "lagrange_right",
    "modified_apply",
    "modified_derivative",
    "modified_function",
    "ConfigurationError",
    "DegenerateFitError",
    "DomainError",
    "InsufficientSweepError",
    "RangeError",
    "parse_function",
    "fit_rate",
    "SampledFunction",
    "constant",
    "monomial",
    "VARPHI",
    "GridResolution",
    "JacobiWeight",
    "ModulusEstimate",
    "StepWeight",
    "diff_backward",
    "diff_central",
    "diff_forward",
    "local_mesh",
    "main_part_modulus",
    "modulus_curve",
    "omega_modulus",
    "steklov_k_functional",
    "__version__",
]
