"""Calculus on the space of probability measures on the real line.

Exact Wasserstein-1 distances between discrete measures, grid discretization
through partitions of unity with a 3/n guarantee, cylinder functions with
closed-form functional derivatives, finite-difference derivative estimators,
and the antiderivative construction with its symmetry obstruction.
"""

from .measures import (
    DiscreteMeasure,
    dirac,
    mix,
    integrate,
    w1,
    kr_lower_bound,
    signed_difference,
    measure_from_dict,
    measure_from_json,
    measure_to_dict,
    measure_to_json,
)
from .partition import PartitionScheme, bump_weight, discretize, BUMP_MODES
from .functions import (
    ScalarFunction,
    CylinderFunction,
    OuterMap,
    sin_fn,
    cos_fn,
    tanh_fn,
    polynomial,
    gaussian,
    affine,
    smooth_abs,
    identity_fn,
    outer_linear,
    outer_product,
    outer_polynomial,
    outer_sin,
    outer_exp,
    cylinder_from_dict,
    cylinder_to_dict,
    scalar_from_dict,
    scalar_to_dict,
    lift_to_field,
    standard_battery,
    lipschitz_probes,
)
from .derivative import (
    DerivativeField,
    MeasureFunction,
    zero_field,
    dawson,
    dawson_extrapolated,
    uniform_dawson_modulus,
    verify_deriv2,
    canonicalize,
)
from .ftc import (
    BASE_POINT,
    antiderivative,
    symmetry_residual,
    ftc_check,
    counterexample_field,
    counterexample_closed_antiderivative,
    counterexample_closed_delta,
    counterexample_report,
    field_from_dict,
)
from .sampling import random_measure, random_point, stream_rng
from .acceptance import run_sweep

__version__ = "0.1.0"

__all__ = [
    "DiscreteMeasure",
    "dirac",
    "mix",
    "integrate",
    "w1",
    "kr_lower_bound",
    "signed_difference",
    "measure_from_dict",
    "measure_from_json",
    "measure_to_dict",
    "measure_to_json",
    "PartitionScheme",
    "bump_weight",
    "discretize",
    "BUMP_MODES",
    "ScalarFunction",
    "CylinderFunction",
    "OuterMap",
    "sin_fn",
    "cos_fn",
    "tanh_fn",
    "polynomial",
    "gaussian",
    "affine",
    "smooth_abs",
    "identity_fn",
    "outer_linear",
    "outer_product",
    "outer_polynomial",
    "outer_sin",
    "outer_exp",
    "cylinder_from_dict",
    "cylinder_to_dict",
    "scalar_from_dict",
    "scalar_to_dict",
    "lift_to_field",
    "standard_battery",
    "lipschitz_probes",
    "DerivativeField",
    "MeasureFunction",
    "zero_field",
    "dawson",
    "dawson_extrapolated",
    "uniform_dawson_modulus",
    "verify_deriv2",
    "canonicalize",
    "BASE_POINT",
    "antiderivative",
    "symmetry_residual",
    "ftc_check",
    "counterexample_field",
    "counterexample_closed_antiderivative",
    "counterexample_closed_delta",
    "counterexample_report",
    "field_from_dict",
    "random_measure",
    "random_point",
    "stream_rng",
    "run_sweep",
    "__version__",
]
