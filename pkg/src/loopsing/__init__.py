"""loopsing: exact computations around loop-space functionals.

Computes the constant-term functional of a homogeneous polynomial applied to
truncated Laurent series, verifies its structural identities symbolically,
counts the Milnor number of the singularity two independent ways, and solves
the Gysin long exact sequences of the truncation tower to reproduce the
renormalized nearby cohomology: mu classes in degree d-1, everything else
escaping to infinity.
"""

from .cohom import (
    DimensionTheory,
    GradedDims,
    Inconsistent,
    LesSystem,
    NotStabilized,
    RankFact,
    Underdetermined,
    escape_report,
    escape_table,
    gysin_step,
    milnor_fiber_cohomology,
    renormalized_nearby_cohomology,
    solve_les,
    solve_les_detailed,
    sphere_cohomology,
    truncation_cohomology,
)
from .exactalg import LoopPoly, LoopVar, Monomial, Rational, grading
from .grobner import (
    GroebnerBasis,
    Ideal,
    Infinite,
    NotIsolated,
    buchberger,
    jacobian_ideal,
    milnor_number,
    milnor_number_oracle,
    standard_monomials,
)
from .loopfun import (
    DegreeTooLow,
    InputFunction,
    NotHomogeneous,
    Window,
    check_derivative_identity,
    check_support_bound,
    check_top_linearity,
    constant_loop_restriction,
    jet_coefficient,
    jet_coefficient_by_enumeration,
    lambda_of,
    minimal_window,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeTooLow",
    "DimensionTheory",
    "GradedDims",
    "GroebnerBasis",
    "Ideal",
    "Inconsistent",
    "Infinite",
    "InputFunction",
    "LesSystem",
    "LoopPoly",
    "LoopVar",
    "Monomial",
    "NotHomogeneous",
    "NotIsolated",
    "NotStabilized",
    "RankFact",
    "Rational",
    "Underdetermined",
    "Window",
    "buchberger",
    "check_derivative_identity",
    "check_support_bound",
    "check_top_linearity",
    "constant_loop_restriction",
    "escape_report",
    "escape_table",
    "grading",
    "gysin_step",
    "jacobian_ideal",
    "jet_coefficient",
    "jet_coefficient_by_enumeration",
    "lambda_of",
    "milnor_fiber_cohomology",
    "milnor_number",
    "milnor_number_oracle",
    "minimal_window",
    "renormalized_nearby_cohomology",
    "solve_les",
    "solve_les_detailed",
    "sphere_cohomology",
    "standard_monomials",
    "truncation_cohomology",
    "__version__",
]
