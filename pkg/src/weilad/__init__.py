"""weilad: exact arithmetic over truncation algebras as higher-order
forward-mode differentiation, plus a finite functor-category checker for the
structural laws the construction obeys.

The numeric side represents elements of R (x) W as coefficient vectors over
the monomial basis of a finite quotient algebra W; evaluating an expression
on seeded inputs carries every derivative up to the truncation orders in one
exact pass.  The finite side replays the same structure on set-valued
functors over small categories, where exponential objects, slice
exponentials and the comparison morphisms between them can be verified
exhaustively.
"""

from .algebra import (
    TensorProduct,
    WeilAlgebra,
    WeilMorphism,
    algebra_from_spec,
    algebra_info,
    base_algebra,
    canonical_morphisms,
    compose_morphisms,
    dual_algebra,
    identity_morphism,
    jet_algebra,
    mixed_algebra,
    morphism_from_generator_images,
    parse_algebra_text,
    present_algebra,
    tensor,
    tensor_of_morphisms,
    validate_algebra,
    validate_morphism,
)
from .errors import WeilError
from .expr import (
    SmoothMap,
    parse_expr,
    parse_function_file,
    parse_smooth_map,
    tuple_map,
)
from .functor import (
    JetTable,
    eval_map,
    fd_oracle,
    flatten_nested,
    jet,
    lift_eval,
    nest_iso,
    nest_iso_inv,
    nested_inputs,
    partials,
)
from .laws import LawInstance, LawReport, enumerate_laws, run_all, run_law
from .monomial import Monomial
from .numbers import (
    WeilNumber,
    constant,
    generator,
    invert,
    number,
    push_along,
    variable,
)
from .primitives import PRIMITIVES, apply_primitive
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
