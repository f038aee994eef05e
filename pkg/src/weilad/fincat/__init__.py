"""Finite categories, set-valued functors, and exhaustive structural checks.

This subpackage realizes the functor-category constructions on finite data,
where every universal property can be verified by brute force: pointwise
exponentials and their currying bijection, slice exponentials over a base,
the sliced tangent-style functor cut out by an equalizer, comparison
morphisms for precomposition endofunctors, and the slice-flattening
equivalence behind localization.
"""

from .core import (
    Arrow,
    EndofunctorData,
    FinCat,
    FinEndofunctor,
    FinFunctor,
    FinNatTrans,
    NatFamily,
    SlicedObject,
    compose_nat_families,
    compose_nat_trans,
    enumerate_nat_trans,
    enumerate_slice_morphisms,
    equal_functors,
    fincat,
    finfunctor,
    identity_endofunctor,
    identity_endofunctor_data,
    identity_nat_family,
    identity_nat_trans,
    is_slice_morphism,
    label_key,
    resolve_max_enum,
    validate_category,
    validate_endofunctor,
    validate_endofunctor_data,
    validate_functor,
    validate_nat_family,
    validate_nat_trans,
    validate_sliced,
)
from .limits import (
    equalizer,
    fibered_product,
    initial_functor,
    pairing,
    product,
    terminal_functor,
    terminal_sliced,
)
from .exponential import curry_transform, exponential, verify_ccc
from .slices import (
    IteratedSliceObject,
    curry_slice,
    flatten_from,
    flatten_to,
    is_iterated_object,
    slice_exponential,
    sliced_T,
    sliced_T_morphism,
    sliced_alpha,
    verify_flatten,
    verify_slice_ccc,
)
from .weil_action import (
    alpha_of,
    compose_endofunctors,
    exp_compat_check,
    exp_compat_check_slice,
    localization_check,
    precompose,
    validate_connecting,
    whisker,
)
from .io import Instance, load_instance, load_instance_file

__all__ = [name for name in dir() if not name.startswith("_")]
