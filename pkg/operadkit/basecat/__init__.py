"""Exact base categories FinSet, VectQ and ChainQ with their finite colimits."""

from operadkit.basecat.actions import (
    GroupAction,
    action_from_function,
    action_from_generators,
    action_signature,
    actions_isomorphic,
    empty_action,
    groupoid_colimit,
    induced_action,
    orbit_count,
    trivial_action,
)
from operadkit.basecat.colimits import (
    IteratedPushoutProduct,
    Pushout,
    PushoutProduct,
    Quotient,
    braiding,
    coequalizer,
    iterated_pushout_product,
    pushout,
    pushout_product,
    quotient_by_relations,
)
from operadkit.basecat.homology import (
    homology,
    homology_table,
    induced_homology_rank,
    is_acyclic,
    is_quasi_iso,
    mapping_cone,
    quasi_iso_failure,
    shift,
    shift_morphism,
)
from operadkit.basecat.objects import (
    ONE,
    BaseMorphism,
    BaseObject,
    Coproduct,
    Label,
    Vector,
    add_into,
    basis_vector,
    chainq,
    chainq_from_dims,
    compose,
    compose_all,
    coproduct,
    coproduct_of_morphisms,
    distribute,
    finset,
    from_function,
    from_images,
    identity,
    initial_object,
    inverse,
    is_isomorphism,
    linearize,
    linearize_morphism,
    morphisms_equal,
    permute_factors,
    same_object,
    scale_vector,
    section_of_surjection,
    tensor,
    tensor_many,
    tensor_morphisms,
    unit_object,
    vectq,
    zero_morphism,
)
