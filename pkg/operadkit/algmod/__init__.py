"""Algebras, modules, enveloping operads and the skeletal filtration of free algebras."""

from operadkit.algmod.algebra import (
    Algebra,
    AlgebraMap,
    AugmentedAlgebra,
    action_table,
    algebra_maps,
    algebra_maps_equal,
    algebras_agree,
    augment,
    check_algebra,
    check_algebra_map,
    compose_algebra_maps,
    enumerate_algebras,
    identity_algebra_map,
    initial_algebra,
    multilinear,
    restrict_algebra,
    validated,
)
from operadkit.algmod.envelope import (
    Envelope,
    algebra_under,
    enveloping_category,
    enveloping_operad,
    envelope_algebra,
    tautological_algebra,
)
from operadkit.algmod.filtration import (
    AttachingSquare,
    CoinvariantSum,
    FiltrationStage,
    OracleComparison,
    augmentation_failure,
    compare_with_oracle,
    free_algebra_filtration,
    free_algebra_stage,
)
from operadkit.algmod.identifications import compute1_check, compute2_check, lq_n_pushout_check, r_maps
from operadkit.algmod.library import (
    colored_cyclic_monoid,
    cyclic_monoid,
    dual_numbers,
    matrix_algebra,
    monoid_algebra,
    structure_constant_algebra,
    truncated_word_monoid,
)
from operadkit.algmod.modules import (
    ModuleOverAlgebra,
    check_module,
    corrupted_module,
    functor_operad,
    functor_to_module,
    module_from_algebra,
    module_to_functor,
    modules_agree,
)
from operadkit.algmod.oalgebra import (
    OAlgebra,
    free_algebra_stage_oracle,
    pointed_oalgebra,
    skeleton_right_module,
    trivial_oalgebra,
)
from operadkit.algmod.qobject import QObject, compare_with_pushout_product, proper_subsets, q_object

__all__ = [
    "Algebra",
    "AlgebraMap",
    "AttachingSquare",
    "AugmentedAlgebra",
    "CoinvariantSum",
    "Envelope",
    "FiltrationStage",
    "ModuleOverAlgebra",
    "OAlgebra",
    "OracleComparison",
    "QObject",
    "action_table",
    "algebra_maps",
    "algebra_maps_equal",
    "algebra_under",
    "algebras_agree",
    "augment",
    "augmentation_failure",
    "check_algebra",
    "check_algebra_map",
    "check_module",
    "compare_with_oracle",
    "compare_with_pushout_product",
    "compose_algebra_maps",
    "compute1_check",
    "compute2_check",
    "colored_cyclic_monoid",
    "corrupted_module",
    "cyclic_monoid",
    "dual_numbers",
    "enumerate_algebras",
    "envelope_algebra",
    "enveloping_category",
    "enveloping_operad",
    "free_algebra_filtration",
    "free_algebra_stage",
    "free_algebra_stage_oracle",
    "functor_operad",
    "functor_to_module",
    "identity_algebra_map",
    "initial_algebra",
    "lq_n_pushout_check",
    "matrix_algebra",
    "module_from_algebra",
    "module_to_functor",
    "modules_agree",
    "monoid_algebra",
    "multilinear",
    "pointed_oalgebra",
    "proper_subsets",
    "q_object",
    "r_maps",
    "restrict_algebra",
    "skeleton_right_module",
    "structure_constant_algebra",
    "tautological_algebra",
    "trivial_oalgebra",
    "truncated_word_monoid",
    "validated",
]
