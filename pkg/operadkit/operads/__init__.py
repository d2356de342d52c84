"""Colored operads, their maps, law checks and a small library."""

from operadkit.operads.category import (
    EnrichedCategory,
    category_operad,
    check_category,
    is_trivial_category,
    underlying_category,
)
from operadkit.operads.checks import CheckReport, LawFailure, basis, check_operad, inner_choices, outer_elements
from operadkit.operads.library import (
    COM_LABEL,
    MODULE_COLORS,
    ActionTable,
    Composition,
    OperadTables,
    ass,
    close_profiles,
    com,
    custom_from_tables,
    entry_from_table,
    linearize_operad,
    mcom,
    module_profiles,
    mp,
    operad_to_tables,
    profile_operad,
    random_profile_operad,
    sequence_from_tables,
    sequence_to_tables,
)
from operadkit.operads.maps import (
    OperadMap,
    check_operad_map,
    compose_operad_maps,
    identity_map,
    operad_maps_equal,
    phi,
    psi,
    rho,
)
from operadkit.operads.operad import (
    NullaryOperad,
    Operad,
    concatenated_inputs,
    free_on_nullary,
    is_one_skeletal,
    nullary_operad,
    offsets,
    one_skeleton,
)
