"""Prime fields, enumerated finite groups, actions and coset counting."""

from .actions import (
    GroupAction,
    action_from_function,
    action_via_left_factor,
    default_action,
    make_product,
    make_semidirect,
    multiplication_action,
    parse_group,
    standard_action,
    trivial_action,
)
from .field import PrimeField, is_prime, make_prime_field
from .groups import (
    DEFAULT_ORDER_CAP,
    PSL2,
    SL2,
    AffineGroup,
    CyclicGroup,
    DirectProduct,
    FiniteGroup,
    SemidirectProduct,
    Subgroup,
    UnitGroup,
    VectorGroup,
    expected_order,
    generating_indices,
    make_group,
    psl2_canonical,
    verify_group_axioms,
)
from .subgroups import (
    GeneratingSet,
    double_coset_count,
    element_order,
    generated_subgroup,
    induced_character_norm,
    left_coset_labels,
    orbit_count,
    orbit_labels,
    psl2_projection,
    quotient_preimage_sl2,
)
