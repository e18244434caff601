"""Direction combinatorics and the Saito-module valuation oracle."""

from .combinatorics import (
    Direction, DirectionComponent, DeltaPData, NumberedDualTree, PropertyReport, PropertyViolation,
    attachments, check_combinatorial_properties, delta_p_data, delta_sequence, foliation_mult_identity,
    n1_from_pair, numbered_dual_tree, p1_formula, p1_table, p_vector, v_vector,
)
from .oracle import (
    BoundExhausted, CriterionReport, GenericMinimumReport, OneForm, SaitoBasis, SaitoResult,
    check_saito_criterion, complementary_form, default_bounds, is_tangent, min_saito_valuation,
    min_saito_valuation_equation, min_saito_valuation_param, monomial_witness, saito_basis,
    verify_generic_minimum,
)
