"""Swap-structure and twist-structure semantics for logics of formal inconsistency."""

from .boolalg import BAElement, FiniteBooleanAlgebra, MixedAlgebraError, powerset_algebra, two
from .fosem import (FOStructure, FOValuation, canonicalize, check_standard_equality,
                    default_equality, eval_term, fo_consequence, ground_closure, load_model,
                    model_from_json, possible_values, qlfi1_consequence, qlfi1_interpret, qmbc_consequence,
                    qmbc_eq_filter, qmbc_valuations)
from .hilbert import (Axiom, Derivation, ExistsIn, ForallIn, MP, Premise, check_derivation,
                      check_step, match_axiom, random_derivation)
from .parser import ParseError, parse_formula, parse_term
from .propsem import (PropValuation, bival_consequence, bival_to_valuation, check_bivaluation,
                      closure, is_valid, prop_consequence)
from .search import Verdict
from .swap import Snapshot, SwapNmatrix, full_swap, m5, m5_values, sub_swap, swap_domain
from .syntax import (CaptureError, Signature, derived_bottom, derived_strong_neg, free_vars, iff,
                     is_free_for, is_variant, partial_replace_ok, substitute, universal_closure)
from .twist import (TwistMatrix, TwistPair, eval_twist, lfi1_consequence, lfi1_matrix,
                    lfi1_value, twist_domain, twist_matrix)
