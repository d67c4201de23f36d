"""Exact arithmetic for Carlitz/Anderson function-field special values.

Computes exp_C, log_C, the Carlitz period, the Omega and L_alpha series
with certified tails, verifies Frobenius-difference functional equations
and rigid-analytic trivializations of motive presentations, and searches
for linear relations among Carlitz logarithms at finite precision.
"""

from .analytic import (build_L_alpha, build_omega, carlitz_action, carlitz_exp,
                       carlitz_log, pi_tilde)
from .errors import CarlitzError
from .fields import (EXACT, FieldConfig, LocalElement, NormInfo, local_arith,
                     local_norm, local_twist)
from .motives import (MotivePresentation, TPolyMatrix, check_anderson_det,
                      check_morphism, check_trivialization, dual_presentation,
                      make_carlitz_power, make_one, make_X, tensor_presentation)
from .newton import (NewtonPolygon, ReductionResult, division_points,
                     newton_polygon, reduce_log, torsion_points)
from .relations import (RelationReport, RelationVector, SearchBounds,
                        certify_relation, evaluate_relation_at_theta,
                        gamma_report, search_relations)
from .series import (TailBound, TateSeries, tate_arith, tate_eval,
                     tate_eval_entire, tate_invert_unit, tate_twist)
from .tpoly import TPoly

__version__ = "0.1.0"

__all__ = [
    "EXACT", "CarlitzError", "FieldConfig", "LocalElement", "NormInfo",
    "MotivePresentation", "NewtonPolygon", "ReductionResult",
    "RelationReport", "RelationVector", "SearchBounds", "TailBound",
    "TateSeries", "TPoly", "TPolyMatrix",
    "build_L_alpha", "build_omega", "carlitz_action", "carlitz_exp",
    "carlitz_log", "certify_relation", "check_anderson_det", "check_morphism",
    "check_trivialization", "division_points", "dual_presentation",
    "evaluate_relation_at_theta", "gamma_report", "local_arith", "local_norm",
    "local_twist", "make_carlitz_power", "make_one", "make_X",
    "newton_polygon", "pi_tilde", "reduce_log", "search_relations",
    "tate_arith", "tate_eval", "tate_eval_entire", "tate_invert_unit",
    "tate_twist", "tensor_presentation", "torsion_points",
]
