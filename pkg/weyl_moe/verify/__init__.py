from weyl_moe.verify.decomposition import (
    check_hypothesis,
    in_region,
    region_upper,
    decompose_lambda,
    decomposition_report,
)
from weyl_moe.verify.theorem import (
    BoundEvaluator,
    conditional_operators,
    theorem_evaluator,
    theorem2_evaluator,
    theorem_rhs,
    theorem_margin,
    theorem2_margin,
    monotonicity_margin,
    random_composite_state,
    random_theorem_batch,
    random_theorem2_batch,
)
from weyl_moe.verify.additivity import additivity_gap, chi_weyl_check
