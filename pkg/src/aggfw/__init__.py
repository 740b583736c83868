"""Frank-Wolfe solvers for large-scale nonconvex aggregative optimization.

The package implements the relaxation-by-randomization approach: the
per-agent decisions of an aggregative problem are lifted to finitely
supported probability measures, the resulting convex problem is solved
by Frank-Wolfe (deterministic or stochastic), and concrete decisions are
recovered by sampling.  Closed-form gap and tail certificates accompany
both solvers.
"""

from .bounds import (
    ProblemConstants,
    compute_constants,
    gap_bound_basic,
    gap_bound_refined,
    mcdiarmid_tail,
    mcdiarmid_variance_tail,
    nonconvexity_measure,
    sample_size_for_confidence,
    sfw_tail,
    sfw_tail_constants,
    variance_proxy,
)
from .frank_wolfe import (
    CanonicalStep,
    FwRecord,
    FwSelectionResult,
    LineSearchFwStep,
    LineSearchSfwStep,
    dual_gap_beta,
    fw_run,
    fw_with_selection,
    quadratic_curvature,
)
from .measures import (
    DiscreteMeasure,
    MeasureProfile,
    contribution_variance,
    mix,
    relaxed_objective,
    sample_profile,
    select_best,
    total_contribution_variance,
)
from .miqp import (
    BalancedSignsInstance,
    MiqpInstance,
    ReferenceSolverError,
    RelaxedOptimum,
    bernoulli_profile,
    generate,
    load_instance,
    reference_relaxed_optimum,
    save_instance,
)
from .oracles import (
    BernoulliIncrementReport,
    BruteForceResult,
    RecursionHypothesisError,
    brute_force_optimum,
    check_recursion_bound,
    mc_check_bernoulli_increment,
)
from .problems import (
    Aggregate,
    DecisionProfile,
    ProblemInstance,
    aggregate_of,
    linearized_best_response,
    objective,
    zero_gradient_profile,
)
from .stochastic_fw import (
    ConstantSchedule,
    QuadraticSchedule,
    SfwRecord,
    StoppingStep,
    bernoulli_matrix,
    canonical_active_expectation,
    sfw_run,
    sfw_step,
    stopping_time_run,
    stopping_time_step,
)

__version__ = "0.1.0"
