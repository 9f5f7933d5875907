"""Exact solver for a screening game between a receiver and strategic senders.

A receiver commits to how reports will be decoded; senders of hidden type
report whatever maximizes their own payoff. The package computes which
questionnaires survive that pressure, the worst-case number of truthfully
recovered sequences, and per-letter rate bounds from confusability graphs.
"""

from .model import (
    BudgetExceededError,
    EXAMPLE1_TEXT,
    HONEST,
    Model,
    ModelError,
    ModelSyntaxError,
    OTHER,
    classify_type,
    enumerate_sequences,
    example_model,
    format_sequence,
    parse_model,
    sequence_index,
    sequence_utility,
    serialize_model,
)
from .graph import (
    IndependentSetResult,
    SenderGraph,
    build_sender_graph,
    export_dot,
    independent_set_members,
    max_independent_set,
    union_graph,
)
from .equilibrium import (
    EquilibriumResult,
    Questionnaire,
    ReceiverStrategy,
    canonical_strategy,
    evaluate_questionnaire,
    receiver_objective,
    reduce_closure,
    solve_exact,
    solve_heuristic,
    truthful_subset,
)
from .gameplay import (
    BestReportOutcome,
    CrossCheckResult,
    RecoveryReport,
    SimulationOutcome,
    TIE_POLICIES,
    TableStrategy,
    best_reports,
    cross_check_equivalence,
    optimistic_recovery_set,
    recovery_report,
    robust_recovery_set,
    simulate,
    table_strategy,
    worst_case_recovery,
)
from .rate import (
    AsymptoticReport,
    FeketeWitness,
    RateBounds,
    asymptotic_bounds,
    extraction_rate,
    fekete_check,
    finite_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticReport",
    "BestReportOutcome",
    "BudgetExceededError",
    "CrossCheckResult",
    "EXAMPLE1_TEXT",
    "EquilibriumResult",
    "FeketeWitness",
    "HONEST",
    "IndependentSetResult",
    "Model",
    "ModelError",
    "ModelSyntaxError",
    "OTHER",
    "Questionnaire",
    "RateBounds",
    "ReceiverStrategy",
    "RecoveryReport",
    "SenderGraph",
    "SimulationOutcome",
    "TIE_POLICIES",
    "TableStrategy",
    "asymptotic_bounds",
    "best_reports",
    "build_sender_graph",
    "canonical_strategy",
    "classify_type",
    "cross_check_equivalence",
    "enumerate_sequences",
    "evaluate_questionnaire",
    "example_model",
    "export_dot",
    "extraction_rate",
    "fekete_check",
    "finite_bounds",
    "format_sequence",
    "independent_set_members",
    "max_independent_set",
    "optimistic_recovery_set",
    "parse_model",
    "receiver_objective",
    "recovery_report",
    "reduce_closure",
    "robust_recovery_set",
    "sequence_index",
    "sequence_utility",
    "serialize_model",
    "simulate",
    "solve_exact",
    "solve_heuristic",
    "table_strategy",
    "truthful_subset",
    "union_graph",
    "worst_case_recovery",
]
