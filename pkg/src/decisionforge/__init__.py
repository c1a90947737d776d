"""Decision-analysis toolkit for staged product development.

The pieces mirror how a selection session actually runs: screen a field of
opportunities through a pass/fail funnel, trace customer needs to measurable
metrics and benchmark competitors against them, set marginal/ideal targets,
enumerate concepts from a morphological chart, narrow them with relative
screening and weighted scoring, audit every declared worksheet result, and
probe how stable the winner is under weight changes.
"""

from .constraints import (
    AtLeast,
    AtMost,
    Between,
    Exactly,
    OneOf,
    Qualitative,
    interval,
    is_numeric,
    parse_constraint,
    parse_measurement,
    render_constraint,
    satisfies,
)
from .errors import (
    ConstraintError,
    DecisionForgeError,
    MorphError,
    PersistenceError,
    SelectionError,
    SensitivityError,
    TournamentError,
)
from .model import (
    BenchmarkProduct,
    Concept,
    DeclaredScoreRow,
    DeclaredScreenRow,
    Funnel,
    Metric,
    MorphChart,
    MorphColumn,
    Need,
    NeedMetricLink,
    Opportunity,
    Project,
    PughMatrix,
    ScoringMatrix,
    Stage,
    TargetSpec,
    ValidationIssue,
    Verdict,
    WeightedCriterion,
    validate_project,
)
from .morpho import combination_count, define_concept, enumerate_concepts
from .needspec import (
    benchmark_table,
    coverage_report,
    project_consistency_report,
    target_consistency_report,
)
from .numbers import ExactDecimal, decimal_sum, exact_number, format_exact, to_fraction
from .persistence import load_project, project_from_json, project_to_json, save_project
from .report import generate_report
from .sample import sample_project
from .selection import (
    AuditFinding,
    ScoreResult,
    ScoreRow,
    ScreenResult,
    ScreenRow,
    audit,
    combine_concepts,
    competition_rank,
    derive_pugh,
    describe_finding,
    score,
    screen,
)
from .sensitivity import (
    CrossingPoint,
    CrossingReport,
    TrajectoryPoint,
    all_crossings,
    apply_perturbation,
    crossing_points,
    rank_trajectory,
)
from .tournament import (
    Discrepancy,
    FunnelReport,
    StageOutcome,
    compare_policies,
    evaluate_row,
    evaluate_stage,
    run_funnel,
)

__version__ = "1.0.0"

__all__ = [
    "AtLeast",
    "AtMost",
    "AuditFinding",
    "BenchmarkProduct",
    "Between",
    "Concept",
    "ConstraintError",
    "CrossingPoint",
    "CrossingReport",
    "DeclaredScoreRow",
    "DeclaredScreenRow",
    "DecisionForgeError",
    "Discrepancy",
    "ExactDecimal",
    "Exactly",
    "Funnel",
    "FunnelReport",
    "Metric",
    "MorphChart",
    "MorphColumn",
    "MorphError",
    "Need",
    "NeedMetricLink",
    "OneOf",
    "Opportunity",
    "PersistenceError",
    "Project",
    "PughMatrix",
    "Qualitative",
    "ScoreResult",
    "ScoreRow",
    "ScoringMatrix",
    "ScreenResult",
    "ScreenRow",
    "SelectionError",
    "SensitivityError",
    "Stage",
    "StageOutcome",
    "TargetSpec",
    "TournamentError",
    "TrajectoryPoint",
    "ValidationIssue",
    "Verdict",
    "WeightedCriterion",
    "all_crossings",
    "apply_perturbation",
    "audit",
    "benchmark_table",
    "combination_count",
    "combine_concepts",
    "competition_rank",
    "coverage_report",
    "crossing_points",
    "decimal_sum",
    "define_concept",
    "derive_pugh",
    "describe_finding",
    "enumerate_concepts",
    "evaluate_row",
    "evaluate_stage",
    "exact_number",
    "format_exact",
    "generate_report",
    "interval",
    "is_numeric",
    "load_project",
    "parse_constraint",
    "parse_measurement",
    "project_consistency_report",
    "project_from_json",
    "project_to_json",
    "rank_trajectory",
    "render_constraint",
    "run_funnel",
    "sample_project",
    "satisfies",
    "save_project",
    "score",
    "screen",
    "target_consistency_report",
    "to_fraction",
    "validate_project",
]
