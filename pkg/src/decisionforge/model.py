"""Document model for a staged product-development decision record.

A :class:`Project` is a plain data snapshot of everything a team wrote down
while narrowing a field of opportunities to a concept worth developing:
screened opportunity lists, customer needs and measurable metrics, the links
between them, competitor benchmarks, target constraints, morphological charts
with selected concepts, and the screening / scoring matrices used to pick a
winner.  Every declared outcome (pass counts, weighted totals, ranks) is kept
verbatim next to its inputs so the audit engine can recompute and compare.

Nothing in this module computes; it only holds and validates structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .constraints import Constraint
from .numbers import ExactDecimal, format_exact

Mark = str  # "pass" | "fail" | "unknown"
MARKS = ("pass", "fail", "unknown")
UNKNOWN_POLICIES = ("strict-fail", "lenient-pass", "require-explicit")

Weight = Union[ExactDecimal, Fraction]


@dataclass(frozen=True)
class ValidationIssue:
    """One structural problem found in a project.

    ``location`` is a short path to the offending element, e.g.
    ``scoring[table-6].criterion[cost]``.
    """

    severity: str  # "error"
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


@dataclass(frozen=True)
class Opportunity:
    id: str
    name: str
    description: str = ""


@dataclass(frozen=True)
class Stage:
    """One gate of an opportunity funnel.

    ``declared_count`` is the number of survivors the team wrote down for the
    stage, kept for comparison against the recomputed count.
    """

    name: str
    criteria: tuple[str, ...]
    unknown_policy: str = "require-explicit"
    declared_count: Optional[int] = None


@dataclass(frozen=True)
class Verdict:
    """One opportunity's row in one stage: per-criterion marks plus the
    outcome the team declared for the row (if any)."""

    opportunity_id: str
    marks: Mapping[str, Mark]
    declared: Optional[str] = None  # "pass" | "fail"


@dataclass(frozen=True)
class Funnel:
    stages: tuple[Stage, ...]
    verdicts: Mapping[str, tuple[Verdict, ...]]  # stage name -> rows


@dataclass(frozen=True)
class Need:
    """A customer need: the verbatim interview statement, its interpreted
    form, an optional group, and an optional 1-5 importance."""

    id: str
    interpreted: str
    raw_statement: str = ""
    group: Optional[str] = None
    importance: Optional[int] = None


@dataclass(frozen=True)
class Metric:
    id: str
    ordinal: int
    name: str
    unit: str
    importance: int


@dataclass(frozen=True)
class NeedMetricLink:
    need_id: str
    metric_id: str


@dataclass(frozen=True)
class BenchmarkProduct:
    """A competitor (or in-house reference) measured and rated against the
    metric catalog.  ``metric_values`` holds measured values as parsed
    constraints (a single number, a range, or verbatim qualitative text);
    ``satisfaction`` holds 1-5 perceived-satisfaction ratings.  Either
    mapping may be sparse: a missing metric simply was not assessed."""

    id: str
    name: str
    metric_values: Mapping[str, Constraint] = field(default_factory=dict)
    satisfaction: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TargetSpec:
    """Marginal and ideal acceptance constraints for one metric."""

    metric_id: str
    marginal: Constraint
    ideal: Constraint


@dataclass(frozen=True)
class MorphColumn:
    name: str
    fragments: tuple[str, ...]


@dataclass(frozen=True)
class MorphChart:
    id: str
    columns: tuple[MorphColumn, ...]


@dataclass(frozen=True)
class Concept:
    """A named combination: one fragment chosen from every chart column."""

    id: str
    name: str
    chart_id: str
    selection: Mapping[str, str]  # column name -> fragment label


@dataclass(frozen=True)
class DeclaredScreenRow:
    """Per-concept tallies as written in a screening worksheet."""

    pluses: Optional[int] = None
    sames: Optional[int] = None
    minuses: Optional[int] = None
    net: Optional[int] = None
    rank: Optional[int] = None
    continue_: Optional[bool] = None


@dataclass(frozen=True)
class PughMatrix:
    """Relative screening grid: every concept judged better (+1), same (0),
    or worse (-1) than the reference concept on each criterion."""

    id: str
    criteria: tuple[str, ...]
    concept_ids: tuple[str, ...]
    reference_id: str
    marks: Mapping[str, Mapping[str, int]]  # criterion -> concept id -> -1|0|+1
    declared: Mapping[str, DeclaredScreenRow] = field(default_factory=dict)


@dataclass(frozen=True)
class WeightedCriterion:
    """A scoring criterion.  Criteria may form a tree: a criterion with a
    ``parent`` contributes to that parent's weight (children sum to the
    parent), ratings are carried by leaves only, and the root weights sum
    to 1.  A flat list is the common case: every criterion is its own root
    and leaf.

    ``weight`` may be left unset while a matrix is still being structured;
    weight-sum checks apply only once at least one weight is present, and
    scoring demands a complete set."""

    id: str
    name: str
    weight: Optional[Weight] = None
    parent: Optional[str] = None


@dataclass(frozen=True)
class DeclaredScoreRow:
    """Per-concept results as written in a scoring worksheet."""

    weighted: Mapping[str, Weight] = field(default_factory=dict)  # criterion id -> cell
    total: Optional[Weight] = None
    rank: Optional[int] = None
    decision: Optional[str] = None


@dataclass(frozen=True)
class ScoringMatrix:
    id: str
    criteria: tuple[WeightedCriterion, ...]
    concept_ids: tuple[str, ...]
    ratings: Mapping[str, Mapping[str, int]]  # leaf criterion id -> concept id -> 1..5
    declared: Mapping[str, DeclaredScoreRow] = field(default_factory=dict)

    def criterion(self, criterion_id: str) -> WeightedCriterion:
        for criterion in self.criteria:
            if criterion.id == criterion_id:
                return criterion
        raise KeyError(f"no criterion with id {criterion_id!r}")

    def root_criteria(self) -> tuple[WeightedCriterion, ...]:
        return tuple(c for c in self.criteria if c.parent is None)

    def leaf_criteria(self) -> tuple[WeightedCriterion, ...]:
        parents = {c.parent for c in self.criteria if c.parent is not None}
        return tuple(c for c in self.criteria if c.id not in parents)

    def leaves_under(self, criterion_id: str) -> tuple[WeightedCriterion, ...]:
        children: dict[str, list[WeightedCriterion]] = {}
        for criterion in self.criteria:
            if criterion.parent is not None:
                children.setdefault(criterion.parent, []).append(criterion)
        out: list[WeightedCriterion] = []

        def walk(cid: str) -> None:
            kids = children.get(cid)
            if not kids:
                out.append(self.criterion(cid))
                return
            for kid in kids:
                walk(kid.id)

        walk(criterion_id)
        return tuple(out)


@dataclass(frozen=True)
class Project:
    name: str
    description: str = ""
    metadata: Mapping[str, str] = field(default_factory=dict)
    opportunities: tuple[Opportunity, ...] = ()
    funnel: Optional[Funnel] = None
    needs: tuple[Need, ...] = ()
    metrics: tuple[Metric, ...] = ()
    links: tuple[NeedMetricLink, ...] = ()
    benchmarks: tuple[BenchmarkProduct, ...] = ()
    target_specs: tuple[TargetSpec, ...] = ()
    charts: tuple[MorphChart, ...] = ()
    concepts: tuple[Concept, ...] = ()
    pugh_matrices: tuple[PughMatrix, ...] = ()
    scoring_matrices: tuple[ScoringMatrix, ...] = ()

    def opportunity(self, opportunity_id: str) -> Opportunity:
        return _lookup(self.opportunities, opportunity_id, "opportunity")

    def need(self, need_id: str) -> Need:
        return _lookup(self.needs, need_id, "need")

    def metric(self, metric_id: str) -> Metric:
        return _lookup(self.metrics, metric_id, "metric")

    def chart(self, chart_id: str) -> MorphChart:
        return _lookup(self.charts, chart_id, "chart")

    def concept(self, concept_id: str) -> Concept:
        return _lookup(self.concepts, concept_id, "concept")

    def pugh_matrix(self, matrix_id: str) -> PughMatrix:
        return _lookup(self.pugh_matrices, matrix_id, "screening matrix")

    def scoring_matrix(self, matrix_id: str) -> ScoringMatrix:
        return _lookup(self.scoring_matrices, matrix_id, "scoring matrix")


def _lookup(items: Sequence, item_id: str, kind: str):
    for item in items:
        if item.id == item_id:
            return item
    raise KeyError(f"no {kind} with id {item_id!r}")


def _error(issues: list[ValidationIssue], location: str, message: str) -> None:
    issues.append(ValidationIssue(severity="error", location=location, message=message))


def _check_unique(
    issues: list[ValidationIssue], items: Sequence, kind: str, location: str
) -> None:
    seen: set[str] = set()
    for item in items:
        if item.id in seen:
            _error(issues, f"{location}[{item.id}]", f"duplicate {kind} id")
        seen.add(item.id)


def weight_fraction(weight: Weight) -> Fraction:
    return weight.as_fraction() if isinstance(weight, ExactDecimal) else Fraction(weight)


def _weight_or_issue(
    issues: list[ValidationIssue], location: str, weight: object
) -> Optional[Fraction]:
    """Coerce a declared weight, reporting (not raising) when it is not a
    number.  Returns None for absent or unusable weights."""
    if weight is None:
        return None
    try:
        fraction = weight_fraction(weight)  # type: ignore[arg-type]
    except (TypeError, ValueError, ZeroDivisionError):
        _error(issues, location, f"weight {weight!r} is not a number")
        return None
    if fraction < 0:
        _error(issues, location, f"weight {fraction} is negative")
    return fraction


def _validate_funnel(issues: list[ValidationIssue], project: Project) -> None:
    funnel = project.funnel
    assert funnel is not None
    opportunity_ids = {o.id for o in project.opportunities}
    stage_names: set[str] = set()
    for stage in funnel.stages:
        loc = f"funnel.stage[{stage.name}]"
        if stage.name in stage_names:
            _error(issues, loc, "duplicate stage name")
        stage_names.add(stage.name)
        if stage.unknown_policy not in UNKNOWN_POLICIES:
            _error(
                issues,
                loc,
                f"unknown-mark policy {stage.unknown_policy!r} is not one of "
                "strict-fail, lenient-pass, require-explicit",
            )
        if not stage.criteria:
            _error(issues, loc, "stage has no criteria")
    for stage_name, rows in funnel.verdicts.items():
        if stage_name not in stage_names:
            _error(
                issues,
                f"funnel.verdicts[{stage_name}]",
                "rows reference an undefined stage",
            )
            continue
        stage = next(s for s in funnel.stages if s.name == stage_name)
        seen_rows: set[str] = set()
        for row in rows:
            loc = f"funnel.stage[{stage_name}].row[{row.opportunity_id}]"
            if row.opportunity_id not in opportunity_ids:
                _error(issues, loc, "row references an unknown opportunity")
            if row.opportunity_id in seen_rows:
                _error(issues, loc, "duplicate row for this opportunity")
            seen_rows.add(row.opportunity_id)
            for criterion, mark in row.marks.items():
                if criterion not in stage.criteria:
                    _error(issues, loc, f"marks unknown criterion {criterion!r}")
                if mark not in MARKS:
                    _error(
                        issues,
                        loc,
                        f"invalid mark {mark!r} for {criterion!r} "
                        "(expected pass, fail, or unknown)",
                    )
            if row.declared is not None and row.declared not in ("pass", "fail"):
                _error(
                    issues, loc, f"declares {row.declared!r} (expected pass or fail)"
                )


def _validate_needs_and_metrics(
    issues: list[ValidationIssue], project: Project
) -> None:
    need_ids = {n.id for n in project.needs}
    metric_ids = {m.id for m in project.metrics}

    for need in project.needs:
        if need.importance is not None and not 1 <= need.importance <= 5:
            _error(
                issues,
                f"needs[{need.id}]",
                f"importance {need.importance!r} outside 1..5",
            )
    ordinals: set[int] = set()
    for metric in project.metrics:
        loc = f"metrics[{metric.id}]"
        if metric.ordinal in ordinals:
            _error(issues, loc, f"duplicate ordinal {metric.ordinal}")
        ordinals.add(metric.ordinal)
        if not 1 <= metric.importance <= 5:
            _error(issues, loc, f"importance {metric.importance!r} outside 1..5")

    for link in project.links:
        loc = f"links[{link.need_id}->{link.metric_id}]"
        if link.need_id not in need_ids:
            _error(issues, loc, f"references unknown need {link.need_id!r}")
        if link.metric_id not in metric_ids:
            _error(issues, loc, f"references unknown metric {link.metric_id!r}")

    for product in project.benchmarks:
        loc = f"benchmarks[{product.id}]"
        for metric_id, dots in product.satisfaction.items():
            if metric_id not in metric_ids:
                _error(issues, loc, f"rates unknown metric {metric_id!r}")
            if not isinstance(dots, int) or not 1 <= dots <= 5:
                _error(
                    issues,
                    loc,
                    f"metric {metric_id!r} satisfaction {dots!r} outside 1..5",
                )
        for metric_id in product.metric_values:
            if metric_id not in metric_ids:
                _error(issues, loc, f"measures unknown metric {metric_id!r}")

    spec_metrics: set[str] = set()
    for spec in project.target_specs:
        loc = f"targets[{spec.metric_id}]"
        if spec.metric_id not in metric_ids:
            _error(issues, loc, "references unknown metric")
        if spec.metric_id in spec_metrics:
            _error(issues, loc, "more than one target for this metric")
        spec_metrics.add(spec.metric_id)


def _validate_morphology(issues: list[ValidationIssue], project: Project) -> None:
    chart_ids = {c.id for c in project.charts}
    for chart in project.charts:
        names: set[str] = set()
        if not chart.columns:
            _error(issues, f"charts[{chart.id}]", "chart has no columns")
        for column in chart.columns:
            loc = f"charts[{chart.id}].column[{column.name}]"
            if column.name in names:
                _error(issues, loc, "column name repeated")
            names.add(column.name)
            if not column.fragments:
                _error(issues, loc, "column has no fragments")
            if len(set(column.fragments)) != len(column.fragments):
                _error(issues, loc, "column repeats a fragment label")

    for concept in project.concepts:
        loc = f"concepts[{concept.id}]"
        if concept.chart_id not in chart_ids:
            _error(issues, loc, f"references unknown chart {concept.chart_id!r}")
            continue
        chart = next(c for c in project.charts if c.id == concept.chart_id)
        columns = {column.name: column.fragments for column in chart.columns}
        for column_name, label in concept.selection.items():
            if column_name not in columns:
                _error(issues, loc, f"selects from unknown column {column_name!r}")
            elif label not in columns[column_name]:
                _error(
                    issues,
                    loc,
                    f"selects {label!r} which is not in column {column_name!r}",
                )
        for column_name in columns:
            if column_name not in concept.selection:
                _error(issues, loc, f"leaves column {column_name!r} unselected")


def _validate_pugh(issues: list[ValidationIssue], project: Project) -> None:
    concept_ids = {c.id for c in project.concepts}
    for matrix in project.pugh_matrices:
        base = f"screening[{matrix.id}]"
        if matrix.reference_id not in matrix.concept_ids:
            _error(
                issues,
                base,
                f"reference {matrix.reference_id!r} is not among its concepts",
            )
        for cid in matrix.concept_ids:
            if cid not in concept_ids:
                _error(issues, base, f"references unknown concept {cid!r}")
        for criterion in matrix.criteria:
            loc = f"{base}.criterion[{criterion}]"
            row = matrix.marks.get(criterion)
            if row is None:
                _error(issues, loc, "missing marks for this criterion")
                continue
            for cid in matrix.concept_ids:
                mark = row.get(cid)
                if mark not in (-1, 0, 1):
                    _error(
                        issues,
                        loc,
                        f"concept {cid!r} mark {mark!r} is not -1, 0, or +1",
                    )
        for criterion in matrix.marks:
            if criterion not in matrix.criteria:
                _error(issues, base, f"marks undeclared criterion {criterion!r}")
        if matrix.criteria and matrix.reference_id in matrix.concept_ids:
            reference_clean = all(
                matrix.marks.get(criterion, {}).get(matrix.reference_id) == 0
                for criterion in matrix.criteria
            )
            if not reference_clean:
                _error(
                    issues,
                    base,
                    f"reference {matrix.reference_id!r} must score 0 against "
                    "itself on every criterion",
                )
        for cid in matrix.declared:
            if cid not in matrix.concept_ids:
                _error(issues, base, f"declares tallies for unknown concept {cid!r}")


def _validate_scoring(issues: list[ValidationIssue], project: Project) -> None:
    concept_ids = {c.id for c in project.concepts}
    for matrix in project.scoring_matrices:
        base = f"scoring[{matrix.id}]"
        criterion_ids: set[str] = set()
        weights: dict[str, Optional[Fraction]] = {}
        for criterion in matrix.criteria:
            loc = f"{base}.criterion[{criterion.id}]"
            if criterion.id in criterion_ids:
                _error(issues, loc, "criterion id repeated")
            criterion_ids.add(criterion.id)
            weights[criterion.id] = _weight_or_issue(issues, loc, criterion.weight)

        # Weight-sum checks apply only once somebody has started weighting.
        any_weight = any(w is not None for w in weights.values())
        all_weights = all(w is not None for w in weights.values())
        if any_weight and not all_weights:
            for criterion in matrix.criteria:
                if weights[criterion.id] is None:
                    _error(
                        issues,
                        f"{base}.criterion[{criterion.id}]",
                        "has no weight while other criteria are weighted",
                    )

        tree_ok = True
        for criterion in matrix.criteria:
            if criterion.parent is None:
                continue
            loc = f"{base}.criterion[{criterion.id}]"
            if criterion.parent not in criterion_ids:
                _error(issues, loc, f"has unknown parent {criterion.parent!r}")
                tree_ok = False
                continue
            seen = {criterion.id}
            cursor: Optional[str] = criterion.parent
            while cursor is not None:
                if cursor in seen:
                    _error(
                        issues, base, f"criterion tree has a cycle through {cursor!r}"
                    )
                    tree_ok = False
                    break
                seen.add(cursor)
                cursor = next(
                    (c.parent for c in matrix.criteria if c.id == cursor), None
                )

        if tree_ok and matrix.criteria and any_weight and all_weights:
            roots_total = sum(
                (weights[c.id] for c in matrix.root_criteria()), Fraction(0)
            )
            if roots_total != 1:
                _error(
                issues,
                base,
                f"criterion weights sum ≠ 1 (got {format_exact(roots_total)})",
            )
            children: dict[str, list[WeightedCriterion]] = {}
            for criterion in matrix.criteria:
                if criterion.parent is not None:
                    children.setdefault(criterion.parent, []).append(criterion)
            for parent_id, kids in children.items():
                kids_total = sum((weights[k.id] for k in kids), Fraction(0))
                if kids_total != weights[parent_id]:
                    _error(
                        issues,
                        f"{base}.criterion[{parent_id}]",
                        f"children weigh {format_exact(kids_total)}, parent weighs "
                        f"{format_exact(weights[parent_id])}",
                    )

        for cid in matrix.concept_ids:
            if cid not in concept_ids:
                _error(issues, base, f"references unknown concept {cid!r}")

        leaf_ids = {c.id for c in matrix.leaf_criteria()} if tree_ok else criterion_ids
        for criterion in matrix.criteria:
            loc = f"{base}.criterion[{criterion.id}]"
            if tree_ok and criterion.id not in leaf_ids:
                if criterion.id in matrix.ratings:
                    _error(issues, loc, "carries ratings but is not a leaf")
                continue
            row = matrix.ratings.get(criterion.id)
            if row is None:
                _error(issues, loc, "missing ratings for this criterion")
                continue
            for cid in matrix.concept_ids:
                rating = row.get(cid)
                if not isinstance(rating, int) or not 1 <= rating <= 5:
                    _error(
                        issues, loc, f"concept {cid!r} rating {rating!r} outside 1..5"
                    )
        for criterion_id in matrix.ratings:
            if criterion_id not in criterion_ids:
                _error(issues, base, f"rates undeclared criterion {criterion_id!r}")
        for cid, declared in matrix.declared.items():
            if cid not in matrix.concept_ids:
                _error(issues, base, f"declares results for unknown concept {cid!r}")
            for criterion_id in declared.weighted:
                if criterion_id not in criterion_ids:
                    _error(
                        issues,
                        base,
                        f"declares a weighted cell for undeclared criterion "
                        f"{criterion_id!r}",
                    )


def validate_project(project: Project) -> list[ValidationIssue]:
    """Structural validation.  Returns a list of issues, each carrying a
    severity, a short location path, and a message; an empty list means every
    cross-reference resolves and every grid is well-formed.  Never raises and
    never mutates."""
    issues: list[ValidationIssue] = []

    _check_unique(issues, project.opportunities, "opportunity", "opportunities")
    _check_unique(issues, project.needs, "need", "needs")
    _check_unique(issues, project.metrics, "metric", "metrics")
    _check_unique(issues, project.benchmarks, "benchmark product", "benchmarks")
    _check_unique(issues, project.charts, "chart", "charts")
    _check_unique(issues, project.concepts, "concept", "concepts")
    _check_unique(issues, project.pugh_matrices, "screening matrix", "screening")
    _check_unique(issues, project.scoring_matrices, "scoring matrix", "scoring")

    if project.funnel is not None:
        _validate_funnel(issues, project)
    _validate_needs_and_metrics(issues, project)
    _validate_morphology(issues, project)
    _validate_pugh(issues, project)
    _validate_scoring(issues, project)

    return issues
