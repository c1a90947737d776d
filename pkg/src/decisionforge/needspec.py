"""Needs, metrics, and targets: traceability, benchmarking, and checking.

This module answers the bookkeeping questions that come up between "we know
what customers want" and "we know what to build":

* which needs have no measurable metric, and which metrics measure nothing
  (:func:`coverage_report`);
* how competitors stack up, by measured value or by perceived satisfaction,
  including importance-weighted satisfaction totals (:func:`benchmark_table`);
* does a measured value meet the marginal and ideal targets for a metric
  (:func:`check_value`) -- the two flags are computed independently, because
  real worksheets contain ideal values outside the marginal range and the
  point is to surface that, not to hide it (:func:`target_consistency_report`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .constraints import (
    Constraint,
    OneOf,
    Qualitative,
    constraint_unit,
    interval,
    is_numeric,
    render_constraint,
    satisfies,
)
from .errors import ConstraintError
from .model import BenchmarkProduct, Metric, Need, NeedMetricLink, Project, TargetSpec
from .numbers import ExactDecimal


@dataclass(frozen=True)
class CoverageReport:
    uncovered_needs: tuple[str, ...]
    unused_metrics: tuple[str, ...]


def coverage_report(
    needs: Sequence[Need],
    metrics: Sequence[Metric],
    links: Sequence[NeedMetricLink],
) -> CoverageReport:
    """Needs with no metric and metrics serving no need, in catalog order."""
    linked_needs = {link.need_id for link in links}
    linked_metrics = {link.metric_id for link in links}
    return CoverageReport(
        uncovered_needs=tuple(n.id for n in needs if n.id not in linked_needs),
        unused_metrics=tuple(m.id for m in metrics if m.id not in linked_metrics),
    )


@dataclass(frozen=True)
class BenchmarkTable:
    """Comparison grid keyed (metric, product).

    ``mode`` is "values" (cells are measured values as constraints, or None
    when unmeasured) or "satisfaction" (cells are 1-5 integers or None); in
    satisfaction mode ``weighted_totals`` holds the importance-weighted sum
    per product over the metrics it was rated on.
    """

    mode: str
    metric_ids: tuple[str, ...]
    product_ids: tuple[str, ...]
    cells: Mapping[str, Mapping[str, object]]  # metric id -> product id -> cell
    weighted_totals: Mapping[str, int] = field(default_factory=dict)


def benchmark_table(
    products: Sequence[BenchmarkProduct],
    metrics: Sequence[Metric],
    mode: str = "values",
) -> BenchmarkTable:
    if mode not in ("values", "satisfaction"):
        raise ValueError(f"benchmark mode must be values or satisfaction, got {mode!r}")
    cells: dict[str, dict[str, object]] = {}
    for metric in metrics:
        row: dict[str, object] = {}
        for product in products:
            if mode == "values":
                row[product.id] = product.metric_values.get(metric.id)
            else:
                row[product.id] = product.satisfaction.get(metric.id)
        cells[metric.id] = row
    totals: dict[str, int] = {}
    if mode == "satisfaction":
        for product in products:
            totals[product.id] = sum(
                metric.importance * product.satisfaction[metric.id]
                for metric in metrics
                if metric.id in product.satisfaction
            )
    return BenchmarkTable(
        mode=mode,
        metric_ids=tuple(m.id for m in metrics),
        product_ids=tuple(p.id for p in products),
        cells=cells,
        weighted_totals=totals,
    )


@dataclass(frozen=True)
class CheckResult:
    meets_marginal: bool
    meets_ideal: bool
    notes: tuple[str, ...] = ()


def _check_side(
    side: str,
    constraint: Constraint,
    value: Union[ExactDecimal, int, Fraction, str],
    notes: list[str],
) -> bool:
    if isinstance(constraint, Qualitative):
        notes.append(f"{side} target is qualitative ({constraint.text!r}); not checked")
        return False
    return satisfies(constraint, value)


def check_value(
    spec: TargetSpec, value: Union[ExactDecimal, int, Fraction, str]
) -> CheckResult:
    """Check one measured value against a metric's targets.

    Marginal and ideal are evaluated independently -- neither implies the
    other.  A qualitative target cannot be machine-checked: its flag is False
    and a note says so.  A non-numeric value against a numeric target is a
    :class:`~decisionforge.errors.ConstraintError`.
    """
    notes: list[str] = []
    meets_marginal = _check_side("marginal", spec.marginal, value, notes)
    meets_ideal = _check_side("ideal", spec.ideal, value, notes)
    return CheckResult(
        meets_marginal=meets_marginal, meets_ideal=meets_ideal, notes=tuple(notes)
    )


@dataclass(frozen=True)
class ConsistencyFinding:
    metric_id: str
    kind: str  # ideal-outside-marginal | unit-mismatch | numeric-qualitative
    severity: str  # warning | info
    detail: str


def _contains(
    outer: tuple[Optional[Fraction], Optional[Fraction]],
    inner: tuple[Optional[Fraction], Optional[Fraction]],
) -> bool:
    outer_lo, outer_hi = outer
    inner_lo, inner_hi = inner
    if outer_lo is not None and (inner_lo is None or inner_lo < outer_lo):
        return False
    if outer_hi is not None and (inner_hi is None or inner_hi > outer_hi):
        return False
    return True


def target_consistency_report(
    specs: Sequence[TargetSpec], metrics: Sequence[Metric] = ()
) -> tuple[ConsistencyFinding, ...]:
    """Cross-check each metric's marginal and ideal targets.

    Emits a warning when the ideal admits values the marginal rejects (an
    ideal should be the harder target, so this usually marks a worksheet
    slip), and informational notes when units disagree or one side is
    numeric while the other is prose.  Findings never block anything; they
    are review bait.
    """
    units = {metric.id: metric.unit for metric in metrics}
    findings: list[ConsistencyFinding] = []
    for spec in specs:
        marginal, ideal = spec.marginal, spec.ideal
        if is_numeric(marginal) and is_numeric(ideal):
            if not _contains(interval(marginal), interval(ideal)):
                findings.append(
                    ConsistencyFinding(
                        metric_id=spec.metric_id,
                        kind="ideal-outside-marginal",
                        severity="warning",
                        detail=(
                            f"ideal {render_constraint(ideal)!r} admits values "
                            f"outside marginal {render_constraint(marginal)!r}"
                        ),
                    )
                )
        elif is_numeric(marginal) != is_numeric(ideal):
            numeric_side = "marginal" if is_numeric(marginal) else "ideal"
            findings.append(
                ConsistencyFinding(
                    metric_id=spec.metric_id,
                    kind="numeric-qualitative",
                    severity="info",
                    detail=(
                        f"{numeric_side} target is numeric but the other side is "
                        "prose; they cannot be compared"
                    ),
                )
            )

        seen_units = []
        for side, constraint in (("marginal", marginal), ("ideal", ideal)):
            unit = constraint_unit(constraint).strip()
            if unit:
                seen_units.append((side, unit))
        metric_unit = units.get(spec.metric_id, "").strip()
        if metric_unit:
            seen_units.append(("metric catalog", metric_unit))
        distinct = {unit.lower() for _, unit in seen_units}
        if len(distinct) > 1:
            described = ", ".join(f"{side}: {unit!r}" for side, unit in seen_units)
            findings.append(
                ConsistencyFinding(
                    metric_id=spec.metric_id,
                    kind="unit-mismatch",
                    severity="info",
                    detail=f"unit labels disagree ({described})",
                )
            )
    return tuple(findings)


def project_consistency_report(project: Project) -> tuple[ConsistencyFinding, ...]:
    return target_consistency_report(project.target_specs, project.metrics)


def satisfaction_can_check(constraint: Constraint) -> bool:
    """True when :func:`check_value` can decide the constraint mechanically."""
    return is_numeric(constraint) or isinstance(constraint, OneOf)


__all__ = [
    "BenchmarkTable",
    "CheckResult",
    "ConsistencyFinding",
    "CoverageReport",
    "benchmark_table",
    "check_value",
    "coverage_report",
    "project_consistency_report",
    "satisfaction_can_check",
    "target_consistency_report",
]
