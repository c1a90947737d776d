"""Opportunity funnel: staged pass/fail screening with declared-verdict audit.

A funnel narrows a list of opportunities through successive stages.  Each
stage has criteria and a worksheet of verdict rows (per-criterion marks plus
the outcome the team wrote down).  A row passes a stage only if it passes
every criterion; how an unmarked criterion counts is the stage's unknown
policy:

    strict-fail       unknown counts against the opportunity
    lenient-pass      unknown counts in its favour
    require-explicit  unknowns are a data error (the default)

Recomputation is deliberately forgiving about worksheet drift: a stage's rows
are evaluated as listed, survivors are the computed passes that also survived
the previous stage, and every divergence -- a survivor with no row, a row for
an already-eliminated opportunity, a declared outcome or survivor count that
does not match -- is reported as a discrepancy instead of being silently
repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import TournamentError
from .model import Funnel, Project, Stage, Verdict


@dataclass(frozen=True)
class StageOutcome:
    stage: str
    considered: tuple[str, ...]  # row order as listed in the worksheet
    passed: tuple[str, ...]  # computed passes among the considered rows
    survivors: tuple[str, ...]  # passed, intersected with the entering pool
    declared_count: Optional[int]


@dataclass(frozen=True)
class Discrepancy:
    stage: str
    kind: str  # missing-row | extra-row | declared-outcome | declared-count
    subject: str
    detail: str


@dataclass(frozen=True)
class FunnelReport:
    stages: tuple[StageOutcome, ...]
    survivors: tuple[str, ...]
    discrepancies: tuple[Discrepancy, ...]


def _resolve_marks(stage: Stage, verdict: Verdict) -> list[str]:
    marks = []
    for criterion in stage.criteria:
        mark = verdict.marks.get(criterion, "unknown")
        if mark not in ("pass", "fail", "unknown"):
            raise TournamentError(
                f"stage {stage.name!r} row {verdict.opportunity_id!r} has "
                f"invalid mark {mark!r} for {criterion!r}"
            )
        marks.append(mark)
    return marks


def evaluate_row(stage: Stage, verdict: Verdict) -> str:
    """Computed outcome of one row: "pass" iff every criterion passes."""
    marks = _resolve_marks(stage, verdict)
    if "unknown" in marks:
        if stage.unknown_policy == "require-explicit":
            missing = [
                criterion
                for criterion, mark in zip(stage.criteria, marks)
                if mark == "unknown"
            ]
            raise TournamentError(
                f"stage {stage.name!r} row {verdict.opportunity_id!r} has no "
                f"explicit mark for {', '.join(repr(c) for c in missing)} and the "
                "stage requires explicit marks"
            )
        substitute = "fail" if stage.unknown_policy == "strict-fail" else "pass"
        marks = [substitute if mark == "unknown" else mark for mark in marks]
    return "pass" if all(mark == "pass" for mark in marks) else "fail"


def evaluate_stage(
    stage: Stage,
    rows: Sequence[Verdict],
    candidates: Optional[Iterable[str]] = None,
) -> dict[str, str]:
    """Computed outcome for each row of one stage, in worksheet order.

    If ``candidates`` is given, every candidate must have a row.
    """
    by_id = {row.opportunity_id: row for row in rows}
    if candidates is not None:
        missing = [cid for cid in candidates if cid not in by_id]
        if missing:
            raise TournamentError(
                f"stage {stage.name!r} has no verdict row for "
                f"{', '.join(repr(m) for m in missing)}"
            )
    return {row.opportunity_id: evaluate_row(stage, row) for row in rows}


def compare_policies(stage: Stage, rows: Sequence[Verdict]) -> dict[str, dict[str, str]]:
    """Outcome of every row under all three unknown policies, side by side.

    Useful when choosing a policy for a worksheet with gaps.  Rows that
    cannot be resolved under require-explicit come back as "unresolved"
    rather than raising.
    """
    table: dict[str, dict[str, str]] = {}
    for policy in ("strict-fail", "lenient-pass", "require-explicit"):
        variant = Stage(
            name=stage.name,
            criteria=stage.criteria,
            unknown_policy=policy,
            declared_count=stage.declared_count,
        )
        outcomes: dict[str, str] = {}
        for row in rows:
            try:
                outcomes[row.opportunity_id] = evaluate_row(variant, row)
            except TournamentError:
                outcomes[row.opportunity_id] = "unresolved"
        table[policy] = outcomes
    return table


def run_funnel(project: Project, funnel: Optional[Funnel] = None) -> FunnelReport:
    """Recompute the whole funnel and reconcile it against the worksheets."""
    funnel = funnel if funnel is not None else project.funnel
    if funnel is None:
        raise TournamentError("project has no funnel")

    pool = tuple(opportunity.id for opportunity in project.opportunities)
    outcomes: list[StageOutcome] = []
    discrepancies: list[Discrepancy] = []

    for stage in funnel.stages:
        rows = funnel.verdicts.get(stage.name, ())
        computed = evaluate_stage(stage, rows)
        considered = tuple(row.opportunity_id for row in rows)
        considered_set = set(considered)
        pool_set = set(pool)

        for opportunity_id in pool:
            if opportunity_id not in considered_set:
                discrepancies.append(
                    Discrepancy(
                        stage=stage.name,
                        kind="missing-row",
                        subject=opportunity_id,
                        detail="survived the previous stage but has no row here",
                    )
                )
        for row in rows:
            if row.opportunity_id not in pool_set:
                discrepancies.append(
                    Discrepancy(
                        stage=stage.name,
                        kind="extra-row",
                        subject=row.opportunity_id,
                        detail="has a row here but did not survive the previous stage",
                    )
                )
            if row.declared is not None and row.declared != computed[row.opportunity_id]:
                discrepancies.append(
                    Discrepancy(
                        stage=stage.name,
                        kind="declared-outcome",
                        subject=row.opportunity_id,
                        detail=(
                            f"declared {row.declared}, "
                            f"recomputed {computed[row.opportunity_id]}"
                        ),
                    )
                )

        passed = tuple(
            row.opportunity_id for row in rows if computed[row.opportunity_id] == "pass"
        )
        passed_set = set(passed)
        survivors = tuple(
            opportunity_id
            for opportunity_id in pool
            if opportunity_id in passed_set
        )
        # Rows that pass but were already out of the running are not revived;
        # the extra-row discrepancy above is their only trace.
        if stage.declared_count is not None and stage.declared_count != len(survivors):
            discrepancies.append(
                Discrepancy(
                    stage=stage.name,
                    kind="declared-count",
                    subject=stage.name,
                    detail=(
                        f"worksheet declares {stage.declared_count} survivors, "
                        f"recomputation finds {len(survivors)}"
                    ),
                )
            )

        outcomes.append(
            StageOutcome(
                stage=stage.name,
                considered=considered,
                passed=passed,
                survivors=survivors,
                declared_count=stage.declared_count,
            )
        )
        pool = survivors

    return FunnelReport(
        stages=tuple(outcomes),
        survivors=pool,
        discrepancies=tuple(discrepancies),
    )
