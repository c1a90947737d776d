"""Render a project as a human-readable report.

Two formats: a single markdown document mirroring the worksheets a team
would keep (funnel, needs, metrics, benchmarks, targets, charts, screening,
scoring, audit, sensitivity), or a bundle of CSV files, one per worksheet.
Every number in the report is recomputed from the project's inputs; declared
worksheet values appear only in blocks explicitly labelled "declared".

Generation is a pure function of the project value: equal projects produce
byte-identical output.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .constraints import render_constraint
from .csvio import (
    benchmarks_to_csv,
    chart_to_csv,
    links_to_csv,
    metrics_to_csv,
    pugh_to_csv,
    scoring_to_csv,
    targets_to_csv,
    verdicts_to_csv,
)
from .errors import SelectionError, SensitivityError, TournamentError
from .model import Project, PughMatrix, ScoringMatrix
from .morpho import combination_count
from .needspec import benchmark_table, coverage_report, project_consistency_report
from .numbers import ExactDecimal, format_exact
from .selection import audit, describe_finding, score, screen
from .sensitivity import all_crossings
from .tournament import evaluate_row, run_funnel

REPORT_FORMATS = ("markdown", "csv-bundle")


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-") or "unnamed"


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_exact(value)
    return str(value).replace("|", "\\|").replace("\n", " ")


def _number(value: Union[ExactDecimal, Fraction, int]) -> str:
    if isinstance(value, Fraction):
        return format_exact(value)
    return str(value)


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    lines = [
        "| " + " | ".join(headers) + " |",
        "|" + "|".join(" --- " for _ in headers) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    lines.append("")
    return lines


def _funnel_markdown(project: Project) -> list[str]:
    lines = ["## Opportunity funnel", ""]
    funnel = project.funnel
    if funnel is None or not funnel.stages:
        lines += ["No funnel stages recorded.", ""]
        return lines

    names = {o.id: o.name for o in project.opportunities}
    try:
        outcome = run_funnel(project)
    except TournamentError as exc:
        lines += [f"Funnel could not be evaluated: {exc}", ""]
        return lines

    for stage in funnel.stages:
        lines += [f"### Stage: {stage.name}", ""]
        lines += [
            f"Unknown-mark policy: {stage.unknown_policy}."
            + (
                f"  Declared survivor count: {stage.declared_count}."
                if stage.declared_count is not None
                else ""
            ),
            "",
        ]
        rows = []
        for verdict in funnel.verdicts.get(stage.name, ()):
            try:
                computed = evaluate_row(stage, verdict)
            except TournamentError:
                computed = "unresolved"
            rows.append(
                [_cell(names.get(verdict.opportunity_id, verdict.opportunity_id))]
                + [_cell(verdict.marks.get(c, "unknown")) for c in stage.criteria]
                + [computed, _cell(verdict.declared) + (" (declared)" if verdict.declared else "")]
            )
        lines += _table(
            ["Opportunity"] + list(stage.criteria) + ["Computed", "Declared"], rows
        )
        stage_outcome = next(s for s in outcome.stages if s.stage == stage.name)
        survivor_names = [names.get(s, s) for s in stage_outcome.survivors]
        lines += [
            f"Survivors ({len(stage_outcome.survivors)}): "
            + (", ".join(survivor_names) if survivor_names else "none"),
            "",
        ]
    flagged = [d for d in outcome.discrepancies]
    lines += ["### Funnel discrepancies", ""]
    if flagged:
        for d in flagged:
            lines.append(f"- {d.stage} / {d.subject}: {d.kind} — {d.detail}")
        lines.append("")
    else:
        lines += ["None: every declared outcome matches the recomputation.", ""]
    return lines


def _needs_markdown(project: Project) -> list[str]:
    lines = ["## Customer needs", ""]
    if not project.needs:
        lines += ["No needs recorded.", ""]
        return lines
    lines += _table(
        ["Id", "Need", "Importance"],
        [
            [n.id, _cell(n.interpreted), _cell(n.importance)]
            for n in project.needs
        ],
    )
    return lines


def _metrics_markdown(project: Project) -> list[str]:
    lines = ["## Metrics", ""]
    if not project.metrics:
        lines += ["No metrics recorded.", ""]
        return lines
    lines += _table(
        ["#", "Metric", "Unit", "Importance"],
        [
            [str(m.ordinal), _cell(m.name), _cell(m.unit), str(m.importance)]
            for m in project.metrics
        ],
    )
    coverage = coverage_report(project.needs, project.metrics, project.links)
    if coverage.uncovered_needs:
        lines.append(
            "Needs with no metric: " + ", ".join(coverage.uncovered_needs)
        )
    else:
        lines.append("Every need maps to at least one metric.")
    if coverage.unused_metrics:
        lines.append(
            "Metrics serving no need: " + ", ".join(coverage.unused_metrics)
        )
    else:
        lines.append("Every metric serves at least one need.")
    lines.append("")
    return lines


def _benchmark_markdown(project: Project) -> list[str]:
    lines = ["## Competitive benchmarks", ""]
    if not project.benchmarks:
        lines += ["No benchmark products recorded.", ""]
        return lines
    metric_names = {m.id: m.name for m in project.metrics}

    values = benchmark_table(project.benchmarks, project.metrics, mode="values")
    lines += ["### Measured values", ""]
    lines += _table(
        ["Metric"] + [p.name for p in project.benchmarks],
        [
            [_cell(metric_names.get(mid, mid))]
            + [
                _cell(
                    render_constraint(values.cells[mid][pid])
                    if values.cells[mid][pid] is not None
                    else ""
                )
                for pid in values.product_ids
            ]
            for mid in values.metric_ids
        ],
    )

    dots = benchmark_table(project.benchmarks, project.metrics, mode="satisfaction")
    lines += ["### Perceived satisfaction (1-5, importance-weighted totals)", ""]
    grid = [
        [_cell(metric_names.get(mid, mid))]
        + [_cell(dots.cells[mid][pid]) for pid in dots.product_ids]
        for mid in dots.metric_ids
    ]
    grid.append(
        ["Weighted total"]
        + [str(dots.weighted_totals[pid]) for pid in dots.product_ids]
    )
    lines += _table(["Metric"] + [p.name for p in project.benchmarks], grid)
    return lines


def _targets_markdown(project: Project) -> list[str]:
    lines = ["## Target specifications", ""]
    if not project.target_specs:
        lines += ["No target specifications recorded.", ""]
        return lines
    metric_names = {m.id: m.name for m in project.metrics}
    lines += _table(
        ["Metric", "Marginal", "Ideal"],
        [
            [
                _cell(metric_names.get(spec.metric_id, spec.metric_id)),
                _cell(render_constraint(spec.marginal)),
                _cell(render_constraint(spec.ideal)),
            ]
            for spec in project.target_specs
        ],
    )
    findings = project_consistency_report(project)
    lines += ["### Target consistency", ""]
    if findings:
        for finding in findings:
            name = metric_names.get(finding.metric_id, finding.metric_id)
            lines.append(
                f"- {finding.severity}: {name}: {finding.kind} — {finding.detail}"
            )
        lines.append("")
    else:
        lines += ["No inconsistencies found.", ""]
    return lines


def _charts_markdown(project: Project) -> list[str]:
    lines = ["## Morphological charts", ""]
    if not project.charts:
        lines += ["No charts recorded.", ""]
        return lines
    for chart in project.charts:
        lines += [f"### Chart: {chart.id}", ""]
        lines += _table(
            ["Column", "Fragments"],
            [
                [_cell(column.name), _cell(", ".join(column.fragments))]
                for column in chart.columns
            ],
        )
        lines += [f"Complete combinations: {combination_count(chart)}", ""]
    if project.concepts:
        lines += ["### Defined concepts", ""]
        rows = []
        for concept in project.concepts:
            try:
                chart = project.chart(concept.chart_id)
                ordered = "; ".join(
                    f"{column.name}: {concept.selection[column.name]}"
                    for column in chart.columns
                    if column.name in concept.selection
                )
            except KeyError:
                ordered = "; ".join(
                    f"{k}: {v}" for k, v in sorted(concept.selection.items())
                )
            rows.append([concept.id, _cell(concept.name), _cell(ordered)])
        lines += _table(["Id", "Concept", "Selection"], rows)
    return lines


def _screening_markdown(project: Project) -> list[str]:
    lines = ["## Concept screening", ""]
    if not project.pugh_matrices:
        lines += ["No screening matrices recorded.", ""]
        return lines
    for matrix in project.pugh_matrices:
        lines += [f"### Screening matrix: {matrix.id}", ""]
        headers = ["Criterion"] + [
            cid + (" (reference)" if cid == matrix.reference_id else "")
            for cid in matrix.concept_ids
        ]
        mark_text = {1: "+", 0: "0", -1: "-"}
        lines += _table(
            headers,
            [
                [_cell(criterion)]
                + [
                    mark_text.get(matrix.marks[criterion][cid], "?")
                    for cid in matrix.concept_ids
                ]
                for criterion in matrix.criteria
            ],
        )
        result = screen(matrix)
        tally = {row.concept_id: row for row in result.rows}
        lines += ["Computed tallies:", ""]
        lines += _table(
            ["&nbsp;"] + list(matrix.concept_ids),
            [
                ["Sum +'s"] + [str(tally[c].pluses) for c in matrix.concept_ids],
                ["Sum 0's"] + [str(tally[c].sames) for c in matrix.concept_ids],
                ["Sum -'s"] + [str(tally[c].minuses) for c in matrix.concept_ids],
                ["Net score"] + [_signed(tally[c].net) for c in matrix.concept_ids],
                ["Rank"] + [str(tally[c].rank) for c in matrix.concept_ids],
                ["Continue?"]
                + [("yes" if tally[c].continue_ else "no") for c in matrix.concept_ids],
            ],
        )
        if matrix.declared:
            lines += ["Declared tallies (as written in the worksheet):", ""]
            order = ["pluses", "sames", "minuses", "net", "rank", "continue_"]
            labels = {
                "pluses": "Sum +'s (declared)",
                "sames": "Sum 0's (declared)",
                "minuses": "Sum -'s (declared)",
                "net": "Net score (declared)",
                "rank": "Rank (declared)",
                "continue_": "Continue? (declared)",
            }
            rows = []
            for field_name in order:
                cells = [
                    _cell(getattr(matrix.declared[cid], field_name))
                    if cid in matrix.declared
                    else ""
                    for cid in matrix.concept_ids
                ]
                if any(cell != "" for cell in cells):
                    rows.append([labels[field_name]] + cells)
            lines += _table(["&nbsp;"] + list(matrix.concept_ids), rows)
    return lines


def _signed(value: int) -> str:
    return f"+{value}" if value > 0 else str(value)


def _scoring_markdown(project: Project) -> list[str]:
    lines = ["## Concept scoring", ""]
    if not project.scoring_matrices:
        lines += ["No scoring matrices recorded.", ""]
        return lines
    for matrix in project.scoring_matrices:
        lines += [f"### Scoring matrix: {matrix.id}", ""]
        try:
            result = score(matrix)
        except SelectionError as exc:
            lines += [f"Matrix could not be scored: {exc}", ""]
            continue
        by_concept = {row.concept_id: row for row in result.rows}
        headers = ["Criterion", "Weight"]
        for cid in matrix.concept_ids:
            headers += [f"{cid} rating", f"{cid} weighted"]
        grid = []
        for criterion in matrix.criteria:
            row = [
                _cell(criterion.name),
                "" if criterion.weight is None else _number(criterion.weight),
            ]
            for cid in matrix.concept_ids:
                rating = matrix.ratings.get(criterion.id, {}).get(cid)
                row.append("" if rating is None else str(rating))
                row.append(_number(by_concept[cid].weighted[criterion.id]))
            grid.append(row)
        total_row = ["Total", ""]
        rank_row = ["Rank", ""]
        decision_row = ["Decision", ""]
        for cid in matrix.concept_ids:
            total_row += ["", _number(by_concept[cid].total)]
            rank_row += ["", str(by_concept[cid].rank)]
            decision_row += ["", by_concept[cid].decision]
        grid += [total_row, rank_row, decision_row]
        lines += _table(headers, grid)
        if matrix.declared:
            lines += ["Declared results (as written in the worksheet):", ""]
            rows = []
            for cid in matrix.concept_ids:
                if cid not in matrix.declared:
                    continue
                declared = matrix.declared[cid]
                rows.append(
                    [
                        cid,
                        "" if declared.total is None else _number(declared.total),
                        _cell(declared.rank),
                        _cell(declared.decision),
                    ]
                )
            lines += _table(
                ["Concept", "Total (declared)", "Rank (declared)", "Decision (declared)"],
                rows,
            )
    return lines


def _audit_markdown(project: Project) -> list[str]:
    lines = ["## Audit", ""]
    matrices: list[Union[PughMatrix, ScoringMatrix]] = list(
        project.pugh_matrices
    ) + list(project.scoring_matrices)
    if not matrices:
        lines += ["Nothing to audit: no matrices recorded.", ""]
        return lines
    for matrix in matrices:
        if not matrix.declared:
            lines.append(f"- {matrix.id}: no declared results to audit.")
            continue
        try:
            findings = audit(matrix)
        except SelectionError as exc:
            lines.append(f"- {matrix.id}: {exc}")
            continue
        if not findings:
            lines.append(
                f"- {matrix.id}: all declared results confirmed by recomputation."
            )
        else:
            lines.append(f"- {matrix.id}: {len(findings)} finding(s):")
            for finding in findings:
                lines.append(f"    - {describe_finding(finding)}")
    lines.append("")
    return lines


def _sensitivity_markdown(project: Project) -> list[str]:
    lines = ["## Weight sensitivity", ""]
    if not project.scoring_matrices:
        lines += ["No scoring matrices recorded.", ""]
        return lines
    for matrix in project.scoring_matrices:
        lines += [f"### Matrix: {matrix.id}", ""]
        any_event = False
        for criterion in matrix.criteria:
            if criterion.parent is not None:
                continue
            try:
                reports = all_crossings(matrix, criterion.id)
            except SensitivityError as exc:
                lines.append(f"- {criterion.name}: {exc}")
                any_event = True
                continue
            for report in reports:
                first, second = report.pair
                if report.always_tied:
                    lines.append(
                        f"- {criterion.name}: {first} and {second} are tied at "
                        "every weight."
                    )
                    any_event = True
                for point in report.points:
                    below = (
                        f"{point.leader_below} leads below"
                        if point.leader_below
                        else "tied from 0"
                    )
                    lines.append(
                        f"- {criterion.name}: {first} vs {second} cross at "
                        f"weight {point.weight_text()} ({below}, "
                        f"{point.leader_above} leads above)."
                    )
                    any_event = True
        if not any_event:
            lines.append(
                "- No rank reversals: every pairwise ordering holds across "
                "the whole weight range."
            )
        lines.append("")
    return lines


def _markdown(project: Project) -> str:
    lines = [f"# {project.name}", ""]
    if project.description:
        lines += [project.description, ""]
    if project.metadata:
        lines += _table(
            ["Key", "Value"],
            [[_cell(k), _cell(project.metadata[k])] for k in sorted(project.metadata)],
        )
    if project.opportunities:
        lines += ["## Opportunities", ""]
        lines += _table(
            ["Id", "Opportunity"],
            [[o.id, _cell(o.name)] for o in project.opportunities],
        )
    lines += _funnel_markdown(project)
    lines += _needs_markdown(project)
    lines += _metrics_markdown(project)
    lines += _benchmark_markdown(project)
    lines += _targets_markdown(project)
    lines += _charts_markdown(project)
    lines += _screening_markdown(project)
    lines += _scoring_markdown(project)
    lines += _audit_markdown(project)
    lines += _sensitivity_markdown(project)
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def _audit_csv(project: Project) -> str:
    rows = ["matrix,kind,subject,declared,computed"]
    matrices: list[Union[PughMatrix, ScoringMatrix]] = list(
        project.pugh_matrices
    ) + list(project.scoring_matrices)
    for matrix in matrices:
        if not matrix.declared:
            continue
        try:
            findings = audit(matrix)
        except SelectionError:
            continue
        for f in findings:
            rows.append(
                ",".join(
                    _csv_field(str(part))
                    for part in (
                        f.matrix_id,
                        f.kind,
                        f.subject,
                        _cell(f.declared),
                        _cell(f.computed),
                    )
                )
            )
    return "\n".join(rows) + "\n"


def _crossings_csv(matrix: ScoringMatrix) -> str:
    rows = ["criterion,first,second,crossing,leader_below,leader_above,note"]
    for criterion in matrix.criteria:
        if criterion.parent is not None:
            continue
        try:
            reports = all_crossings(matrix, criterion.id)
        except SensitivityError:
            continue
        for report in reports:
            first, second = report.pair
            if report.always_tied:
                rows.append(
                    ",".join(
                        _csv_field(part)
                        for part in (criterion.id, first, second, "", "", "", "always tied")
                    )
                )
            for point in report.points:
                rows.append(
                    ",".join(
                        _csv_field(part)
                        for part in (
                            criterion.id,
                            first,
                            second,
                            point.weight_text(),
                            point.leader_below or "",
                            point.leader_above or "",
                            "",
                        )
                    )
                )
    return "\n".join(rows) + "\n"


def _csv_field(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _csv_bundle(project: Project) -> dict[str, str]:
    bundle: dict[str, str] = {}
    if project.funnel is not None:
        for index, stage in enumerate(project.funnel.stages, start=1):
            rows = project.funnel.verdicts.get(stage.name, ())
            bundle[f"funnel-{index:02d}-{_slug(stage.name)}.csv"] = verdicts_to_csv(
                stage, rows
            )
    if project.metrics:
        bundle["metrics.csv"] = metrics_to_csv(project.metrics)
    if project.links:
        bundle["links.csv"] = links_to_csv(project.links)
    if project.benchmarks:
        bundle["benchmarks.csv"] = benchmarks_to_csv(project.benchmarks)
    if project.target_specs:
        bundle["targets.csv"] = targets_to_csv(project.target_specs)
    for chart in project.charts:
        bundle[f"chart-{_slug(chart.id)}.csv"] = chart_to_csv(chart)
    for pugh in project.pugh_matrices:
        bundle[f"screening-{_slug(pugh.id)}.csv"] = pugh_to_csv(pugh)
    for matrix in project.scoring_matrices:
        bundle[f"scoring-{_slug(matrix.id)}.csv"] = scoring_to_csv(matrix)
        bundle[f"crossings-{_slug(matrix.id)}.csv"] = _crossings_csv(matrix)
    bundle["audit.csv"] = _audit_csv(project)
    return bundle


def generate_report(project: Project, format: str = "markdown"):
    """Render ``project`` as a report.

    ``format`` is "markdown" (returns one string) or "csv-bundle" (returns a
    mapping of file name to CSV text).  Deterministic in both cases.
    """
    if format not in REPORT_FORMATS:
        raise ValueError(
            f"unknown report format {format!r}; expected one of "
            + ", ".join(REPORT_FORMATS)
        )
    if format == "markdown":
        return _markdown(project)
    return _csv_bundle(project)
