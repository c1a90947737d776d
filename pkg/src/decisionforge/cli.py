"""Command-line interface.

Exit codes: 0 on success, 1 when the project fails to load or validate or a
computation is impossible, 2 for usage errors (argparse's convention).
Declared-vs-computed findings from ``audit`` and ``funnel`` print on
standard output and leave the exit code at 0 unless --strict-audit is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .csvio import pugh_to_csv, trajectory_to_csv
from .errors import DecisionForgeError
from .model import Project, PughMatrix, ScoringMatrix, validate_project
from .morpho import combination_count, enumerate_concepts
from .numbers import format_exact
from .persistence import load_project
from .report import REPORT_FORMATS, generate_report
from .selection import audit, derive_pugh, describe_finding, score, screen
from .sensitivity import all_crossings, rank_trajectory
from .tournament import run_funnel


class CliError(Exception):
    """A normal failure: message to stderr, exit code 1."""


def _load(path: Optional[str]) -> Project:
    if not path:
        raise CliError(
            "no project file; pass --project <path> "
            "(decisionforge-sample prints a worked example)"
        )
    if not os.path.exists(path):
        raise CliError(f"project file not found: {path}")
    try:
        return load_project(path)
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc


def _validated(path: Optional[str]) -> Project:
    project = _load(path)
    issues = validate_project(project)
    if issues:
        lines = "\n".join(f"  {issue}" for issue in issues)
        raise CliError(f"project does not validate:\n{lines}")
    return project


def _single(items, kind: str, wanted: Optional[str]):
    if wanted is not None:
        for item in items:
            if item.id == wanted:
                return item
        raise CliError(f"no {kind} with id {wanted!r}")
    if len(items) == 1:
        return items[0]
    if not items:
        raise CliError(f"project has no {kind}")
    ids = ", ".join(item.id for item in items)
    raise CliError(f"project has several {kind}s ({ids}); pick one with --matrix")


def _check_format(chosen: str, allowed: Sequence[str]) -> str:
    if chosen not in allowed:
        raise CliError(
            f"format {chosen!r} not supported here; choose from "
            + ", ".join(allowed)
        )
    return chosen


# --------------------------------------------------------------------------
# Verb handlers.  Each returns the process exit code.


def _cmd_validate(args) -> int:
    project = _load(args.project)
    issues = validate_project(project)
    if not issues:
        print("ok: project validates")
        return 0
    for issue in issues:
        print(issue)
    return 1


def _cmd_funnel(args) -> int:
    project = _validated(args.project)
    if project.funnel is None:
        raise CliError("project has no funnel")
    try:
        report = run_funnel(project)
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc
    names = {opp.id: opp.name for opp in project.opportunities}
    if args.format == "json":
        print(json.dumps(
            {
                "stages": [
                    {
                        "stage": outcome.stage,
                        "survivors": list(outcome.survivors),
                        "declared_count": outcome.declared_count,
                    }
                    for outcome in report.stages
                ],
                "survivors": list(report.survivors),
                "discrepancies": [
                    {
                        "stage": item.stage,
                        "kind": item.kind,
                        "subject": item.subject,
                        "detail": item.detail,
                    }
                    for item in report.discrepancies
                ],
            },
            indent=2,
        ))
    else:
        _check_format(args.format, ("text", "json"))
        for outcome in report.stages:
            survivors = ", ".join(
                names.get(oid, oid) for oid in outcome.survivors
            ) or "(none)"
            print(f"{outcome.stage}: {len(outcome.survivors)} pass -> {survivors}")
        for item in report.discrepancies:
            print(f"finding: {item.stage} / {item.subject}: {item.kind} ({item.detail})")
    return 1 if (args.strict_audit and report.discrepancies) else 0


def _cmd_morph(args) -> int:
    project = _validated(args.project)
    chart = _single(project.charts, "chart", args.chart)
    if args.action == "count":
        excluded = set(args.exclude)
        if excluded:
            pruned = 1
            for column in chart.columns:
                pruned *= sum(
                    1 for label in column.fragments if label not in excluded
                )
            print(pruned)
        else:
            print(combination_count(chart))
        return 0
    names = [column.name for column in chart.columns]
    try:
        selections = enumerate_concepts(chart, limit=args.limit, exclude=args.exclude)
        if args.format == "json":
            for selection in selections:
                print(json.dumps(selection))
        else:
            _check_format(args.format, ("text", "csv", "json"))
            print(",".join(names))
            for selection in selections:
                print(",".join(selection[name] for name in names))
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc
    return 0


def _screen_lines(matrix: PughMatrix) -> list[str]:
    result = screen(matrix)
    lines = [f"screening {matrix.id} (reference {matrix.reference_id})"]
    for row in result.rows:
        keep = "continue" if row.continue_ else "drop"
        lines.append(
            f"  {row.concept_id}: +{row.pluses} ={row.sames} -{row.minuses} "
            f"net {row.net:+d} rank {row.rank} {keep}"
        )
    return lines


def _cmd_screen(args) -> int:
    project = _validated(args.project)
    matrix = _single(project.pugh_matrices, "screening matrix", args.matrix)
    if args.format == "json":
        result = screen(matrix)
        print(json.dumps(
            [
                {
                    "concept": row.concept_id,
                    "pluses": row.pluses,
                    "sames": row.sames,
                    "minuses": row.minuses,
                    "net": row.net,
                    "rank": row.rank,
                    "continue": row.continue_,
                }
                for row in result.rows
            ],
            indent=2,
        ))
    else:
        _check_format(args.format, ("text", "json"))
        print("\n".join(_screen_lines(matrix)))
    return 0


def _cmd_score(args) -> int:
    project = _validated(args.project)
    matrix = _single(project.scoring_matrices, "scoring matrix", args.matrix)
    try:
        result = score(matrix)
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps(
            [
                {
                    "concept": row.concept_id,
                    "total": format_exact(row.total),
                    "rank": row.rank,
                    "decision": row.decision,
                }
                for row in result.rows
            ],
            indent=2,
        ))
    else:
        _check_format(args.format, ("text", "json"))
        print(f"scoring {matrix.id}")
        for row in result.rows:
            print(
                f"  {row.concept_id}: total {format_exact(row.total)} "
                f"rank {row.rank} {row.decision}"
            )
    return 0


def _cmd_audit(args) -> int:
    project = _validated(args.project)
    matrices = [*project.pugh_matrices, *project.scoring_matrices]
    if args.matrix is not None:
        matrices = [m for m in matrices if m.id == args.matrix]
        if not matrices:
            raise CliError(f"no matrix with id {args.matrix!r}")
    elif not matrices:
        raise CliError("project has no screening or scoring matrices")
    findings = []
    for matrix in matrices:
        if not matrix.declared:
            if args.matrix is not None:
                raise CliError(f"matrix {matrix.id!r} has nothing to audit")
            continue
        try:
            findings.extend(audit(matrix))
        except DecisionForgeError as exc:
            raise CliError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps(
            [
                {
                    "matrix": f.matrix_id,
                    "kind": f.kind,
                    "subject": f.subject,
                    "note": describe_finding(f),
                }
                for f in findings
            ],
            indent=2,
        ))
    else:
        _check_format(args.format, ("text", "json"))
        if not findings:
            print("all declared results confirmed")
        for finding in findings:
            print(f"finding: {describe_finding(finding)}")
    return 1 if (args.strict_audit and findings) else 0


def _cmd_derive_pugh(args) -> int:
    project = _validated(args.project)
    matrix = _single(project.scoring_matrices, "scoring matrix", args.matrix)
    try:
        derived = derive_pugh(matrix, args.reference, matrix_id=args.id)
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "text":
        print("\n".join(_screen_lines(derived)))
    else:
        _check_format(args.format, ("text", "csv"))
        sys.stdout.write(pugh_to_csv(derived))
    return 0


def _sensitivity_matrix(args, project: Project) -> ScoringMatrix:
    matrix = _single(project.scoring_matrices, "scoring matrix", args.matrix)
    if args.criterion not in {item.id for item in matrix.criteria}:
        raise CliError(
            f"matrix {matrix.id!r} has no criterion {args.criterion!r}"
        )
    return matrix


def _cmd_sensitivity(args) -> int:
    project = _validated(args.project)
    matrix = _sensitivity_matrix(args, project)
    try:
        if args.action == "sweep":
            points = rank_trajectory(matrix, args.criterion, args.samples)
            if args.format == "csv":
                sys.stdout.write(trajectory_to_csv(points, matrix.concept_ids))
            elif args.format == "json":
                print(json.dumps(
                    [
                        {
                            "weight": format_exact(point.weight),
                            "ranks": dict(point.ranks),
                        }
                        for point in points
                    ],
                    indent=2,
                ))
            else:
                _check_format(args.format, ("text", "csv", "json"))
                for point in points:
                    ranks = " ".join(
                        f"{cid}={rank}" for cid, rank in point.ranks.items()
                    )
                    print(f"w={format_exact(point.weight)}: {ranks}")
            return 0
        _check_format(args.format, ("text", "json"))
        reports = all_crossings(matrix, args.criterion)
        rows = []
        for report in reports:
            first, second = report.pair
            if report.always_tied:
                rows.append({"pair": [first, second], "always_tied": True})
                continue
            for point in report.points:
                rows.append({
                    "pair": [first, second],
                    "weight": point.weight_text(),
                    "leader_below": point.leader_below,
                    "leader_above": point.leader_above,
                })
        if args.format == "json":
            print(json.dumps(rows, indent=2))
            return 0
        if not rows:
            print(f"no rank reversals when sweeping {args.criterion!r}")
        for row in rows:
            first, second = row["pair"]
            if row.get("always_tied"):
                print(f"{first} and {second} are tied at every weight")
            else:
                below = row["leader_below"] or "tied"
                print(
                    f"{first} vs {second}: cross at w={row['weight']} "
                    f"({below} below, {row['leader_above']} above)"
                )
        return 0
    except DecisionForgeError as exc:
        raise CliError(str(exc)) from exc


def _cmd_report(args) -> int:
    project = _validated(args.project)
    fmt = args.format if args.format != "text" else "markdown"
    _check_format(fmt, REPORT_FORMATS)
    artifact = generate_report(project, format=fmt)
    if fmt == "markdown":
        if args.out:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(artifact)
        else:
            sys.stdout.write(artifact)
        return 0
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, content in artifact.items():
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as handle:
                handle.write(content)
        print(f"wrote {len(artifact)} files to {args.out}")
    else:
        for name, content in artifact.items():
            print(f"--- {name} ---")
            sys.stdout.write(content)
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    project = _validated(args.project)
    try:
        serve(project, bind=args.bind)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decisionforge",
        description="Screen opportunities, trace needs to metrics, enumerate "
        "and select concepts, and audit every declared result.",
    )
    parser.add_argument("--project", metavar="PATH", help="project file (JSON)")
    parser.add_argument(
        "--format",
        default="text",
        help="output format; text unless a verb says otherwise "
        "(report: markdown or csv-bundle)",
    )
    parser.add_argument(
        "--strict-audit",
        action="store_true",
        help="exit nonzero when audit or funnel findings are present",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    verbs.add_parser("validate", help="check the project against the model rules")

    verbs.add_parser("funnel", help="recompute every funnel stage and flag "
                     "rows that contradict their declared outcome")

    morph = verbs.add_parser("morph", help="count or enumerate chart combinations")
    morph.add_argument("action", choices=("count", "enum"))
    morph.add_argument("--chart", help="chart id (optional when only one)")
    morph.add_argument("--exclude", action="append", default=[],
                       metavar="LABEL", help="drop this fragment label everywhere")
    morph.add_argument("--limit", type=int, default=None,
                       help="stop enumerating after this many selections")

    screen_parser = verbs.add_parser("screen", help="relative screening tallies")
    screen_parser.add_argument("--matrix", help="matrix id (optional when only one)")

    score_parser = verbs.add_parser("score", help="weighted totals, ranks, decisions")
    score_parser.add_argument("--matrix", help="matrix id (optional when only one)")

    audit_parser = verbs.add_parser(
        "audit", help="recompute declared worksheet results and list mismatches"
    )
    audit_parser.add_argument("--matrix", help="audit only this matrix")

    derive = verbs.add_parser(
        "derive-pugh", help="collapse a scoring matrix into a relative grid"
    )
    derive.add_argument("--matrix", help="scoring matrix id (optional when only one)")
    derive.add_argument("--reference", required=True, help="reference concept id")
    derive.add_argument("--id", default=None, help="id for the derived matrix")

    sens = verbs.add_parser(
        "sensitivity", help="sweep one criterion weight or solve for crossings"
    )
    sens.add_argument("action", choices=("sweep", "cross"))
    sens.add_argument("--matrix", help="scoring matrix id (optional when only one)")
    sens.add_argument("--criterion", required=True, help="criterion id to sweep")
    sens.add_argument("--samples", type=int, default=11,
                      help="sample count for sweep (default 11)")

    report = verbs.add_parser("report", help="render the full project report")
    report.add_argument("--out", default=None,
                        help="file (markdown) or directory (csv-bundle)")

    serve_parser = verbs.add_parser("serve", help="run the HTTP service")
    serve_parser.add_argument(
        "--bind", default=None, metavar="HOST:PORT",
        help="bind address (default DECISIONFORGE_BIND or 127.0.0.1:8157)",
    )
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "funnel": _cmd_funnel,
    "morph": _cmd_morph,
    "screen": _cmd_screen,
    "score": _cmd_score,
    "audit": _cmd_audit,
    "derive-pugh": _cmd_derive_pugh,
    "sensitivity": _cmd_sensitivity,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.verb](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
