"""CSV interchange for the tabular parts of a project.

Every format has one header row.  These files exist for spreadsheet traffic
-- the JSON project file is the canonical store -- so the formats are kept
deliberately flat:

* screening matrix: header ``criterion`` + concept ids (reference marked
  with a trailing ``*``); one row per criterion with cells ``+ 0 -``;
  optional trailing rows ``#declared:<aggregate>``
* scoring matrix: header ``criterion,weight`` + concept ids; integer cells;
  declared rows as above plus ``#declared:weighted:<criterion>``
* chart: one column per subproblem, rows are fragments (ragged columns via
  blank cells)
* metrics / links / benchmarks / target specs: one row per record, with
  constraint cells holding grammar text verbatim
* stage verdicts: one row per opportunity, one column per criterion plus a
  ``declared`` column
* sensitivity trajectory: weight column plus one rank column per concept

Scoring-matrix CSV identifies criteria by a single cell, so it round-trips
matrices whose criterion ids equal their display names and whose criteria
are flat (no parents); richer matrices need the JSON format.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Mapping, Optional, Sequence

from .constraints import parse_constraint, parse_measurement, render_constraint
from .errors import PersistenceError
from .model import (
    BenchmarkProduct,
    DeclaredScoreRow,
    DeclaredScreenRow,
    Metric,
    MorphChart,
    MorphColumn,
    NeedMetricLink,
    PughMatrix,
    ScoringMatrix,
    Stage,
    TargetSpec,
    Verdict,
    WeightedCriterion,
)
from .numbers import format_exact
from .persistence import weight_from_text, weight_to_text
from .sensitivity import TrajectoryPoint

_PUGH_CELLS = {1: "+", 0: "0", -1: "-"}
_PUGH_MARKS = {"+": 1, "+1": 1, "0": 0, "-": -1, "-1": -1}


def _writer() -> tuple[io.StringIO, "csv.writer"]:
    buffer = io.StringIO()
    return buffer, csv.writer(buffer, lineterminator="\n")


def _rows(text: str, context: str) -> list[list[str]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise PersistenceError(f"{context}: empty document")
    return rows


def _cell(row: Sequence[str], index: int) -> str:
    return row[index].strip() if index < len(row) else ""


# --------------------------------------------------------------------------
# screening / scoring matrices


def _header_concepts(header: Sequence[str], start: int) -> tuple[tuple[str, ...], Optional[str]]:
    concepts = []
    reference = None
    for cell in header[start:]:
        name = cell.strip()
        if name.endswith("*"):
            name = name[:-1].strip()
            reference = name
        concepts.append(name)
    return tuple(concepts), reference


def pugh_to_csv(matrix: PughMatrix) -> str:
    buffer, writer = _writer()
    writer.writerow(
        ["criterion"]
        + [
            cid + "*" if cid == matrix.reference_id else cid
            for cid in matrix.concept_ids
        ]
    )
    for criterion in matrix.criteria:
        writer.writerow(
            [criterion]
            + [_PUGH_CELLS[matrix.marks[criterion][cid]] for cid in matrix.concept_ids]
        )

    def declared_row(tag: str, pick) -> None:
        values = [pick(matrix.declared.get(cid)) for cid in matrix.concept_ids]
        if any(value != "" for value in values):
            writer.writerow([f"#declared:{tag}"] + values)

    def number(value: Optional[int]) -> str:
        return "" if value is None else str(value)

    declared_row("pluses", lambda row: "" if row is None else number(row.pluses))
    declared_row("sames", lambda row: "" if row is None else number(row.sames))
    declared_row("minuses", lambda row: "" if row is None else number(row.minuses))
    declared_row("net", lambda row: "" if row is None else number(row.net))
    declared_row("rank", lambda row: "" if row is None else number(row.rank))
    declared_row(
        "continue",
        lambda row: ""
        if row is None or row.continue_ is None
        else ("yes" if row.continue_ else "no"),
    )
    return buffer.getvalue()


def pugh_from_csv(text: str, matrix_id: str) -> PughMatrix:
    rows = _rows(text, "screening matrix")
    concepts, reference = _header_concepts(rows[0], 1)
    if reference is None:
        raise PersistenceError(
            "screening matrix: no reference concept (mark one header cell with *)"
        )
    criteria: list[str] = []
    marks: dict[str, dict[str, int]] = {}
    declared: dict[str, dict] = {cid: {} for cid in concepts}
    for line, row in enumerate(rows[1:], start=2):
        label = _cell(row, 0)
        if not label:
            continue
        if label.startswith("#declared:"):
            tag = label[len("#declared:") :]
            for index, cid in enumerate(concepts, start=1):
                cell = _cell(row, index)
                if not cell:
                    continue
                if tag == "continue":
                    if cell.lower() not in ("yes", "no"):
                        raise PersistenceError(
                            f"line {line}: continue must be yes or no, got {cell!r}"
                        )
                    declared[cid][tag] = cell.lower() == "yes"
                elif tag in ("pluses", "sames", "minuses", "net", "rank"):
                    declared[cid][tag] = int(cell)
                else:
                    raise PersistenceError(
                        f"line {line}: unknown declared aggregate {tag!r}"
                    )
            continue
        criterion_marks = {}
        for index, cid in enumerate(concepts, start=1):
            cell = _cell(row, index)
            if cell not in _PUGH_MARKS:
                raise PersistenceError(
                    f"line {line}: screening cell must be one of + 0 -, got {cell!r}"
                )
            criterion_marks[cid] = _PUGH_MARKS[cell]
        criteria.append(label)
        marks[label] = criterion_marks
    return PughMatrix(
        id=matrix_id,
        criteria=tuple(criteria),
        concept_ids=concepts,
        reference_id=reference,
        marks=marks,
        declared={
            cid: DeclaredScreenRow(
                pluses=fields.get("pluses"),
                sames=fields.get("sames"),
                minuses=fields.get("minuses"),
                net=fields.get("net"),
                rank=fields.get("rank"),
                continue_=fields.get("continue"),
            )
            for cid, fields in declared.items()
            if fields
        },
    )


def scoring_to_csv(matrix: ScoringMatrix) -> str:
    buffer, writer = _writer()
    writer.writerow(["criterion", "weight"] + list(matrix.concept_ids))
    for criterion in matrix.criteria:
        writer.writerow(
            [
                criterion.id,
                "" if criterion.weight is None else weight_to_text(criterion.weight),
            ]
            + [
                str(matrix.ratings[criterion.id][cid])
                if criterion.id in matrix.ratings
                else ""
                for cid in matrix.concept_ids
            ]
        )
    for criterion in matrix.criteria:
        cells = [
            weight_to_text(matrix.declared[cid].weighted[criterion.id])
            if cid in matrix.declared and criterion.id in matrix.declared[cid].weighted
            else ""
            for cid in matrix.concept_ids
        ]
        if any(cell != "" for cell in cells):
            writer.writerow([f"#declared:weighted:{criterion.id}", ""] + cells)

    def aggregate_row(tag: str, pick) -> None:
        values = [
            "" if cid not in matrix.declared else pick(matrix.declared[cid])
            for cid in matrix.concept_ids
        ]
        if any(value != "" for value in values):
            writer.writerow([f"#declared:{tag}", ""] + values)

    aggregate_row(
        "total", lambda row: "" if row.total is None else weight_to_text(row.total)
    )
    aggregate_row("rank", lambda row: "" if row.rank is None else str(row.rank))
    aggregate_row(
        "decision", lambda row: "" if row.decision is None else row.decision
    )
    return buffer.getvalue()


def scoring_from_csv(text: str, matrix_id: str) -> ScoringMatrix:
    rows = _rows(text, "scoring matrix")
    concepts, _ = _header_concepts(rows[0], 2)
    criteria: list[WeightedCriterion] = []
    ratings: dict[str, dict[str, int]] = {}
    declared: dict[str, dict] = {
        cid: {"weighted": {}, "total": None, "rank": None, "decision": None}
        for cid in concepts
    }
    for line, row in enumerate(rows[1:], start=2):
        label = _cell(row, 0)
        if not label:
            continue
        if label.startswith("#declared:weighted:"):
            criterion_id = label[len("#declared:weighted:") :]
            for index, cid in enumerate(concepts, start=2):
                cell = _cell(row, index)
                if cell:
                    declared[cid]["weighted"][criterion_id] = weight_from_text(
                        cell, f"line {line}"
                    )
            continue
        if label.startswith("#declared:"):
            tag = label[len("#declared:") :]
            if tag not in ("total", "rank", "decision"):
                raise PersistenceError(f"line {line}: unknown declared aggregate {tag!r}")
            for index, cid in enumerate(concepts, start=2):
                cell = _cell(row, index)
                if not cell:
                    continue
                if tag == "total":
                    declared[cid][tag] = weight_from_text(cell, f"line {line}")
                elif tag == "rank":
                    declared[cid][tag] = int(cell)
                else:
                    declared[cid][tag] = cell
            continue
        weight_cell = _cell(row, 1)
        weight = weight_from_text(weight_cell, f"line {line}") if weight_cell else None
        criteria.append(WeightedCriterion(id=label, name=label, weight=weight))
        criterion_ratings = {}
        for index, cid in enumerate(concepts, start=2):
            cell = _cell(row, index)
            try:
                criterion_ratings[cid] = int(cell)
            except ValueError as exc:
                raise PersistenceError(
                    f"line {line}: rating must be an integer, got {cell!r}"
                ) from exc
        ratings[label] = criterion_ratings
    return ScoringMatrix(
        id=matrix_id,
        criteria=tuple(criteria),
        concept_ids=concepts,
        ratings=ratings,
        declared={
            cid: DeclaredScoreRow(
                weighted=fields["weighted"],
                total=fields["total"],
                rank=fields["rank"],
                decision=fields["decision"],
            )
            for cid, fields in declared.items()
            if fields["weighted"]
            or fields["total"] is not None
            or fields["rank"] is not None
            or fields["decision"] is not None
        },
    )


# --------------------------------------------------------------------------
# charts


def chart_to_csv(chart: MorphChart) -> str:
    buffer, writer = _writer()
    writer.writerow([column.name for column in chart.columns])
    depth = max((len(column.fragments) for column in chart.columns), default=0)
    for index in range(depth):
        writer.writerow(
            [
                column.fragments[index] if index < len(column.fragments) else ""
                for column in chart.columns
            ]
        )
    return buffer.getvalue()


def chart_from_csv(text: str, chart_id: str) -> MorphChart:
    rows = _rows(text, "chart")
    names = [cell.strip() for cell in rows[0]]
    fragments: list[list[str]] = [[] for _ in names]
    for row in rows[1:]:
        for index in range(len(names)):
            cell = _cell(row, index)
            if cell:
                fragments[index].append(cell)
    return MorphChart(
        id=chart_id,
        columns=tuple(
            MorphColumn(name=name, fragments=tuple(frags))
            for name, frags in zip(names, fragments)
        ),
    )


# --------------------------------------------------------------------------
# metric catalog, links, benchmarks, targets


def metrics_to_csv(metrics: Sequence[Metric]) -> str:
    buffer, writer = _writer()
    writer.writerow(["id", "ordinal", "name", "unit", "importance"])
    for metric in metrics:
        writer.writerow(
            [metric.id, str(metric.ordinal), metric.name, metric.unit, str(metric.importance)]
        )
    return buffer.getvalue()


def metrics_from_csv(text: str) -> tuple[Metric, ...]:
    rows = _rows(text, "metrics")
    out = []
    for line, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        try:
            out.append(
                Metric(
                    id=_cell(row, 0),
                    ordinal=int(_cell(row, 1)),
                    name=_cell(row, 2),
                    unit=_cell(row, 3),
                    importance=int(_cell(row, 4)),
                )
            )
        except ValueError as exc:
            raise PersistenceError(f"metrics line {line}: {exc}") from exc
    return tuple(out)


def links_to_csv(links: Sequence[NeedMetricLink]) -> str:
    buffer, writer = _writer()
    writer.writerow(["need", "metric"])
    for link in links:
        writer.writerow([link.need_id, link.metric_id])
    return buffer.getvalue()


def links_from_csv(text: str) -> tuple[NeedMetricLink, ...]:
    rows = _rows(text, "links")
    return tuple(
        NeedMetricLink(need_id=_cell(row, 0), metric_id=_cell(row, 1))
        for row in rows[1:]
        if any(cell.strip() for cell in row)
    )


def benchmarks_to_csv(products: Sequence[BenchmarkProduct]) -> str:
    buffer, writer = _writer()
    writer.writerow(["product", "name", "metric", "value", "satisfaction"])
    for product in products:
        metric_ids = list(product.metric_values)
        metric_ids += [m for m in product.satisfaction if m not in product.metric_values]
        for metric_id in metric_ids:
            value = product.metric_values.get(metric_id)
            dots = product.satisfaction.get(metric_id)
            writer.writerow(
                [
                    product.id,
                    product.name,
                    metric_id,
                    "" if value is None else render_constraint(value),
                    "" if dots is None else str(dots),
                ]
            )
    return buffer.getvalue()


def benchmarks_from_csv(text: str) -> tuple[BenchmarkProduct, ...]:
    rows = _rows(text, "benchmarks")
    products: dict[str, dict] = {}
    for line, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        product_id = _cell(row, 0)
        entry = products.setdefault(
            product_id,
            {"name": _cell(row, 1), "metric_values": {}, "satisfaction": {}},
        )
        metric_id = _cell(row, 2)
        value = _cell(row, 3)
        dots = _cell(row, 4)
        if value:
            entry["metric_values"][metric_id] = parse_measurement(value)
        if dots:
            try:
                entry["satisfaction"][metric_id] = int(dots)
            except ValueError as exc:
                raise PersistenceError(
                    f"benchmarks line {line}: satisfaction must be an integer"
                ) from exc
    return tuple(
        BenchmarkProduct(
            id=product_id,
            name=entry["name"],
            metric_values=entry["metric_values"],
            satisfaction=entry["satisfaction"],
        )
        for product_id, entry in products.items()
    )


def targets_to_csv(specs: Sequence[TargetSpec]) -> str:
    buffer, writer = _writer()
    writer.writerow(["metric", "marginal", "ideal"])
    for spec in specs:
        writer.writerow(
            [spec.metric_id, render_constraint(spec.marginal), render_constraint(spec.ideal)]
        )
    return buffer.getvalue()


def targets_from_csv(text: str) -> tuple[TargetSpec, ...]:
    rows = _rows(text, "target specs")
    return tuple(
        TargetSpec(
            metric_id=_cell(row, 0),
            marginal=parse_constraint(_cell(row, 1)),
            ideal=parse_constraint(_cell(row, 2)),
        )
        for row in rows[1:]
        if any(cell.strip() for cell in row)
    )


# --------------------------------------------------------------------------
# stage verdicts


def verdicts_to_csv(stage: Stage, rows: Sequence[Verdict]) -> str:
    buffer, writer = _writer()
    writer.writerow(["opportunity"] + list(stage.criteria) + ["declared"])
    for verdict in rows:
        writer.writerow(
            [verdict.opportunity_id]
            + [verdict.marks.get(criterion, "unknown") for criterion in stage.criteria]
            + [verdict.declared or ""]
        )
    return buffer.getvalue()


def verdicts_from_csv(text: str) -> tuple[tuple[str, ...], tuple[Verdict, ...]]:
    """Returns (criteria, rows); empty mark cells read as "unknown"."""
    rows = _rows(text, "verdicts")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 3 or header[0] != "opportunity" or header[-1] != "declared":
        raise PersistenceError(
            "verdicts: header must be opportunity,<criteria...>,declared"
        )
    criteria = tuple(header[1:-1])
    verdicts = []
    for line, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        marks = {}
        for index, criterion in enumerate(criteria, start=1):
            cell = _cell(row, index).lower()
            if cell in ("", "unknown"):
                marks[criterion] = "unknown"
            elif cell in ("pass", "fail"):
                marks[criterion] = cell
            else:
                raise PersistenceError(
                    f"verdicts line {line}: mark must be pass/fail/unknown, got {cell!r}"
                )
        declared = _cell(row, len(criteria) + 1).lower() or None
        verdicts.append(
            Verdict(opportunity_id=_cell(row, 0), marks=marks, declared=declared)
        )
    return criteria, tuple(verdicts)


# --------------------------------------------------------------------------
# sensitivity trajectories


def trajectory_to_csv(
    points: Iterable[TrajectoryPoint], concept_ids: Sequence[str]
) -> str:
    buffer, writer = _writer()
    writer.writerow(["weight"] + list(concept_ids))
    for point in points:
        writer.writerow(
            [format_exact(point.weight)]
            + [str(point.ranks[cid]) for cid in concept_ids]
        )
    return buffer.getvalue()
