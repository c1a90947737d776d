"""Project persistence: a single JSON document, versioned and strict.

Design goals, in order: lossless roundtrip (load(save(p)) equals p),
deterministic bytes (equal projects serialize identically, so project files
diff cleanly under review), and loud failure (unknown keys, missing keys,
or a format_version this build does not understand are errors, never
silently ignored).

Constraints are stored as their grammar text; weights and declared numeric
cells are stored as decimal strings, or "p/q" when a value has no
terminating decimal form (renormalized weights often do not).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

from .constraints import parse_constraint, parse_measurement, render_constraint
from .errors import PersistenceError
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
    Verdict,
    Weight,
    WeightedCriterion,
)
from .numbers import ExactDecimal

FORMAT_VERSION = 1


# --------------------------------------------------------------------------
# scalar helpers


def weight_to_text(value: Weight) -> str:
    if isinstance(value, ExactDecimal):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def weight_from_text(text: str, context: str) -> Weight:
    try:
        if "/" in text:
            numerator, denominator = text.split("/", 1)
            return Fraction(int(numerator), int(denominator))
        return ExactDecimal(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise PersistenceError(f"{context}: not a number: {text!r}") from exc


def _ordered(mapping: Mapping[str, Any], preferred: Sequence[str]) -> list[str]:
    """Keys in a canonical order: ``preferred`` first, stragglers sorted."""
    rest = sorted(key for key in mapping if key not in set(preferred))
    return [key for key in preferred if key in mapping] + rest


# --------------------------------------------------------------------------
# serialization (model -> plain dicts, fixed key order)


def project_to_dict(project: Project) -> dict:
    charts_by_id = {chart.id: chart for chart in project.charts}
    stages_by_name = (
        {stage.name: stage for stage in project.funnel.stages}
        if project.funnel
        else {}
    )
    metric_order = [metric.id for metric in project.metrics]

    def verdict_dict(stage_name: str, verdict: Verdict) -> dict:
        stage = stages_by_name.get(stage_name)
        criteria = stage.criteria if stage else ()
        return {
            "opportunity": verdict.opportunity_id,
            "marks": {
                key: verdict.marks[key] for key in _ordered(verdict.marks, criteria)
            },
            "declared": verdict.declared,
        }

    def selection_dict(concept: Concept) -> dict:
        chart = charts_by_id.get(concept.chart_id)
        columns = [column.name for column in chart.columns] if chart else ()
        return {
            key: concept.selection[key]
            for key in _ordered(concept.selection, columns)
        }

    def pugh_dict(matrix: PughMatrix) -> dict:
        return {
            "id": matrix.id,
            "criteria": list(matrix.criteria),
            "concepts": list(matrix.concept_ids),
            "reference": matrix.reference_id,
            "marks": {
                criterion: {
                    cid: matrix.marks[criterion][cid] for cid in matrix.concept_ids
                }
                for criterion in matrix.criteria
            },
            "declared": {
                cid: {
                    "pluses": row.pluses,
                    "sames": row.sames,
                    "minuses": row.minuses,
                    "net": row.net,
                    "rank": row.rank,
                    "continue": row.continue_,
                }
                for cid in _ordered(matrix.declared, matrix.concept_ids)
                for row in [matrix.declared[cid]]
            },
        }

    def scoring_dict(matrix: ScoringMatrix) -> dict:
        criterion_order = [criterion.id for criterion in matrix.criteria]
        return {
            "id": matrix.id,
            "criteria": [
                {
                    "id": criterion.id,
                    "name": criterion.name,
                    "weight": None
                    if criterion.weight is None
                    else weight_to_text(criterion.weight),
                    "parent": criterion.parent,
                }
                for criterion in matrix.criteria
            ],
            "concepts": list(matrix.concept_ids),
            "ratings": {
                criterion_id: {
                    cid: matrix.ratings[criterion_id][cid]
                    for cid in matrix.concept_ids
                }
                for criterion_id in _ordered(matrix.ratings, criterion_order)
            },
            "declared": {
                cid: {
                    "weighted": {
                        criterion_id: weight_to_text(row.weighted[criterion_id])
                        for criterion_id in _ordered(row.weighted, criterion_order)
                    },
                    "total": None if row.total is None else weight_to_text(row.total),
                    "rank": row.rank,
                    "decision": row.decision,
                }
                for cid in _ordered(matrix.declared, matrix.concept_ids)
                for row in [matrix.declared[cid]]
            },
        }

    return {
        "name": project.name,
        "description": project.description,
        "metadata": {key: project.metadata[key] for key in sorted(project.metadata)},
        "opportunities": [
            {"id": o.id, "name": o.name, "description": o.description}
            for o in project.opportunities
        ],
        "funnel": None
        if project.funnel is None
        else {
            "stages": [
                {
                    "name": stage.name,
                    "criteria": list(stage.criteria),
                    "unknown_policy": stage.unknown_policy,
                    "declared_count": stage.declared_count,
                }
                for stage in project.funnel.stages
            ],
            "verdicts": {
                stage.name: [
                    verdict_dict(stage.name, verdict)
                    for verdict in project.funnel.verdicts.get(stage.name, ())
                ]
                for stage in project.funnel.stages
            },
        },
        "needs": [
            {
                "id": need.id,
                "interpreted": need.interpreted,
                "raw_statement": need.raw_statement,
                "group": need.group,
                "importance": need.importance,
            }
            for need in project.needs
        ],
        "metrics": [
            {
                "id": metric.id,
                "ordinal": metric.ordinal,
                "name": metric.name,
                "unit": metric.unit,
                "importance": metric.importance,
            }
            for metric in project.metrics
        ],
        "links": [
            {"need": link.need_id, "metric": link.metric_id} for link in project.links
        ],
        "benchmarks": [
            {
                "id": product.id,
                "name": product.name,
                "metric_values": {
                    metric_id: render_constraint(product.metric_values[metric_id])
                    for metric_id in _ordered(product.metric_values, metric_order)
                },
                "satisfaction": {
                    metric_id: product.satisfaction[metric_id]
                    for metric_id in _ordered(product.satisfaction, metric_order)
                },
            }
            for product in project.benchmarks
        ],
        "target_specs": [
            {
                "metric": spec.metric_id,
                "marginal": render_constraint(spec.marginal),
                "ideal": render_constraint(spec.ideal),
            }
            for spec in project.target_specs
        ],
        "charts": [
            {
                "id": chart.id,
                "columns": [
                    {"name": column.name, "fragments": list(column.fragments)}
                    for column in chart.columns
                ],
            }
            for chart in project.charts
        ],
        "concepts": [
            {
                "id": concept.id,
                "name": concept.name,
                "chart": concept.chart_id,
                "selection": selection_dict(concept),
            }
            for concept in project.concepts
        ],
        "pugh_matrices": [pugh_dict(matrix) for matrix in project.pugh_matrices],
        "scoring_matrices": [
            scoring_dict(matrix) for matrix in project.scoring_matrices
        ],
    }


def project_to_json(project: Project) -> bytes:
    document = {"format_version": FORMAT_VERSION, "project": project_to_dict(project)}
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# strict parsing (plain dicts -> model)


def _expect(value: Any, kind: type, context: str) -> Any:
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise PersistenceError(
            f"{context}: expected {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _fields(
    obj: Any,
    context: str,
    required: Sequence[str],
    optional: Mapping[str, Any] = {},
) -> dict:
    _expect(obj, dict, context)
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise PersistenceError(
            f"{context}: unknown key(s) {', '.join(repr(k) for k in unknown)} "
            f"(format_version {FORMAT_VERSION})"
        )
    missing = [key for key in required if key not in obj]
    if missing:
        raise PersistenceError(
            f"{context}: missing key(s) {', '.join(repr(k) for k in missing)}"
        )
    merged = dict(optional)
    merged.update(obj)
    return merged


def _opt_int(value: Any, context: str) -> Optional[int]:
    if value is None:
        return None
    return _expect(value, int, context)


def _opt_str(value: Any, context: str) -> Optional[str]:
    if value is None:
        return None
    return _expect(value, str, context)


def _parse_funnel(obj: Any) -> Funnel:
    data = _fields(obj, "funnel", ["stages", "verdicts"])
    stages = []
    for index, raw in enumerate(_expect(data["stages"], list, "funnel.stages")):
        fields = _fields(
            raw,
            f"funnel.stages[{index}]",
            ["name", "criteria"],
            {"unknown_policy": "require-explicit", "declared_count": None},
        )
        stages.append(
            Stage(
                name=_expect(fields["name"], str, "stage name"),
                criteria=tuple(
                    _expect(c, str, "stage criterion") for c in fields["criteria"]
                ),
                unknown_policy=_expect(fields["unknown_policy"], str, "unknown_policy"),
                declared_count=_opt_int(fields["declared_count"], "declared_count"),
            )
        )
    verdicts: dict[str, tuple[Verdict, ...]] = {}
    for stage_name, rows in _expect(data["verdicts"], dict, "funnel.verdicts").items():
        parsed_rows = []
        for index, raw in enumerate(_expect(rows, list, f"verdicts[{stage_name!r}]")):
            fields = _fields(
                raw,
                f"verdicts[{stage_name!r}][{index}]",
                ["opportunity", "marks"],
                {"declared": None},
            )
            marks = {
                _expect(criterion, str, "mark criterion"): _expect(mark, str, "mark")
                for criterion, mark in _expect(fields["marks"], dict, "marks").items()
            }
            parsed_rows.append(
                Verdict(
                    opportunity_id=_expect(fields["opportunity"], str, "opportunity"),
                    marks=marks,
                    declared=_opt_str(fields["declared"], "declared"),
                )
            )
        verdicts[stage_name] = tuple(parsed_rows)
    return Funnel(stages=tuple(stages), verdicts=verdicts)


def _parse_constraint_text(text: Any, context: str):
    return parse_constraint(_expect(text, str, context))


def _parse_pugh(obj: Any, index: int) -> PughMatrix:
    context = f"pugh_matrices[{index}]"
    data = _fields(
        obj,
        context,
        ["id", "criteria", "concepts", "reference", "marks"],
        {"declared": {}},
    )
    marks = {
        _expect(criterion, str, "criterion"): {
            _expect(cid, str, "concept"): _expect(mark, int, "mark")
            for cid, mark in _expect(row, dict, f"{context}.marks row").items()
        }
        for criterion, row in _expect(data["marks"], dict, f"{context}.marks").items()
    }
    declared = {}
    for cid, raw in _expect(data["declared"], dict, f"{context}.declared").items():
        fields = _fields(
            raw,
            f"{context}.declared[{cid!r}]",
            [],
            {
                "pluses": None,
                "sames": None,
                "minuses": None,
                "net": None,
                "rank": None,
                "continue": None,
            },
        )
        continue_ = fields["continue"]
        if continue_ is not None:
            continue_ = _expect(continue_, bool, "continue")
        declared[cid] = DeclaredScreenRow(
            pluses=_opt_int(fields["pluses"], "pluses"),
            sames=_opt_int(fields["sames"], "sames"),
            minuses=_opt_int(fields["minuses"], "minuses"),
            net=_opt_int(fields["net"], "net"),
            rank=_opt_int(fields["rank"], "rank"),
            continue_=continue_,
        )
    return PughMatrix(
        id=_expect(data["id"], str, f"{context}.id"),
        criteria=tuple(_expect(c, str, "criterion") for c in data["criteria"]),
        concept_ids=tuple(_expect(c, str, "concept") for c in data["concepts"]),
        reference_id=_expect(data["reference"], str, f"{context}.reference"),
        marks=marks,
        declared=declared,
    )


def _parse_scoring(obj: Any, index: int) -> ScoringMatrix:
    context = f"scoring_matrices[{index}]"
    data = _fields(
        obj,
        context,
        ["id", "criteria", "concepts", "ratings"],
        {"declared": {}},
    )
    criteria = []
    for cindex, raw in enumerate(_expect(data["criteria"], list, f"{context}.criteria")):
        fields = _fields(
            raw,
            f"{context}.criteria[{cindex}]",
            ["id", "name", "weight"],
            {"parent": None},
        )
        raw_weight = fields["weight"]
        criteria.append(
            WeightedCriterion(
                id=_expect(fields["id"], str, "criterion id"),
                name=_expect(fields["name"], str, "criterion name"),
                weight=None
                if raw_weight is None
                else weight_from_text(
                    _expect(raw_weight, str, "weight"), "criterion weight"
                ),
                parent=_opt_str(fields["parent"], "parent"),
            )
        )
    ratings = {
        _expect(criterion, str, "criterion"): {
            _expect(cid, str, "concept"): _expect(rating, int, "rating")
            for cid, rating in _expect(row, dict, f"{context}.ratings row").items()
        }
        for criterion, row in _expect(data["ratings"], dict, f"{context}.ratings").items()
    }
    declared = {}
    for cid, raw in _expect(data["declared"], dict, f"{context}.declared").items():
        fields = _fields(
            raw,
            f"{context}.declared[{cid!r}]",
            [],
            {"weighted": {}, "total": None, "rank": None, "decision": None},
        )
        weighted = {
            _expect(criterion, str, "criterion"): weight_from_text(
                _expect(cell, str, "weighted cell"), "declared weighted cell"
            )
            for criterion, cell in _expect(fields["weighted"], dict, "weighted").items()
        }
        total = fields["total"]
        if total is not None:
            total = weight_from_text(_expect(total, str, "total"), "declared total")
        declared[cid] = DeclaredScoreRow(
            weighted=weighted,
            total=total,
            rank=_opt_int(fields["rank"], "rank"),
            decision=_opt_str(fields["decision"], "decision"),
        )
    return ScoringMatrix(
        id=_expect(data["id"], str, f"{context}.id"),
        criteria=tuple(criteria),
        concept_ids=tuple(_expect(c, str, "concept") for c in data["concepts"]),
        ratings=ratings,
        declared=declared,
    )


def project_from_dict(obj: Any) -> Project:
    data = _fields(
        obj,
        "project",
        ["name"],
        {
            "description": "",
            "metadata": {},
            "opportunities": [],
            "funnel": None,
            "needs": [],
            "metrics": [],
            "links": [],
            "benchmarks": [],
            "target_specs": [],
            "charts": [],
            "concepts": [],
            "pugh_matrices": [],
            "scoring_matrices": [],
        },
    )

    opportunities = []
    for index, raw in enumerate(_expect(data["opportunities"], list, "opportunities")):
        fields = _fields(
            raw, f"opportunities[{index}]", ["id", "name"], {"description": ""}
        )
        opportunities.append(
            Opportunity(
                id=_expect(fields["id"], str, "opportunity id"),
                name=_expect(fields["name"], str, "opportunity name"),
                description=_expect(fields["description"], str, "description"),
            )
        )

    needs = []
    for index, raw in enumerate(_expect(data["needs"], list, "needs")):
        fields = _fields(
            raw,
            f"needs[{index}]",
            ["id", "interpreted"],
            {"raw_statement": "", "group": None, "importance": None},
        )
        needs.append(
            Need(
                id=_expect(fields["id"], str, "need id"),
                interpreted=_expect(fields["interpreted"], str, "interpreted"),
                raw_statement=_expect(fields["raw_statement"], str, "raw_statement"),
                group=_opt_str(fields["group"], "group"),
                importance=_opt_int(fields["importance"], "importance"),
            )
        )

    metrics = []
    for index, raw in enumerate(_expect(data["metrics"], list, "metrics")):
        fields = _fields(
            raw, f"metrics[{index}]", ["id", "ordinal", "name", "unit", "importance"]
        )
        metrics.append(
            Metric(
                id=_expect(fields["id"], str, "metric id"),
                ordinal=_expect(fields["ordinal"], int, "ordinal"),
                name=_expect(fields["name"], str, "metric name"),
                unit=_expect(fields["unit"], str, "unit"),
                importance=_expect(fields["importance"], int, "importance"),
            )
        )

    links = []
    for index, raw in enumerate(_expect(data["links"], list, "links")):
        fields = _fields(raw, f"links[{index}]", ["need", "metric"])
        links.append(
            NeedMetricLink(
                need_id=_expect(fields["need"], str, "need"),
                metric_id=_expect(fields["metric"], str, "metric"),
            )
        )

    benchmarks = []
    for index, raw in enumerate(_expect(data["benchmarks"], list, "benchmarks")):
        context = f"benchmarks[{index}]"
        fields = _fields(
            raw, context, ["id", "name"], {"metric_values": {}, "satisfaction": {}}
        )
        benchmarks.append(
            BenchmarkProduct(
                id=_expect(fields["id"], str, "benchmark id"),
                name=_expect(fields["name"], str, "benchmark name"),
                metric_values={
                    # Measured cells are free-form; unparseable text stays
                    # qualitative rather than failing the load.
                    _expect(mid, str, "metric id"): parse_measurement(
                        _expect(text, str, f"{context}.metric_values[{mid!r}]")
                    )
                    for mid, text in _expect(
                        fields["metric_values"], dict, "metric_values"
                    ).items()
                },
                satisfaction={
                    _expect(mid, str, "metric id"): _expect(dots, int, "satisfaction")
                    for mid, dots in _expect(
                        fields["satisfaction"], dict, "satisfaction"
                    ).items()
                },
            )
        )

    target_specs = []
    for index, raw in enumerate(_expect(data["target_specs"], list, "target_specs")):
        context = f"target_specs[{index}]"
        fields = _fields(raw, context, ["metric", "marginal", "ideal"])
        target_specs.append(
            TargetSpec(
                metric_id=_expect(fields["metric"], str, "metric"),
                marginal=_parse_constraint_text(fields["marginal"], f"{context}.marginal"),
                ideal=_parse_constraint_text(fields["ideal"], f"{context}.ideal"),
            )
        )

    charts = []
    for index, raw in enumerate(_expect(data["charts"], list, "charts")):
        context = f"charts[{index}]"
        fields = _fields(raw, context, ["id", "columns"])
        columns = []
        for cindex, column in enumerate(_expect(fields["columns"], list, "columns")):
            column_fields = _fields(
                column, f"{context}.columns[{cindex}]", ["name", "fragments"]
            )
            columns.append(
                MorphColumn(
                    name=_expect(column_fields["name"], str, "column name"),
                    fragments=tuple(
                        _expect(f, str, "fragment") for f in column_fields["fragments"]
                    ),
                )
            )
        charts.append(
            MorphChart(id=_expect(fields["id"], str, "chart id"), columns=tuple(columns))
        )

    concepts = []
    for index, raw in enumerate(_expect(data["concepts"], list, "concepts")):
        fields = _fields(raw, f"concepts[{index}]", ["id", "name", "chart", "selection"])
        concepts.append(
            Concept(
                id=_expect(fields["id"], str, "concept id"),
                name=_expect(fields["name"], str, "concept name"),
                chart_id=_expect(fields["chart"], str, "chart"),
                selection={
                    _expect(column, str, "column"): _expect(label, str, "fragment")
                    for column, label in _expect(
                        fields["selection"], dict, "selection"
                    ).items()
                },
            )
        )

    return Project(
        name=_expect(data["name"], str, "project name"),
        description=_expect(data["description"], str, "description"),
        metadata={
            _expect(key, str, "metadata key"): _expect(value, str, "metadata value")
            for key, value in _expect(data["metadata"], dict, "metadata").items()
        },
        opportunities=tuple(opportunities),
        funnel=None if data["funnel"] is None else _parse_funnel(data["funnel"]),
        needs=tuple(needs),
        metrics=tuple(metrics),
        links=tuple(links),
        benchmarks=tuple(benchmarks),
        target_specs=tuple(target_specs),
        charts=tuple(charts),
        concepts=tuple(concepts),
        pugh_matrices=tuple(
            _parse_pugh(raw, index)
            for index, raw in enumerate(
                _expect(data["pugh_matrices"], list, "pugh_matrices")
            )
        ),
        scoring_matrices=tuple(
            _parse_scoring(raw, index)
            for index, raw in enumerate(
                _expect(data["scoring_matrices"], list, "scoring_matrices")
            )
        ),
    )


def project_from_json(payload: Union[bytes, str]) -> Project:
    if isinstance(payload, bytes):
        payload = payload.decode("utf-8")
    try:
        document = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise PersistenceError(
            f"malformed project file: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    document = _fields(document, "project file", ["format_version", "project"])
    version = document["format_version"]
    if version != FORMAT_VERSION:
        raise PersistenceError(
            f"unsupported format_version {version!r}; this build reads "
            f"version {FORMAT_VERSION}"
        )
    return project_from_dict(document["project"])


def save_project(
    project: Project, destination: Optional[Union[str, os.PathLike]] = None
) -> bytes:
    """Serialize; also write to ``destination`` when given.  Returns bytes."""
    payload = project_to_json(project)
    if destination is not None:
        Path(destination).write_bytes(payload)
    return payload


def load_project(source: Union[str, os.PathLike]) -> Project:
    """Read and parse a project file from disk."""
    path = Path(source)
    try:
        payload = path.read_bytes()
    except OSError as exc:
        raise PersistenceError(f"cannot read project file {path}: {exc}") from exc
    return project_from_json(payload)
