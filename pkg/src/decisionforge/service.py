"""HTTP service exposing one project over a small JSON API.

One authoritative in-memory project sits behind a revision token.  Reads
hand out snapshots (the model is immutable, so sharing is safe); every
mutation must quote the revision it saw, is re-validated against the full
model rules, and bumps the token.  A stale revision gets a 409 and changes
nothing -- callers refetch and retry.

Every aggregate in a response is recomputed from the project after the
mutation; no cached totals, ranks, or findings are ever served.
"""

from __future__ import annotations

import dataclasses
import os
import threading
from fractions import Fraction
from typing import Callable, Optional, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .errors import SelectionError, SensitivityError
from .model import (
    Concept,
    Project,
    PughMatrix,
    ScoringMatrix,
    validate_project,
)
from .numbers import ExactDecimal, format_exact, to_fraction
from .persistence import project_to_dict, weight_to_text
from .selection import (
    ScoreResult,
    ScreenResult,
    audit,
    combine_concepts,
    describe_finding,
    score,
    screen,
)
from .sensitivity import all_crossings, apply_perturbation, rank_trajectory

DEFAULT_BIND = "127.0.0.1:8157"
BIND_ENV_VAR = "DECISIONFORGE_BIND"


class StaleRevision(Exception):
    def __init__(self, current: int):
        super().__init__(f"stale revision; current is {current}")
        self.current = current


class MutationRejected(Exception):
    """The mutated project no longer validates; nothing was committed."""

    def __init__(self, issues):
        super().__init__("validation failed")
        self.issues = issues


class ProjectStore:
    """The single authoritative project plus its monotonic revision token."""

    def __init__(self, project: Project):
        self._lock = threading.Lock()
        self._project = project
        self._revision = 1

    def read(self) -> tuple[Project, int]:
        with self._lock:
            return self._project, self._revision

    def mutate(
        self, revision: int, change: Callable[[Project], Project]
    ) -> tuple[Project, int]:
        """Apply ``change`` if ``revision`` is current; validate; commit."""
        with self._lock:
            if revision != self._revision:
                raise StaleRevision(self._revision)
            candidate = change(self._project)
            issues = validate_project(candidate)
            if issues:
                raise MutationRejected(issues)
            self._project = candidate
            self._revision += 1
            return self._project, self._revision


def resolve_bind(flag: Optional[str] = None) -> tuple[str, int]:
    """Bind address: explicit flag, then the environment, then the default."""
    text = flag or os.environ.get(BIND_ENV_VAR) or DEFAULT_BIND
    host, colon, port_text = text.rpartition(":")
    if not colon:
        raise ValueError(f"bind address must look like host:port, got {text!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise ValueError(f"bind address has a non-numeric port: {text!r}") from None
    if not host:
        raise ValueError(f"bind address is missing a host: {text!r}")
    return host, port


# --------------------------------------------------------------------------
# JSON shaping.  Exact values go over the wire as decimal strings so the
# browser never touches them with floating point.


def _text(value) -> Optional[str]:
    if value is None:
        return None
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (ExactDecimal, Fraction)):
        return format_exact(value)
    return str(value)


def _screen_payload(result: ScreenResult) -> list[dict]:
    return [
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
    ]


def _score_payload(result: ScoreResult) -> list[dict]:
    return [
        {
            "concept": row.concept_id,
            "weighted": {
                criterion: format_exact(cell)
                for criterion, cell in row.weighted.items()
            },
            "total": format_exact(row.total),
            "rank": row.rank,
            "decision": row.decision,
        }
        for row in result.rows
    ]


def _weights_payload(matrix: ScoringMatrix) -> dict:
    return {
        criterion.id: None if criterion.weight is None
        else weight_to_text(criterion.weight)
        for criterion in matrix.criteria
    }


def _scoring_body(matrix: ScoringMatrix, revision: int) -> dict:
    try:
        rows = _score_payload(score(matrix))
    except SelectionError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {
        "revision": revision,
        "matrix": matrix.id,
        "weights": _weights_payload(matrix),
        "rows": rows,
    }


def _find_scoring(project: Project, matrix_id: str) -> ScoringMatrix:
    for matrix in project.scoring_matrices:
        if matrix.id == matrix_id:
            return matrix
    raise HTTPException(status_code=404, detail=f"no scoring matrix {matrix_id!r}")


def _find_pugh(project: Project, matrix_id: str) -> PughMatrix:
    for matrix in project.pugh_matrices:
        if matrix.id == matrix_id:
            return matrix
    raise HTTPException(status_code=404, detail=f"no screening matrix {matrix_id!r}")


def _replace_scoring(project: Project, matrix: ScoringMatrix) -> Project:
    matrices = tuple(
        matrix if existing.id == matrix.id else existing
        for existing in project.scoring_matrices
    )
    return dataclasses.replace(project, scoring_matrices=matrices)


def _require(payload: dict, field: str):
    if field not in payload:
        raise HTTPException(status_code=422, detail=f"request is missing {field!r}")
    return payload[field]


def _require_revision(payload: dict) -> int:
    revision = _require(payload, "revision")
    if not isinstance(revision, int) or isinstance(revision, bool):
        raise HTTPException(status_code=422, detail="revision must be an integer")
    return revision


def _parse_weight(value) -> Union[Fraction, int]:
    if isinstance(value, bool) or value is None:
        raise HTTPException(status_code=422, detail=f"weight {value!r} is not a number")
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return to_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def create_app(project: Project, store: Optional[ProjectStore] = None) -> FastAPI:
    """Build the API around one project (or an existing store)."""
    issues = validate_project(project)
    if issues:
        raise ValueError(
            "project does not validate: " + "; ".join(str(issue) for issue in issues)
        )
    app = FastAPI(title="decisionforge", docs_url=None, redoc_url=None)
    app.state.store = store if store is not None else ProjectStore(project)

    def current() -> tuple[Project, int]:
        return app.state.store.read()

    @app.exception_handler(StaleRevision)
    async def _stale(request: Request, exc: StaleRevision):
        return JSONResponse(
            status_code=409,
            content={"error": "stale revision", "revision": exc.current},
        )

    @app.exception_handler(MutationRejected)
    async def _rejected(request: Request, exc: MutationRejected):
        return JSONResponse(
            status_code=422,
            content={
                "error": "validation failed",
                "issues": [
                    {
                        "severity": issue.severity,
                        "location": issue.location,
                        "message": issue.message,
                    }
                    for issue in exc.issues
                ],
            },
        )

    @app.get("/api/project")
    async def get_project():
        project, revision = current()
        return {"revision": revision, "project": project_to_dict(project)}

    @app.get("/api/results/screening/{matrix_id}")
    async def get_screening(matrix_id: str):
        project, revision = current()
        matrix = _find_pugh(project, matrix_id)
        result = screen(matrix)
        return {
            "revision": revision,
            "matrix": matrix.id,
            "reference": matrix.reference_id,
            "rows": _screen_payload(result),
        }

    @app.get("/api/results/scoring/{matrix_id}")
    async def get_scoring(matrix_id: str):
        project, revision = current()
        matrix = _find_scoring(project, matrix_id)
        return _scoring_body(matrix, revision)

    @app.patch("/api/scoring/{matrix_id}/ratings")
    async def patch_rating(matrix_id: str, request: Request):
        payload = await request.json()
        revision = _require_revision(payload)
        concept = _require(payload, "concept")
        criterion = _require(payload, "criterion")
        rating = _require(payload, "rating")
        if not isinstance(rating, int) or isinstance(rating, bool):
            raise HTTPException(status_code=422, detail="rating must be an integer")

        def change(project: Project) -> Project:
            matrix = _find_scoring(project, matrix_id)
            if criterion not in matrix.ratings:
                raise HTTPException(
                    status_code=404,
                    detail=f"matrix {matrix_id!r} has no rated criterion {criterion!r}",
                )
            if concept not in matrix.concept_ids:
                raise HTTPException(
                    status_code=404,
                    detail=f"matrix {matrix_id!r} has no concept {concept!r}",
                )
            ratings = {name: dict(cells) for name, cells in matrix.ratings.items()}
            ratings[criterion][concept] = rating
            return _replace_scoring(
                project, dataclasses.replace(matrix, ratings=ratings)
            )

        project, new_revision = app.state.store.mutate(revision, change)
        return _scoring_body(_find_scoring(project, matrix_id), new_revision)

    @app.patch("/api/scoring/{matrix_id}/weights")
    async def patch_weight(matrix_id: str, request: Request):
        payload = await request.json()
        revision = _require_revision(payload)
        criterion = _require(payload, "criterion")
        weight = _parse_weight(_require(payload, "weight"))

        def change(project: Project) -> Project:
            matrix = _find_scoring(project, matrix_id)
            try:
                perturbed = apply_perturbation(matrix, criterion, weight)
            except SensitivityError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            return _replace_scoring(project, perturbed)

        project, new_revision = app.state.store.mutate(revision, change)
        return _scoring_body(_find_scoring(project, matrix_id), new_revision)

    @app.get("/api/audit/{matrix_id}")
    async def get_audit(matrix_id: str):
        project, revision = current()
        matrix = None
        for candidate in (*project.pugh_matrices, *project.scoring_matrices):
            if candidate.id == matrix_id:
                matrix = candidate
                break
        if matrix is None:
            raise HTTPException(status_code=404, detail=f"no matrix {matrix_id!r}")
        try:
            findings = audit(matrix)
        except SelectionError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "revision": revision,
            "matrix": matrix.id,
            "findings": [
                {
                    "kind": finding.kind,
                    "subject": finding.subject,
                    "declared": _text(finding.declared),
                    "computed": _text(finding.computed),
                    "note": describe_finding(finding),
                }
                for finding in findings
            ],
        }

    @app.get("/api/sensitivity/{matrix_id}")
    async def get_sensitivity(matrix_id: str, criterion: str, samples: int = 11):
        project, revision = current()
        matrix = _find_scoring(project, matrix_id)
        if criterion not in {item.id for item in matrix.criteria}:
            raise HTTPException(
                status_code=404,
                detail=f"matrix {matrix_id!r} has no criterion {criterion!r}",
            )
        try:
            reports = all_crossings(matrix, criterion)
            trajectory = rank_trajectory(matrix, criterion, samples)
        except SensitivityError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        target = next(item for item in matrix.criteria if item.id == criterion)
        return {
            "revision": revision,
            "matrix": matrix.id,
            "criterion": criterion,
            "current_weight": None if target.weight is None
            else weight_to_text(target.weight),
            "crossings": [
                {
                    "pair": list(point.pair),
                    "weight": point.weight_text(),
                    "leader_below": point.leader_below,
                    "leader_above": point.leader_above,
                }
                for report in reports
                for point in report.points
            ],
            "always_tied": [list(report.pair) for report in reports if report.always_tied],
            "trajectory": [
                {
                    "weight": format_exact(point.weight),
                    "ranks": dict(point.ranks),
                }
                for point in trajectory
            ],
        }

    @app.post("/api/concepts/combine")
    async def post_combine(request: Request):
        payload = await request.json()
        revision = _require_revision(payload)
        a_id = _require(payload, "a")
        b_id = _require(payload, "b")
        resolution = payload.get("resolution") or {}
        if not isinstance(resolution, dict):
            raise HTTPException(status_code=422, detail="resolution must be an object")
        combined: dict[str, Optional[Concept]] = {"concept": None}

        def change(project: Project) -> Project:
            by_id = {concept.id: concept for concept in project.concepts}
            for concept_id in (a_id, b_id):
                if concept_id not in by_id:
                    raise HTTPException(
                        status_code=404, detail=f"no concept {concept_id!r}"
                    )
            try:
                concept = combine_concepts(
                    by_id[a_id],
                    by_id[b_id],
                    resolution,
                    concept_id=payload.get("id"),
                    name=payload.get("name"),
                )
            except SelectionError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            combined["concept"] = concept
            return dataclasses.replace(
                project, concepts=(*project.concepts, concept)
            )

        _, new_revision = app.state.store.mutate(revision, change)
        concept = combined["concept"]
        return {
            "revision": new_revision,
            "concept": {
                "id": concept.id,
                "name": concept.name,
                "chart": concept.chart_id,
                "selection": dict(concept.selection),
            },
        }

    return app


def serve(project: Project, bind: Optional[str] = None) -> None:
    """Run the service until interrupted.  Flag beats DECISIONFORGE_BIND."""
    import uvicorn

    host, port = resolve_bind(bind)
    uvicorn.run(create_app(project), host=host, port=port, log_level="info")
