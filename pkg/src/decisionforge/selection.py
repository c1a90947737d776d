"""Concept selection: relative screening, weighted scoring, and auditing.

Screening (:func:`screen`) tallies better/same/worse judgments against a
reference concept; scoring (:func:`score`) computes exact weighted totals
from 1-5 ratings.  Both rank by *competition ranking*: tied entries share
the smallest rank and the next rank skips (two concepts tied at the top rank
1, 1 and the next concept ranks 3).

Worksheets carry declared aggregates next to their inputs.  Computation here
never trusts those -- ranks and decisions always come from recomputed values
-- and :func:`audit` reports every declared aggregate that recomputation
contradicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import SelectionError
from .model import (
    Concept,
    DeclaredScoreRow,
    DeclaredScreenRow,
    PughMatrix,
    ScoringMatrix,
    Weight,
    WeightedCriterion,
    weight_fraction,
)
from .numbers import ExactDecimal, exact_number, format_exact

# Resolution tokens for combine_concepts.
FROM_A = "from_a"
FROM_B = "from_b"


def competition_rank(keys: Mapping[str, object]) -> dict[str, int]:
    """rank(x) = 1 + number of entries strictly better (larger key)."""
    values = list(keys.values())
    return {
        item: 1 + sum(1 for other in values if other > key)
        for item, key in keys.items()
    }


@dataclass(frozen=True)
class ScreenRow:
    concept_id: str
    pluses: int
    sames: int
    minuses: int
    net: int
    rank: int
    continue_: bool


@dataclass(frozen=True)
class ScreenResult:
    matrix_id: str
    rows: tuple[ScreenRow, ...]

    def row(self, concept_id: str) -> ScreenRow:
        for row in self.rows:
            if row.concept_id == concept_id:
                return row
        raise KeyError(f"no screening row for concept {concept_id!r}")


def screen(
    matrix: PughMatrix,
    keep: Optional[Callable[[ScreenRow], bool]] = None,
) -> ScreenResult:
    """Tally and rank a screening matrix.

    ``keep`` decides the continue flag from a tallied row; the default keeps
    concepts with a strictly positive net score.
    """
    nets: dict[str, int] = {}
    tallies: dict[str, tuple[int, int, int]] = {}
    for concept_id in matrix.concept_ids:
        pluses = sames = minuses = 0
        for criterion in matrix.criteria:
            mark = matrix.marks[criterion][concept_id]
            if mark == 1:
                pluses += 1
            elif mark == -1:
                minuses += 1
            else:
                sames += 1
        tallies[concept_id] = (pluses, sames, minuses)
        nets[concept_id] = pluses - minuses
    ranks = competition_rank(nets)

    rows = []
    for concept_id in matrix.concept_ids:
        pluses, sames, minuses = tallies[concept_id]
        draft = ScreenRow(
            concept_id=concept_id,
            pluses=pluses,
            sames=sames,
            minuses=minuses,
            net=nets[concept_id],
            rank=ranks[concept_id],
            continue_=False,
        )
        decide = keep if keep is not None else (lambda row: row.net > 0)
        rows.append(
            ScreenRow(
                concept_id=concept_id,
                pluses=pluses,
                sames=sames,
                minuses=minuses,
                net=nets[concept_id],
                rank=ranks[concept_id],
                continue_=bool(decide(draft)),
            )
        )
    return ScreenResult(matrix_id=matrix.id, rows=tuple(rows))


@dataclass(frozen=True)
class ScoreRow:
    concept_id: str
    weighted: Mapping[str, Union[ExactDecimal, Fraction]]  # criterion id -> cell
    total: Union[ExactDecimal, Fraction]
    rank: int
    decision: str  # develop | drop


@dataclass(frozen=True)
class ScoreResult:
    matrix_id: str
    rows: tuple[ScoreRow, ...]

    def row(self, concept_id: str) -> ScoreRow:
        for row in self.rows:
            if row.concept_id == concept_id:
                return row
        raise KeyError(f"no scoring row for concept {concept_id!r}")


def score(matrix: ScoringMatrix, develop_rank: int = 1) -> ScoreResult:
    """Exact weighted totals, competition ranks, and develop/drop decisions.

    Arithmetic runs in rational numbers and results come back as exact
    decimals whenever they terminate.  Weighted cells are reported for every
    criterion: a leaf's cell is weight x rating, a parent's is the sum over
    its leaves.
    """
    leaves = matrix.leaf_criteria()
    for leaf in leaves:
        if leaf.weight is None:
            raise SelectionError(
                f"cannot score matrix {matrix.id!r}: criterion {leaf.id!r} "
                "has no weight"
            )
    totals: dict[str, Fraction] = {}
    weighted: dict[str, dict[str, Fraction]] = {}
    for concept_id in matrix.concept_ids:
        cells: dict[str, Fraction] = {}
        for leaf in leaves:
            rating = matrix.ratings[leaf.id][concept_id]
            cells[leaf.id] = weight_fraction(leaf.weight) * rating
        for criterion in matrix.criteria:
            if criterion.id not in cells:
                cells[criterion.id] = sum(
                    (cells[leaf.id] for leaf in matrix.leaves_under(criterion.id)),
                    Fraction(0),
                )
        weighted[concept_id] = cells
        totals[concept_id] = sum((cells[leaf.id] for leaf in leaves), Fraction(0))

    ranks = competition_rank(totals)
    rows = tuple(
        ScoreRow(
            concept_id=concept_id,
            weighted={
                criterion.id: exact_number(weighted[concept_id][criterion.id])
                for criterion in matrix.criteria
            },
            total=exact_number(totals[concept_id]),
            rank=ranks[concept_id],
            decision="develop" if ranks[concept_id] <= develop_rank else "drop",
        )
        for concept_id in matrix.concept_ids
    )
    return ScoreResult(matrix_id=matrix.id, rows=rows)


@dataclass(frozen=True)
class AuditFinding:
    """One declared value that recomputation contradicts."""

    matrix_id: str
    kind: str  # plus_count | same_count | minus_count | net | rank | continue
    #           | weighted | total | decision
    subject: str  # concept id, or "concept/criterion" for weighted cells
    declared: object
    computed: object

    def locator(self) -> str:
        return f"{self.matrix_id}:{self.subject}:{self.kind}"


def _values_differ(declared: object, computed: object) -> bool:
    if isinstance(declared, (ExactDecimal, Fraction, int)) and isinstance(
        computed, (ExactDecimal, Fraction, int)
    ):
        return weight_fraction_any(declared) != weight_fraction_any(computed)
    return declared != computed


def weight_fraction_any(value: Union[ExactDecimal, Fraction, int]) -> Fraction:
    if isinstance(value, ExactDecimal):
        return value.as_fraction()
    return Fraction(value)


def _audit_screen(matrix: PughMatrix) -> list[AuditFinding]:
    result = screen(matrix)
    findings: list[AuditFinding] = []
    for concept_id, declared in matrix.declared.items():
        row = result.row(concept_id)
        checks: Sequence[tuple[str, Optional[object], object]] = (
            ("plus_count", declared.pluses, row.pluses),
            ("same_count", declared.sames, row.sames),
            ("minus_count", declared.minuses, row.minuses),
            ("net", declared.net, row.net),
            ("rank", declared.rank, row.rank),
            ("continue", declared.continue_, row.continue_),
        )
        for kind, declared_value, computed_value in checks:
            if declared_value is not None and _values_differ(
                declared_value, computed_value
            ):
                findings.append(
                    AuditFinding(
                        matrix_id=matrix.id,
                        kind=kind,
                        subject=concept_id,
                        declared=declared_value,
                        computed=computed_value,
                    )
                )
    return findings


def _audit_score(matrix: ScoringMatrix) -> list[AuditFinding]:
    result = score(matrix)
    findings: list[AuditFinding] = []
    for concept_id, declared in matrix.declared.items():
        row = result.row(concept_id)
        for criterion_id, declared_cell in declared.weighted.items():
            computed_cell = row.weighted[criterion_id]
            if _values_differ(declared_cell, computed_cell):
                findings.append(
                    AuditFinding(
                        matrix_id=matrix.id,
                        kind="weighted",
                        subject=f"{concept_id}/{criterion_id}",
                        declared=declared_cell,
                        computed=computed_cell,
                    )
                )
        checks: Sequence[tuple[str, Optional[object], object]] = (
            ("total", declared.total, row.total),
            ("rank", declared.rank, row.rank),
            ("decision", declared.decision, row.decision),
        )
        for kind, declared_value, computed_value in checks:
            if declared_value is not None and _values_differ(
                declared_value, computed_value
            ):
                findings.append(
                    AuditFinding(
                        matrix_id=matrix.id,
                        kind=kind,
                        subject=concept_id,
                        declared=declared_value,
                        computed=computed_value,
                    )
                )
    return findings


def audit(matrix: Union[PughMatrix, ScoringMatrix]) -> list[AuditFinding]:
    """Recompute a matrix and list every declared aggregate that disagrees.

    An empty list means the worksheet is internally consistent.  A matrix
    with no declared overlay has nothing to check, which is an error rather
    than a vacuous pass.
    """
    if not matrix.declared:
        raise SelectionError(f"nothing to audit: matrix {matrix.id!r} declares no results")
    if isinstance(matrix, PughMatrix):
        return _audit_screen(matrix)
    return _audit_score(matrix)


def describe_finding(finding: AuditFinding) -> str:
    def show(value: object) -> str:
        if isinstance(value, (ExactDecimal, Fraction)):
            return format_exact(value)
        return str(value)

    return (
        f"{finding.locator()}: declared {show(finding.declared)}, "
        f"computed {show(finding.computed)}"
    )


def combine_concepts(
    a: Concept,
    b: Concept,
    resolution: Optional[Mapping[str, str]] = None,
    concept_id: Optional[str] = None,
    name: Optional[str] = None,
) -> Concept:
    """Merge two concepts from the same chart into a new one.

    ``resolution`` settles each column: ``FROM_A``, ``FROM_B``, or an explicit
    fragment label.  Columns where the parents agree need no entry (an entry
    may still override them).  Any disagreeing column left unresolved is an
    error that names all such columns at once.
    """
    if a.chart_id != b.chart_id:
        raise SelectionError(
            f"concepts {a.id!r} and {b.id!r} come from different charts "
            f"({a.chart_id!r} vs {b.chart_id!r})"
        )
    resolution = dict(resolution or {})
    for column in resolution:
        if column not in a.selection:
            raise SelectionError(
                f"resolution names column {column!r} which chart {a.chart_id!r} "
                "does not have"
            )

    merged: dict[str, str] = {}
    unresolved: list[str] = []
    for column, from_a in a.selection.items():
        from_b = b.selection[column]
        choice = resolution.get(column)
        if choice == FROM_A:
            merged[column] = from_a
        elif choice == FROM_B:
            merged[column] = from_b
        elif choice is not None:
            merged[column] = choice
        elif from_a == from_b:
            merged[column] = from_a
        else:
            unresolved.append(column)
    if unresolved:
        raise SelectionError(
            "unresolved disagreeing columns: " + ", ".join(unresolved)
        )
    return Concept(
        id=concept_id if concept_id is not None else f"{a.id}{b.id}",
        name=name if name is not None else f"{a.name} + {b.name}",
        chart_id=a.chart_id,
        selection=merged,
    )


def derive_pugh(
    matrix: ScoringMatrix,
    reference_id: str,
    matrix_id: Optional[str] = None,
) -> PughMatrix:
    """Collapse cardinal 1-5 ratings into a relative screening grid.

    Each cell is the sign of (concept rating - reference rating) on that
    criterion.  The derived matrix has no declared overlay; it is a fresh
    computation, not a worksheet.
    """
    if reference_id not in matrix.concept_ids:
        raise SelectionError(
            f"reference {reference_id!r} is not a concept of matrix {matrix.id!r}"
        )
    leaves = matrix.leaf_criteria()
    marks: dict[str, dict[str, int]] = {}
    for leaf in leaves:
        row = matrix.ratings[leaf.id]
        reference_rating = row[reference_id]
        marks[leaf.id] = {
            concept_id: _sign(row[concept_id] - reference_rating)
            for concept_id in matrix.concept_ids
        }
    return PughMatrix(
        id=matrix_id if matrix_id is not None else f"{matrix.id}-relative",
        criteria=tuple(leaf.id for leaf in leaves),
        concept_ids=matrix.concept_ids,
        reference_id=reference_id,
        marks=marks,
    )


def _sign(value: int) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0
