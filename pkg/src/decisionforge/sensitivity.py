"""Weight sensitivity: what happens to the ranking when one weight moves.

Moving a single criterion weight ``w`` while rescaling the remaining weights
proportionally (so they keep summing to 1) makes every concept's total an
affine function of ``w``::

    total_c(w) = rho_c * w + A_c * (1 - w)

where ``rho_c`` is the concept's rating response on the swept criterion and
``A_c`` the renormalized rest-of-matrix total.  Two concepts' totals are
therefore equal at no more than one weight, which :func:`crossing_points`
solves exactly in rational arithmetic.  :func:`rank_trajectory` samples the
same family of perturbed matrices for table/plot export, capped at w = 0.99
because w -> 1 degenerates (the rest of the matrix loses all weight).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import SensitivityError
from .model import ScoringMatrix, WeightedCriterion, weight_fraction
from .numbers import ExactDecimal, exact_number, format_exact, to_fraction
from .selection import ScoreResult, score

WeightLike = Union[ExactDecimal, Fraction, int, str]


def _root_criterion(matrix: ScoringMatrix, criterion_id: str) -> WeightedCriterion:
    try:
        criterion = matrix.criterion(criterion_id)
    except KeyError as exc:
        raise SensitivityError(
            f"matrix {matrix.id!r} has no criterion {criterion_id!r}"
        ) from exc
    if criterion.parent is not None:
        raise SensitivityError(
            f"criterion {criterion_id!r} is not a root; perturb its root "
            f"{criterion.parent!r} instead"
        )
    for other in matrix.criteria:
        if other.weight is None:
            raise SensitivityError(
                f"matrix {matrix.id!r} criterion {other.id!r} has no weight; "
                "assign weights before running sensitivity"
            )
    return criterion


def apply_perturbation(
    matrix: ScoringMatrix, criterion_id: str, new_weight: WeightLike
) -> ScoringMatrix:
    """Set one root weight and rescale the other roots proportionally.

    The untouched roots share factor (1-new)/(1-old), so the roots sum to
    exactly 1 again; descendants of a rescaled root scale with their root.
    Ratings and declared overlays are untouched -- a declared overlay keeps
    describing the original worksheet, and auditing a perturbed matrix will
    say exactly that.
    """
    target = _root_criterion(matrix, criterion_id)
    new = to_fraction(new_weight)
    if not 0 <= new < 1:
        raise SensitivityError(f"new weight must lie in [0, 1), got {new}")
    old = weight_fraction(target.weight)
    if old == 1:
        raise SensitivityError(
            f"degenerate renormalization: criterion {criterion_id!r} already "
            "carries the whole weight, nothing remains to rescale"
        )
    if new == old:
        return matrix

    has_children = any(c.parent == criterion_id for c in matrix.criteria)
    if old == 0 and has_children:
        raise SensitivityError(
            f"criterion {criterion_id!r} has weight 0; its children cannot be "
            "rescaled to a positive weight"
        )
    factors: dict[str, Fraction] = {}
    for root in matrix.root_criteria():
        if root.id == criterion_id:
            factors[root.id] = new / old if old != 0 else Fraction(0)
        else:
            factors[root.id] = (1 - new) / (1 - old)

    def root_of(criterion: WeightedCriterion) -> str:
        cursor = criterion
        while cursor.parent is not None:
            cursor = matrix.criterion(cursor.parent)
        return cursor.id

    rescaled = []
    for criterion in matrix.criteria:
        if criterion.id == criterion_id:
            weight = new
        else:
            weight = weight_fraction(criterion.weight) * factors[root_of(criterion)]
        rescaled.append(
            WeightedCriterion(
                id=criterion.id,
                name=criterion.name,
                weight=exact_number(weight),
                parent=criterion.parent,
            )
        )
    return ScoringMatrix(
        id=matrix.id,
        criteria=tuple(rescaled),
        concept_ids=matrix.concept_ids,
        ratings=matrix.ratings,
        declared=matrix.declared,
    )


def _response_line(
    matrix: ScoringMatrix, criterion_id: str, concept_id: str
) -> tuple[Fraction, Fraction]:
    """Coefficients (rho, A) of total(w) = rho*w + A*(1-w) for one concept."""
    target = _root_criterion(matrix, criterion_id)
    swept_weight = weight_fraction(target.weight)
    if swept_weight == 1:
        raise SensitivityError(
            f"degenerate renormalization: criterion {criterion_id!r} already "
            "carries the whole weight"
        )
    under = {leaf.id for leaf in matrix.leaves_under(criterion_id)}
    total = Fraction(0)
    swept_part = Fraction(0)
    for leaf in matrix.leaf_criteria():
        contribution = (
            weight_fraction(leaf.weight) * matrix.ratings[leaf.id][concept_id]
        )
        total += contribution
        if leaf.id in under:
            swept_part += contribution
    if under == {criterion_id}:
        # The swept criterion is itself a leaf: the response is its rating,
        # whatever the current weight (including 0).
        rho = Fraction(matrix.ratings[criterion_id][concept_id])
    elif swept_weight == 0:
        raise SensitivityError(
            f"criterion {criterion_id!r} has weight 0; the split among its "
            "children is undefined"
        )
    else:
        rho = swept_part / swept_weight
    rest = (total - swept_part) / (1 - swept_weight)
    return rho, rest


@dataclass(frozen=True)
class CrossingPoint:
    criterion_id: str
    weight: Fraction
    pair: tuple[str, str]
    leader_below: Optional[str]  # higher-total concept just below the crossing
    leader_above: Optional[str]  # higher-total concept just above it

    def weight_text(self) -> str:
        """The crossing weight as a decimal (9 fractional digits if needed)."""
        return format_exact(self.weight)


@dataclass(frozen=True)
class CrossingReport:
    criterion_id: str
    pair: tuple[str, str]
    always_tied: bool
    points: tuple[CrossingPoint, ...]


def crossing_points(
    matrix: ScoringMatrix, criterion_id: str, pair: tuple[str, str]
) -> CrossingReport:
    """Solve total_i(w) = total_j(w) exactly for one concept pair.

    The difference is affine in w, so there is at most one crossing in
    [0, 1).  Concepts whose total functions coincide are reported as always
    tied rather than as a crossing.
    """
    first, second = pair
    for concept_id in pair:
        if concept_id not in matrix.concept_ids:
            raise SensitivityError(
                f"matrix {matrix.id!r} has no concept {concept_id!r}"
            )
    rho_i, rest_i = _response_line(matrix, criterion_id, first)
    rho_j, rest_j = _response_line(matrix, criterion_id, second)
    delta_rho = rho_i - rho_j
    delta_rest = rest_i - rest_j

    if delta_rho == delta_rest:
        # difference(w) is the constant delta_rest
        return CrossingReport(
            criterion_id=criterion_id,
            pair=(first, second),
            always_tied=delta_rest == 0,
            points=(),
        )
    root = delta_rest / (delta_rest - delta_rho)
    if not 0 <= root < 1:
        return CrossingReport(
            criterion_id=criterion_id, pair=(first, second), always_tied=False, points=()
        )
    slope = delta_rho - delta_rest  # sign of difference above the crossing
    leader_above = first if slope > 0 else second
    leader_below = None
    if root > 0:
        leader_below = second if slope > 0 else first
    point = CrossingPoint(
        criterion_id=criterion_id,
        weight=root,
        pair=(first, second),
        leader_below=leader_below,
        leader_above=leader_above,
    )
    return CrossingReport(
        criterion_id=criterion_id,
        pair=(first, second),
        always_tied=False,
        points=(point,),
    )


def all_crossings(matrix: ScoringMatrix, criterion_id: str) -> list[CrossingReport]:
    """Crossing reports for every concept pair, in concept-list order."""
    reports = []
    for i, first in enumerate(matrix.concept_ids):
        for second in matrix.concept_ids[i + 1 :]:
            reports.append(crossing_points(matrix, criterion_id, (first, second)))
    return reports


SWEEP_CAP = Fraction(99, 100)


@dataclass(frozen=True)
class TrajectoryPoint:
    weight: Fraction
    ranks: Mapping[str, int]  # concept id -> competition rank at this weight


def rank_trajectory(
    matrix: ScoringMatrix, criterion_id: str, samples: int
) -> list[TrajectoryPoint]:
    """Ranks at evenly spaced weights from 0 to 0.99 inclusive."""
    if samples < 2:
        raise SensitivityError(f"samples must be at least 2, got {samples}")
    points = []
    for index in range(samples):
        weight = SWEEP_CAP * Fraction(index, samples - 1)
        result: ScoreResult = score(apply_perturbation(matrix, criterion_id, weight))
        points.append(
            TrajectoryPoint(
                weight=weight,
                ranks={row.concept_id: row.rank for row in result.rows},
            )
        )
    return points
