"""End-to-end gate: one printed PASS/FAIL line per criterion.

Everything here checks externally observable behavior on the bundled
worked example at zero tolerance (exact arithmetic) except the crossing
suite, which grants its bisection oracle 1e-9.  The six generated-case
suites live in this file only and feed the summary criterion at the
bottom.
"""

import math
import random
import time
from collections import Counter
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from decisionforge.constraints import (
    Qualitative,
    is_numeric,
    parse_constraint,
    render_constraint,
)
from decisionforge.model import (
    MorphChart,
    MorphColumn,
    PughMatrix,
    ScoringMatrix,
    WeightedCriterion,
)
from decisionforge.morpho import combination_count, enumerate_concepts
from decisionforge.needspec import project_consistency_report
from decisionforge.numbers import ExactDecimal, format_exact
from decisionforge.persistence import load_project, save_project
from decisionforge.report import generate_report
from decisionforge.sample import _TARGETS, sample_project
from decisionforge.selection import (
    audit,
    competition_rank,
    score,
    screen,
    weight_fraction_any,
)
from decisionforge.sensitivity import SWEEP_CAP, apply_perturbation, crossing_points
from decisionforge.tournament import run_funnel


# --------------------------------------------------------------------------
# worked-example criteria


def test_screening_reproduces_worksheet(acceptance):
    with acceptance("relative screening reproduces every tally, rank, and keep call"):
        matrix = sample_project().pugh_matrices[0]
        started = time.perf_counter()
        result = screen(matrix)
        elapsed = time.perf_counter() - started
        table = {
            row.concept_id: (
                row.pluses, row.sames, row.minuses,
                row.net, row.rank, row.continue_,
            )
            for row in result.rows
        }
        assert table == {
            "A": (1, 3, 4, -3, 6, False),
            "B": (0, 8, 0, 0, 4, False),
            "C": (1, 5, 2, -1, 5, False),
            "D": (4, 2, 2, 2, 1, True),
            "E": (3, 3, 2, 1, 3, True),
            "F": (3, 4, 1, 2, 1, True),
        }
        assert elapsed < 1.0


def test_weighted_totals_are_exact(acceptance):
    with acceptance("weighted totals are exact decimals and pick the combined concept"):
        result = score(sample_project().scoring_matrices[0])
        rows = {row.concept_id: row for row in result.rows}
        assert rows["D"].total == ExactDecimal("3.75")
        assert rows["F"].total == ExactDecimal("4.1")
        assert rows["DF"].total == ExactDecimal("4.35")
        assert format_exact(rows["D"].total) == "3.75"
        assert format_exact(rows["F"].total) == "4.1"
        assert format_exact(rows["DF"].total) == "4.35"
        assert rows["DF"].rank == 1
        assert rows["DF"].decision == "develop"


def test_audit_finds_the_single_slip(acceptance):
    with acceptance("auditing flags the one transcription slip and the recomputed tie"):
        matrix = sample_project().scoring_matrices[0]
        findings = audit(matrix)
        totals = [f for f in findings if f.kind == "total"]
        assert len(totals) == 1
        assert totals[0].subject == "E"
        assert totals[0].declared == ExactDecimal("3.45")
        assert totals[0].computed == ExactDecimal("3.75")
        ranks = {row.concept_id: row.rank for row in score(matrix).rows}
        assert ranks["D"] == 3 and ranks["E"] == 3


def test_chart_combinations(acceptance):
    with acceptance("chart combinations count to 1152 and enumerate distinctly"):
        chart = sample_project().charts[0]
        assert combination_count(chart) == 1152
        selections = list(enumerate_concepts(chart))
        assert len(selections) == 1152
        distinct = {tuple(sorted(sel.items())) for sel in selections}
        assert len(distinct) == 1152


def test_funnel_names_the_survivor(acceptance):
    with acceptance("funnel recomputation isolates one survivor and the undercount"):
        project = sample_project()
        report = run_funnel(project)
        names = {opp.id: opp.name for opp in project.opportunities}
        assert {names[oid] for oid in report.survivors} == {
            "Advanced digital stethoscope"
        }
        undercounts = [
            d for d in report.discrepancies
            if d.stage == "Initial screening" and d.kind == "declared-count"
        ]
        assert len(undercounts) == 1
        assert "10" in undercounts[0].detail and "12" in undercounts[0].detail


_NUMERIC_MARGINALS = {1, 2, 4, 5, 9, 10, 11, 12, 14, 15, 16, 17, 19, 21, 22, 23, 25, 26}
_NUMERIC_IDEALS = {2, 4, 5, 6, 8, 9, 10, 11, 12, 14, 15, 16, 17, 19, 21, 22, 23, 25, 26}


def test_target_grammar_and_consistency(acceptance):
    with acceptance("target grammar parses every cell and flags the suspect rows"):
        assert len(_TARGETS) == 26
        for ordinal, marginal_text, ideal_text in _TARGETS:
            for text, numeric_set in (
                (marginal_text, _NUMERIC_MARGINALS),
                (ideal_text, _NUMERIC_IDEALS),
            ):
                parsed = parse_constraint(text)
                if ordinal in numeric_set:
                    assert is_numeric(parsed), (ordinal, text)
                    assert parse_constraint(render_constraint(parsed)) == parsed
                else:
                    assert isinstance(parsed, Qualitative), (ordinal, text)
        flagged = {
            finding.metric_id
            for finding in project_consistency_report(sample_project())
            if finding.kind == "ideal-outside-marginal"
        }
        # total mass (m11) and manufacturing cost (m17) are the showcase rows
        assert {"m11", "m17"} <= flagged


def test_persistence_and_reporting_are_stable(acceptance, tmp_path):
    with acceptance("projects survive disk round-trips; reports render identically"):
        project = sample_project()
        path = tmp_path / "roundtrip.json"
        save_project(project, path)
        assert load_project(path) == project
        assert generate_report(project) == generate_report(project)
        assert generate_report(project, format="csv-bundle") == generate_report(
            project, format="csv-bundle"
        )


# --------------------------------------------------------------------------
# generated-case suites.  Each one drives at least a thousand cases through
# an oracle that does not share code with the implementation under test.

_SUITE_TIMES: dict[str, float] = {}
_SUITE_CASES: Counter = Counter()


def _finish_suite(name: str, started: float) -> None:
    _SUITE_TIMES[name] = time.perf_counter() - started


def test_suite_ranking_matches_counting_oracle():
    started = time.perf_counter()

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=12))
    def case(values):
        _SUITE_CASES["ranking"] += 1
        keys = {f"c{i}": value for i, value in enumerate(values)}
        ordered = sorted(values, reverse=True)
        assert competition_rank(keys) == {
            cid: 1 + ordered.index(value) for cid, value in keys.items()
        }

    case()
    _finish_suite("ranking", started)


def test_suite_enumeration_counts_multiply():
    started = time.perf_counter()

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
    def case(sizes):
        _SUITE_CASES["enumeration"] += 1
        chart = MorphChart(
            id="generated",
            columns=tuple(
                MorphColumn(
                    name=f"col{i}",
                    fragments=tuple(f"c{i}f{j}" for j in range(size)),
                )
                for i, size in enumerate(sizes)
            ),
        )
        expected = math.prod(sizes)
        assert combination_count(chart) == expected
        selections = list(enumerate_concepts(chart))
        assert len(selections) == expected
        assert len({tuple(sorted(sel.items())) for sel in selections}) == expected

    case()
    _finish_suite("enumeration", started)


@st.composite
def _pugh_matrices(draw):
    n_concepts = draw(st.integers(2, 5))
    n_criteria = draw(st.integers(1, 6))
    concept_ids = tuple(f"c{i}" for i in range(n_concepts))
    criteria = tuple(f"crit{i}" for i in range(n_criteria))
    marks = {}
    for criterion in criteria:
        row = {concept_ids[0]: 0}  # the reference scores itself
        for cid in concept_ids[1:]:
            row[cid] = draw(st.integers(-1, 1))
        marks[criterion] = row
    return PughMatrix(
        id="generated",
        criteria=criteria,
        concept_ids=concept_ids,
        reference_id=concept_ids[0],
        marks=marks,
        declared={},
    )


def test_suite_screening_identities():
    started = time.perf_counter()

    @settings(max_examples=1000, deadline=None)
    @given(_pugh_matrices())
    def case(matrix):
        _SUITE_CASES["screening"] += 1
        for row in screen(matrix).rows:
            assert row.pluses + row.sames + row.minuses == len(matrix.criteria)
            assert row.net == row.pluses - row.minuses

    case()
    _finish_suite("screening", started)


@st.composite
def _scoring_matrices(draw, min_criteria=1):
    n_concepts = draw(st.integers(2, 4))
    n_criteria = draw(st.integers(min_criteria, 5))
    concept_ids = tuple(f"c{i}" for i in range(n_concepts))
    shares = [draw(st.integers(1, 9)) for _ in range(n_criteria)]
    total = sum(shares)
    criteria = tuple(
        WeightedCriterion(id=f"w{i}", name=f"w{i}", weight=Fraction(share, total))
        for i, share in enumerate(shares)
    )
    ratings = {
        criterion.id: {cid: draw(st.integers(1, 5)) for cid in concept_ids}
        for criterion in criteria
    }
    return ScoringMatrix(
        id="generated",
        criteria=criteria,
        concept_ids=concept_ids,
        ratings=ratings,
        declared={},
    )


def test_suite_totals_stay_inside_rating_hull():
    started = time.perf_counter()

    @settings(max_examples=1000, deadline=None)
    @given(_scoring_matrices())
    def case(matrix):
        _SUITE_CASES["convexity"] += 1
        for row in score(matrix).rows:
            ratings = [
                matrix.ratings[criterion.id][row.concept_id]
                for criterion in matrix.criteria
            ]
            assert min(ratings) <= row.total <= max(ratings)

    case()
    _finish_suite("convexity", started)


def _rating_gap(matrix, criterion_id, pair, weight):
    """total(first) - total(second) at the given swept weight, exactly."""
    perturbed = apply_perturbation(matrix, criterion_id, weight)
    totals = {}
    for row in score(perturbed).rows:
        value = row.total
        totals[row.concept_id] = (
            value.as_fraction() if isinstance(value, ExactDecimal) else Fraction(value)
        )
    return totals[pair[0]] - totals[pair[1]]


_GRID = tuple(Fraction(k, 8) * SWEEP_CAP for k in range(9))


def _bisect_root(matrix, criterion_id, pair, lo, hi):
    low_sign = _rating_gap(matrix, criterion_id, pair, lo) > 0
    while hi - lo > Fraction(1, 10**12):
        mid = (lo + hi) / 2
        gap = _rating_gap(matrix, criterion_id, pair, mid)
        if gap == 0:
            return mid
        if (gap > 0) == low_sign:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_suite_crossings_match_bisection_oracle():
    started = time.perf_counter()
    rng = random.Random(0x5EED)
    tolerance = Fraction(1, 10**9)
    for _ in range(1000):
        _SUITE_CASES["crossings"] += 1
        n_criteria = rng.randint(2, 4)
        shares = [rng.randint(1, 9) for _ in range(n_criteria)]
        total = sum(shares)
        concept_ids = ("x", "y", "z")
        criteria = tuple(
            WeightedCriterion(id=f"w{i}", name=f"w{i}", weight=Fraction(s, total))
            for i, s in enumerate(shares)
        )
        matrix = ScoringMatrix(
            id="generated",
            criteria=criteria,
            concept_ids=concept_ids,
            ratings={
                criterion.id: {cid: rng.randint(1, 5) for cid in concept_ids}
                for criterion in criteria
            },
            declared={},
        )
        criterion_id = rng.choice(criteria).id
        pair = tuple(rng.sample(concept_ids, 2))

        gaps = [_rating_gap(matrix, criterion_id, pair, w) for w in _GRID]
        report = crossing_points(matrix, criterion_id, pair)
        if report.always_tied:
            assert all(gap == 0 for gap in gaps)
            continue

        roots = [w for w, gap in zip(_GRID, gaps) if gap == 0]
        for i in range(len(_GRID) - 1):
            if gaps[i] * gaps[i + 1] < 0:
                roots.append(
                    _bisect_root(matrix, criterion_id, pair, _GRID[i], _GRID[i + 1])
                )
        analytic = [
            point.weight for point in report.points if point.weight <= SWEEP_CAP
        ]
        assert len(roots) == len(analytic)
        for found, solved in zip(sorted(roots), sorted(analytic)):
            assert abs(found - solved) <= tolerance
    _finish_suite("crossings", started)


def test_suite_renormalized_weights_sum_to_one():
    started = time.perf_counter()

    @settings(max_examples=1000, deadline=None)
    @given(
        _scoring_matrices(min_criteria=2),
        st.integers(0, 9),
        st.fractions(min_value=0, max_value=Fraction(63, 64), max_denominator=64),
    )
    def case(matrix, pick, new_weight):
        _SUITE_CASES["renormalization"] += 1
        target = matrix.criteria[pick % len(matrix.criteria)]
        perturbed = apply_perturbation(matrix, target.id, new_weight)
        weights = [weight_fraction_any(c.weight) for c in perturbed.criteria]
        assert sum(weights) == 1
        assert weight_fraction_any(perturbed.criterion(target.id).weight) == new_weight

    case()
    _finish_suite("renormalization", started)


def test_generated_suites_complete_in_budget(acceptance):
    with acceptance("six generated-case suites (1000+ cases each) pass within 30 s"):
        expected = {
            "ranking",
            "enumeration",
            "screening",
            "convexity",
            "crossings",
            "renormalization",
        }
        assert set(_SUITE_TIMES) == expected
        for name in expected:
            assert _SUITE_CASES[name] >= 1000, name
        assert sum(_SUITE_TIMES.values()) < 30.0
