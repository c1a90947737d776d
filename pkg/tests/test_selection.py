from fractions import Fraction

import pytest

from decisionforge.errors import SelectionError
from decisionforge.model import (
    Concept,
    DeclaredScoreRow,
    DeclaredScreenRow,
    PughMatrix,
    ScoringMatrix,
    WeightedCriterion,
)
from decisionforge.numbers import ExactDecimal
from decisionforge.selection import (
    FROM_A,
    FROM_B,
    audit,
    combine_concepts,
    competition_rank,
    derive_pugh,
    describe_finding,
    score,
    screen,
)


def test_competition_rank_shares_smallest_and_skips():
    ranks = competition_rank({"a": 10, "b": 10, "c": 7, "d": 12})
    assert ranks == {"d": 1, "a": 2, "b": 2, "c": 4}
    assert competition_rank({}) == {}
    assert competition_rank({"only": 5}) == {"only": 1}


def _pugh():
    return PughMatrix(
        id="p",
        criteria=("c1", "c2", "c3"),
        concept_ids=("ref", "up", "down"),
        reference_id="ref",
        marks={
            "c1": {"ref": 0, "up": 1, "down": -1},
            "c2": {"ref": 0, "up": 1, "down": 0},
            "c3": {"ref": 0, "up": -1, "down": -1},
        },
    )


def test_screen_tallies_and_default_cut():
    result = screen(_pugh())
    up = result.row("up")
    assert (up.pluses, up.sames, up.minuses, up.net) == (2, 0, 1, 1)
    assert up.continue_ is True  # net > 0 is the default keep rule
    ref = result.row("ref")
    assert (ref.pluses, ref.sames, ref.minuses, ref.net) == (0, 3, 0, 0)
    assert ref.continue_ is False
    assert result.row("down").rank == 3
    assert up.rank == 1 and ref.rank == 2


def test_screen_keep_rule_is_replaceable():
    result = screen(_pugh(), keep=lambda row: row.rank <= 2)
    assert result.row("ref").continue_ is True
    assert result.row("down").continue_ is False


def _scoring(weights=("0.5", "0.3", "0.2")):
    return ScoringMatrix(
        id="s",
        criteria=tuple(
            WeightedCriterion(id=f"c{i}", name=f"c{i}", weight=ExactDecimal(w))
            for i, w in enumerate(weights)
        ),
        concept_ids=("x", "y"),
        ratings={
            "c0": {"x": 4, "y": 2},
            "c1": {"x": 3, "y": 5},
            "c2": {"x": 1, "y": 5},
        },
    )


def test_score_exact_totals_and_decision():
    result = score(_scoring())
    x = result.row("x")
    assert x.total == ExactDecimal("3.1")  # 2 + 0.9 + 0.2
    assert x.weighted["c0"] == ExactDecimal("2")
    y = result.row("y")
    assert y.total == ExactDecimal("3.5")
    assert (y.rank, y.decision) == (1, "develop")
    assert (x.rank, x.decision) == (2, "drop")


def test_score_develop_rank_widens_the_cut():
    result = score(_scoring(), develop_rank=2)
    assert result.row("x").decision == "develop"


def test_score_requires_weights():
    matrix = ScoringMatrix(
        id="s",
        criteria=(WeightedCriterion(id="c0", name="c0"),),
        concept_ids=("x",),
        ratings={"c0": {"x": 3}},
    )
    with pytest.raises(SelectionError) as err:
        score(matrix)
    assert "has no weight" in str(err.value)


def test_score_with_criterion_tree():
    # parent "ease" decomposes into two leaves; only leaves carry ratings,
    # and the parent's weighted cell is the sum of its leaves' cells
    matrix = ScoringMatrix(
        id="s",
        criteria=(
            WeightedCriterion(id="ease", name="ease", weight=ExactDecimal("0.6")),
            WeightedCriterion(id="setup", name="setup", weight=ExactDecimal("0.4"), parent="ease"),
            WeightedCriterion(id="clean", name="clean", weight=ExactDecimal("0.2"), parent="ease"),
            WeightedCriterion(id="cost", name="cost", weight=ExactDecimal("0.4")),
        ),
        concept_ids=("x",),
        ratings={"setup": {"x": 5}, "clean": {"x": 2}, "cost": {"x": 3}},
    )
    result = score(matrix)
    x = result.row("x")
    assert x.weighted["setup"] == ExactDecimal("2")
    assert x.weighted["clean"] == ExactDecimal("0.4")
    assert x.weighted["ease"] == ExactDecimal("2.4")
    assert x.total == ExactDecimal("3.6")


def test_audit_screen_kinds():
    matrix = PughMatrix(
        id="p",
        criteria=("c1",),
        concept_ids=("ref", "a"),
        reference_id="ref",
        marks={"c1": {"ref": 0, "a": 1}},
        declared={
            "a": DeclaredScreenRow(pluses=0, sames=1, minuses=0, net=1, rank=1, continue_=True),
        },
    )
    findings = audit(matrix)
    kinds = {(f.kind, f.subject) for f in findings}
    assert ("plus_count", "a") in kinds
    assert ("same_count", "a") in kinds
    assert ("net", "a") not in kinds  # declared net matches the recomputation
    one = next(f for f in findings if f.kind == "plus_count")
    assert (one.declared, one.computed) == (0, 1)
    assert "declared 0, computed 1" in describe_finding(one)


def test_audit_score_kinds(scoring):
    findings = audit(scoring)
    assert [(f.kind, f.subject) for f in findings] == [("total", "E"), ("rank", "E")]
    total = findings[0]
    assert total.declared == ExactDecimal("3.45")
    assert total.computed == ExactDecimal("3.75")


def test_audit_with_nothing_declared():
    with pytest.raises(SelectionError) as err:
        audit(_pugh())
    assert "nothing to audit" in str(err.value)


def test_audit_decision_mismatch():
    matrix = _scoring()
    matrix = ScoringMatrix(
        id=matrix.id,
        criteria=matrix.criteria,
        concept_ids=matrix.concept_ids,
        ratings=matrix.ratings,
        declared={"y": DeclaredScoreRow(total=ExactDecimal("3.5"), rank=1, decision="drop")},
    )
    findings = audit(matrix)
    assert [(f.kind, f.subject, f.declared, f.computed) for f in findings] == [
        ("decision", "y", "drop", "develop")
    ]


def _concepts():
    a = Concept(id="A", name="left", chart_id="ch",
                selection={"c1": "x", "c2": "same", "c3": "p"})
    b = Concept(id="B", name="right", chart_id="ch",
                selection={"c1": "y", "c2": "same", "c3": "q"})
    return a, b


def test_combine_concepts():
    a, b = _concepts()
    merged = combine_concepts(a, b, {"c1": FROM_A, "c3": "r"})
    assert merged.id == "AB"
    assert merged.name == "left + right"
    assert merged.selection == {"c1": "x", "c2": "same", "c3": "r"}

    named = combine_concepts(a, b, {"c1": FROM_B, "c3": FROM_A}, concept_id="Z", name="z")
    assert (named.id, named.name) == ("Z", "z")
    assert named.selection["c1"] == "y"


def test_combine_can_override_agreeing_columns():
    a, b = _concepts()
    merged = combine_concepts(a, b, {"c1": FROM_A, "c2": "different", "c3": FROM_B})
    assert merged.selection["c2"] == "different"


def test_combine_unresolved_columns_error_names_them_all():
    a, b = _concepts()
    with pytest.raises(SelectionError) as err:
        combine_concepts(a, b)
    assert "c1" in str(err.value) and "c3" in str(err.value)
    with pytest.raises(SelectionError):
        combine_concepts(a, b, {"zzz": FROM_A})


def test_combine_requires_same_chart():
    a, b = _concepts()
    other = Concept(id="C", name="other", chart_id="other-chart", selection=b.selection)
    with pytest.raises(SelectionError):
        combine_concepts(a, other)


def test_derive_pugh_collapses_ratings():
    derived = derive_pugh(_scoring(), "x")
    assert derived.reference_id == "x"
    assert derived.id == "s-relative"
    assert derived.marks["c0"] == {"x": 0, "y": -1}
    assert derived.marks["c1"] == {"x": 0, "y": 1}
    assert derived.declared == {}
    result = screen(derived)
    assert result.row("y").net == 1

    with pytest.raises(SelectionError):
        derive_pugh(_scoring(), "nope")


def test_sample_screen_matches_declared(screening):
    # the worksheet's declared tallies all match: audit is empty
    assert audit(screening) == []
