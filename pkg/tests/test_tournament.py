import pytest

from decisionforge.errors import TournamentError
from decisionforge.model import Funnel, Opportunity, Project, Stage, Verdict
from decisionforge.tournament import (
    compare_policies,
    evaluate_row,
    evaluate_stage,
    run_funnel,
)


def row(oid, **marks):
    declared = marks.pop("declared", None)
    return Verdict(opportunity_id=oid, marks=marks, declared=declared)


def stage(policy="require-explicit", name="gate", criteria=("a", "b")):
    return Stage(name=name, criteria=criteria, unknown_policy=policy)


def test_all_pass_is_pass():
    assert evaluate_row(stage(), row("o", a="pass", b="pass")) == "pass"
    assert evaluate_row(stage(), row("o", a="pass", b="fail")) == "fail"


def test_unknown_policies():
    gappy = row("o", a="pass", b="unknown")
    assert evaluate_row(stage("strict-fail"), gappy) == "fail"
    assert evaluate_row(stage("lenient-pass"), gappy) == "pass"
    with pytest.raises(TournamentError) as err:
        evaluate_row(stage("require-explicit"), gappy)
    assert "requires explicit marks" in str(err.value)
    assert "'b'" in str(err.value)


def test_missing_mark_counts_as_unknown():
    # a row that simply omits a criterion behaves like an unknown mark
    partial = row("o", a="pass")
    assert evaluate_row(stage("strict-fail"), partial) == "fail"
    assert evaluate_row(stage("lenient-pass"), partial) == "pass"


def test_lenient_pass_still_fails_on_explicit_fail():
    assert evaluate_row(stage("lenient-pass"), row("o", a="fail", b="unknown")) == "fail"


def test_compare_policies():
    table = compare_policies(
        stage(), [row("o1", a="pass", b="unknown"), row("o2", a="pass", b="pass")]
    )
    assert table["strict-fail"]["o1"] == "fail"
    assert table["lenient-pass"]["o1"] == "pass"
    assert table["require-explicit"]["o1"] == "unresolved"
    assert all(table[policy]["o2"] == "pass" for policy in table)


def test_evaluate_stage_requires_candidate_rows():
    with pytest.raises(TournamentError) as err:
        evaluate_stage(stage(), [row("o1", a="pass", b="pass")], candidates=["o1", "o2"])
    assert "'o2'" in str(err.value)


def _two_stage_project():
    opportunities = tuple(Opportunity(id=f"o{i}", name=f"opp {i}") for i in (1, 2, 3))
    funnel = Funnel(
        stages=(
            Stage(name="first", criteria=("a",)),
            Stage(name="second", criteria=("b",), declared_count=2),
        ),
        verdicts={
            "first": (
                row("o1", a="pass", declared="pass"),
                row("o2", a="pass", declared="fail"),  # declared contradicts marks
                row("o3", a="fail", declared="fail"),
            ),
            "second": (
                row("o1", b="pass"),
                # o2 has no row here although it survived (missing-row)
                row("o3", b="pass"),  # o3 was eliminated (extra-row)
            ),
        },
    )
    return Project(name="t", opportunities=opportunities, funnel=funnel)


def test_run_funnel_reconciliation():
    report = run_funnel(_two_stage_project())
    assert report.survivors == ("o1",)
    kinds = {(d.stage, d.kind, d.subject) for d in report.discrepancies}
    assert ("first", "declared-outcome", "o2") in kinds
    assert ("second", "missing-row", "o2") in kinds
    assert ("second", "extra-row", "o3") in kinds
    assert ("second", "declared-count", "second") in kinds
    # the extra passing row is NOT revived into the survivor pool
    second = report.stages[1]
    assert "o3" in second.passed and "o3" not in second.survivors


def test_run_funnel_survivor_order_follows_the_pool():
    project = _two_stage_project()
    report = run_funnel(project)
    first = report.stages[0]
    assert first.survivors == ("o1", "o2")  # opportunity order, not row order


def test_run_funnel_without_a_funnel():
    with pytest.raises(TournamentError):
        run_funnel(Project(name="bare"))


def test_sample_funnel_story(project):
    report = run_funnel(project)
    names = {o.id: o.name for o in project.opportunities}
    assert [names[s] for s in report.survivors] == ["Advanced digital stethoscope"]
    assert [len(outcome.survivors) for outcome in report.stages] == [12, 4, 1]
    assert len(report.discrepancies) == 5
