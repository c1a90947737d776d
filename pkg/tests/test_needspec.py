import pytest

from decisionforge.constraints import OneOf, Qualitative, parse_constraint
from decisionforge.errors import ConstraintError
from decisionforge.model import Metric, Need, NeedMetricLink, TargetSpec
from decisionforge.needspec import (
    benchmark_table,
    check_value,
    coverage_report,
    project_consistency_report,
    satisfaction_can_check,
    target_consistency_report,
)


def _spec(marginal, ideal, metric_id="m1"):
    return TargetSpec(
        metric_id=metric_id,
        marginal=parse_constraint(marginal),
        ideal=parse_constraint(ideal),
    )


# --------------------------------------------------------------------------
# coverage


def test_coverage_keeps_catalog_order():
    needs = [Need(id=f"n{i}", interpreted=f"need {i}") for i in (1, 2, 3)]
    metrics = [
        Metric(id="mb", ordinal=1, name="B", unit="", importance=1),
        Metric(id="ma", ordinal=2, name="A", unit="", importance=1),
    ]
    links = [NeedMetricLink(need_id="n2", metric_id="ma")]
    report = coverage_report(needs, metrics, links)
    assert report.uncovered_needs == ("n1", "n3")
    assert report.unused_metrics == ("mb",)


def test_coverage_on_fixture(project):
    report = coverage_report(project.needs, project.metrics, project.links)
    assert len(report.uncovered_needs) == 15
    assert len(report.unused_metrics) == 17
    assert "n12" not in report.uncovered_needs
    assert "m18" not in report.unused_metrics
    assert report.uncovered_needs[:3] == ("n01", "n02", "n03")
    assert "m24" in report.unused_metrics


# --------------------------------------------------------------------------
# benchmarking


def test_benchmark_values_mode(project):
    table = benchmark_table(project.benchmarks, project.metrics)
    assert table.mode == "values"
    assert table.metric_ids == tuple(m.id for m in project.metrics)
    assert table.product_ids == ("acoustic", "digital", "littmann")
    # unmeasured cells are None, measured cells keep their constraint form
    row = table.cells["m14"]
    assert row["littmann"] is None
    assert row["digital"] == Qualitative("80-1")
    assert table.weighted_totals == {}


def test_benchmark_satisfaction_mode(project):
    table = benchmark_table(project.benchmarks, project.metrics, mode="satisfaction")
    assert table.cells["m09"] == {"acoustic": 1, "digital": 4, "littmann": 3}
    assert table.weighted_totals == {"acoustic": 90, "digital": 276, "littmann": 206}


def test_benchmark_total_skips_unrated_metrics():
    from decisionforge.model import BenchmarkProduct

    metrics = [
        Metric(id="m1", ordinal=1, name="Mass", unit="g", importance=5),
        Metric(id="m2", ordinal=2, name="Cost", unit="USD", importance=2),
    ]
    product = BenchmarkProduct(
        id="p", name="Probe", metric_values={}, satisfaction={"m1": 3}
    )
    table = benchmark_table([product], metrics, mode="satisfaction")
    assert table.weighted_totals == {"p": 15}
    assert table.cells["m2"]["p"] is None


def test_benchmark_rejects_unknown_mode(project):
    with pytest.raises(ValueError, match="values or satisfaction"):
        benchmark_table(project.benchmarks, project.metrics, mode="ranked")


# --------------------------------------------------------------------------
# value checking


def test_check_value_flags_are_independent():
    spec = _spec("at least 40", "between 50 and 60")
    assert check_value(spec, 45) == check_value(spec, 45)
    result = check_value(spec, 45)
    assert result.meets_marginal and not result.meets_ideal
    result = check_value(spec, 55)
    assert result.meets_marginal and result.meets_ideal
    result = check_value(spec, 30)
    assert not result.meets_marginal and not result.meets_ideal


def test_check_value_notes_qualitative_targets():
    spec = _spec("comfortable grip", "at most 100")
    result = check_value(spec, 90)
    assert result.meets_marginal is False
    assert result.meets_ideal is True
    assert any("qualitative" in note for note in result.notes)


def test_check_value_refuses_prose_against_numbers():
    spec = _spec("at least 40", "at least 50")
    with pytest.raises(ConstraintError):
        check_value(spec, "plenty")


# --------------------------------------------------------------------------
# target consistency


def test_ideal_wider_than_marginal_is_flagged():
    findings = target_consistency_report([_spec("at least 40", "at least 30")])
    assert [f.kind for f in findings] == ["ideal-outside-marginal"]
    assert findings[0].severity == "warning"
    assert "at least 30" in findings[0].detail


def test_ideal_inside_marginal_is_clean():
    assert target_consistency_report([_spec("at least 40", "at least 50")]) == ()
    assert target_consistency_report([_spec("at most 10", "exactly 5")]) == ()


def test_numeric_against_prose_is_informational():
    findings = target_consistency_report([_spec("at least 40", "very quiet")])
    assert [f.kind for f in findings] == ["numeric-qualitative"]
    assert findings[0].severity == "info"


def test_unit_disagreement_is_reported():
    findings = target_consistency_report([_spec("at least 40 kg", "at least 50 g")])
    assert [f.kind for f in findings] == ["unit-mismatch"]
    # the same unit under different capitalization is not a disagreement
    assert target_consistency_report([_spec("at least 40 DB", "at least 50 db")]) == ()


def test_catalog_unit_participates():
    metrics = [Metric(id="m1", ordinal=1, name="Mass", unit="kg", importance=3)]
    findings = target_consistency_report(
        [_spec("at least 40 g", "at least 50 g")], metrics
    )
    assert [f.kind for f in findings] == ["unit-mismatch"]
    assert "metric catalog" in findings[0].detail


def test_fixture_consistency_findings(project):
    findings = project_consistency_report(project)
    warned = {f.metric_id for f in findings if f.kind == "ideal-outside-marginal"}
    assert warned == {
        "m09", "m10", "m11", "m14", "m15", "m16", "m17",
        "m19", "m21", "m22", "m23", "m25", "m26",
    }
    prose = {f.metric_id for f in findings if f.kind == "numeric-qualitative"}
    assert prose == {"m01", "m06", "m08"}
    assert all(f.severity == "warning" for f in findings if f.metric_id == "m11")


# --------------------------------------------------------------------------
# checkability


def test_satisfaction_can_check():
    assert satisfaction_can_check(parse_constraint("at least 4"))
    assert satisfaction_can_check(OneOf(options=frozenset({"iOS", "Android"})))
    assert not satisfaction_can_check(Qualitative("pleasant"))
