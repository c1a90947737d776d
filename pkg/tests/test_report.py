import dataclasses

import pytest

from decisionforge.model import Funnel, Project, ScoringMatrix, WeightedCriterion
from decisionforge.report import REPORT_FORMATS, generate_report


def test_markdown_is_deterministic(project):
    first = generate_report(project)
    second = generate_report(project)
    assert first == second
    assert isinstance(first, str)


def test_markdown_covers_every_worksheet(project):
    report = generate_report(project)
    headings = [line for line in report.splitlines() if line.startswith("## ")]
    assert headings == [
        "## Opportunities",
        "## Opportunity funnel",
        "## Customer needs",
        "## Metrics",
        "## Competitive benchmarks",
        "## Target specifications",
        "## Morphological charts",
        "## Concept screening",
        "## Concept scoring",
        "## Audit",
        "## Weight sensitivity",
    ]


def test_markdown_shows_recomputed_and_declared(project):
    report = generate_report(project)
    # recomputed totals appear as exact decimals
    assert "4.35" in report
    assert "Declared results (as written in the worksheet):" in report
    # the one declared slip in the fixture shows up in the audit section
    assert "3.45" in report
    assert "finding(s):" in report


def test_empty_project_report_renders():
    empty = Project(name="Blank slate", funnel=Funnel(stages=(), verdicts={}))
    report = generate_report(empty)
    assert report.startswith("# Blank slate")
    assert "No funnel stages recorded." in report
    assert "No scoring matrices recorded." in report
    bundle = generate_report(empty, format="csv-bundle")
    assert sorted(bundle) == ["audit.csv"]


def test_unknown_format_is_rejected(project):
    with pytest.raises(ValueError, match="csv-bundle"):
        generate_report(project, format="pdf")
    assert set(REPORT_FORMATS) == {"markdown", "csv-bundle"}


def test_csv_bundle_file_set(project):
    bundle = generate_report(project, format="csv-bundle")
    assert sorted(bundle) == [
        "audit.csv",
        "benchmarks.csv",
        "chart-stethoscope.csv",
        "crossings-concept-scoring.csv",
        "funnel-01-initial-screening.csv",
        "funnel-02-promising-opportunities.csv",
        "funnel-03-exceptional-opportunities.csv",
        "links.csv",
        "metrics.csv",
        "scoring-concept-scoring.csv",
        "screening-concept-screening.csv",
        "targets.csv",
    ]
    for name, text in bundle.items():
        assert text.endswith("\n"), name
        assert "\n" in text.strip() or name == "audit.csv", name


def test_csv_bundle_is_deterministic(project):
    assert generate_report(project, format="csv-bundle") == generate_report(
        project, format="csv-bundle"
    )


def test_audit_csv_lists_the_fixture_slip(project):
    audit = generate_report(project, format="csv-bundle")["audit.csv"]
    lines = audit.splitlines()
    assert lines[0] == "matrix,kind,subject,declared,computed"
    slips = [line for line in lines[1:] if line]
    assert any("total,E,3.45,3.75" in line for line in slips)


def test_unscorable_matrix_reported_not_raised(project):
    # strip the weights: the matrix can no longer be scored, and the report
    # says so instead of failing
    scoring = project.scoring_matrices[0]
    unweighted = dataclasses.replace(
        scoring,
        criteria=tuple(
            dataclasses.replace(criterion, weight=None)
            for criterion in scoring.criteria
        ),
    )
    crippled = dataclasses.replace(project, scoring_matrices=(unweighted,))
    report = generate_report(crippled)
    assert "Matrix could not be scored:" in report
