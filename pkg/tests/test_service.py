import dataclasses
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from decisionforge.model import ValidationIssue
from decisionforge.numbers import to_fraction
from decisionforge.service import (
    BIND_ENV_VAR,
    DEFAULT_BIND,
    ProjectStore,
    create_app,
    resolve_bind,
)

SCORING = "/api/results/scoring/concept-scoring"
SCREENING = "/api/results/screening/concept-screening"


@pytest.fixture
def client(project):
    return TestClient(create_app(project))


def test_project_endpoint(client, project):
    body = client.get("/api/project").json()
    assert body["revision"] == 1
    assert body["project"]["name"] == project.name
    assert len(body["project"]["scoring_matrices"]) == 1


def test_screening_results(client):
    body = client.get(SCREENING).json()
    assert body["revision"] == 1
    assert body["reference"] == "B"
    rows = {row["concept"]: row for row in body["rows"]}
    assert rows["D"] == {
        "concept": "D",
        "pluses": 4,
        "sames": 2,
        "minuses": 2,
        "net": 2,
        "rank": 1,
        "continue": True,
    }
    assert rows["A"]["net"] == -3 and rows["A"]["continue"] is False


def test_scoring_results(client):
    body = client.get(SCORING).json()
    rows = {row["concept"]: row for row in body["rows"]}
    assert [(rows[c]["total"], rows[c]["rank"], rows[c]["decision"])
            for c in ("D", "E", "F", "DF")] == [
        ("3.75", 3, "drop"),
        ("3.75", 3, "drop"),
        ("4.1", 2, "drop"),
        ("4.35", 1, "develop"),
    ]
    assert rows["DF"]["weighted"]["Signal quality(output)"] == "1"
    assert body["weights"]["Cost"] == "0.1"


def test_unknown_matrix_is_404(client):
    assert client.get("/api/results/scoring/nope").status_code == 404
    assert client.get("/api/results/screening/nope").status_code == 404
    assert client.get("/api/audit/nope").status_code == 404


def test_rating_patch_recomputes(client):
    body = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Transmission Quality",
              "rating": 4},
    ).json()
    assert body["revision"] == 2
    rows = {row["concept"]: row for row in body["rows"]}
    assert rows["F"]["total"] == "4.25"
    assert rows["F"]["rank"] == 2
    assert rows["DF"]["rank"] == 1
    # the mutation is durable and visible to fresh reads
    again = client.get("/api/project").json()
    assert again["revision"] == 2
    matrix = again["project"]["scoring_matrices"][0]
    assert matrix["ratings"]["Transmission Quality"]["F"] == 4


def test_stale_revision_is_conflict(client):
    first = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Cost", "rating": 4},
    )
    assert first.status_code == 200
    stale = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Cost", "rating": 5},
    )
    assert stale.status_code == 409
    assert stale.json() == {"error": "stale revision", "revision": 2}
    # the losing write changed nothing
    body = client.get(SCORING).json()
    assert body["revision"] == 2
    rows = {row["concept"]: row for row in body["rows"]}
    assert rows["F"]["weighted"]["Cost"] == "0.4"


def test_rating_patch_rejects_unknowns(client):
    base = {"revision": 1, "rating": 3}
    assert client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={**base, "concept": "Z", "criterion": "Cost"},
    ).status_code == 404
    assert client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={**base, "concept": "F", "criterion": "Aroma"},
    ).status_code == 404
    # neither failed write burned a revision
    assert client.get("/api/project").json()["revision"] == 1


def test_rating_patch_validates_payload(client):
    response = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Cost", "rating": "five"},
    )
    assert response.status_code == 422
    response = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Cost"},
    )
    assert response.status_code == 422
    assert "rating" in response.json()["detail"]


def test_out_of_scale_rating_is_rejected_by_validation(client):
    response = client.patch(
        "/api/scoring/concept-scoring/ratings",
        json={"revision": 1, "concept": "F", "criterion": "Cost", "rating": 9},
    )
    assert response.status_code == 422
    body = response.json()
    assert body["error"] == "validation failed"
    assert any("9" in issue["message"] for issue in body["issues"])
    assert client.get("/api/project").json()["revision"] == 1


def test_weight_patch_renormalizes(client):
    body = client.patch(
        "/api/scoring/concept-scoring/weights",
        json={"revision": 1, "criterion": "Signal quality(output)", "weight": "0.3"},
    ).json()
    assert body["revision"] == 2
    weights = body["weights"]
    assert weights["Signal quality(output)"] == "0.3"
    assert weights["Cost"] == "0.0875"
    assert weights["Transmission Quality"] == "0.13125"
    assert sum(to_fraction(text) for text in weights.values()) == 1


def test_weight_patch_accepts_json_numbers(client):
    body = client.patch(
        "/api/scoring/concept-scoring/weights",
        json={"revision": 1, "criterion": "Cost", "weight": 0.25},
    ).json()
    assert body["weights"]["Cost"] == "0.25"


def test_weight_patch_rejects_bad_weights(client):
    def patch(weight):
        return client.patch(
            "/api/scoring/concept-scoring/weights",
            json={"revision": 1, "criterion": "Cost", "weight": weight},
        )

    assert patch(1).status_code == 422       # nothing left for the others
    assert patch(-0.5).status_code == 422
    assert patch(True).status_code == 422
    assert patch(None).status_code == 422
    response = client.patch(
        "/api/scoring/concept-scoring/weights",
        json={"revision": 1, "criterion": "Aroma", "weight": 0.2},
    )
    assert response.status_code == 422
    assert client.get("/api/project").json()["revision"] == 1


def test_audit_endpoint(client):
    body = client.get("/api/audit/concept-scoring").json()
    assert body["matrix"] == "concept-scoring"
    findings = body["findings"]
    assert [(f["kind"], f["subject"]) for f in findings] == [
        ("total", "E"),
        ("rank", "E"),
    ]
    assert findings[0]["declared"] == "3.45"
    assert findings[0]["computed"] == "3.75"
    assert "E" in findings[0]["note"]
    # the screening worksheet in the fixture has no slips
    assert client.get("/api/audit/concept-screening").json()["findings"] == []


def test_audit_without_declared_results(project):
    scoring = project.scoring_matrices[0]
    silent = dataclasses.replace(scoring, declared={})
    app = create_app(dataclasses.replace(project, scoring_matrices=(silent,)))
    response = TestClient(app).get("/api/audit/concept-scoring")
    assert response.status_code == 400


def test_sensitivity_endpoint(client):
    body = client.get(
        "/api/sensitivity/concept-scoring",
        params={"criterion": "Cost", "samples": 5},
    ).json()
    assert body["criterion"] == "Cost"
    assert body["current_weight"] == "0.1"
    weights = [point["weight"] for point in body["trajectory"]]
    assert weights == ["0", "0.2475", "0.495", "0.7425", "0.99"]
    assert len(body["crossings"]) == 4
    assert body["always_tied"] == [["D", "E"]]
    for crossing in body["crossings"]:
        assert set(crossing) == {"pair", "weight", "leader_below", "leader_above"}


def test_sensitivity_rejects_bad_queries(client):
    assert client.get(
        "/api/sensitivity/concept-scoring", params={"criterion": "Aroma"}
    ).status_code == 404
    assert client.get(
        "/api/sensitivity/concept-scoring",
        params={"criterion": "Cost", "samples": 1},
    ).status_code == 422


def test_combine_endpoint(client):
    response = client.post(
        "/api/concepts/combine",
        json={
            "revision": 1,
            "a": "C",
            "b": "D",
            "resolution": {"Transmission": "from_b", "Visualization": "from_a"},
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["revision"] == 2
    concept = body["concept"]
    assert concept["id"] == "CD"
    assert concept["name"] == (
        "Single-head digital stethoscope with condenser microphone"
        " + Bluetooth-aided digital single-head stethoscope"
    )
    assert concept["selection"]["Transmission"] == "Bluetooth Chipset"
    assert concept["selection"]["Visualization"] == "Embedded LCD Screen"
    stored = client.get("/api/project").json()["project"]["concepts"]
    assert [c["id"] for c in stored] == ["A", "B", "C", "D", "E", "F", "DF", "CD"]


def test_combine_rejections(client):
    assert client.post(
        "/api/concepts/combine", json={"revision": 1, "a": "C", "b": "Z"}
    ).status_code == 404
    unresolved = client.post(
        "/api/concepts/combine", json={"revision": 1, "a": "C", "b": "D"}
    )
    assert unresolved.status_code == 422
    assert "Transmission" in unresolved.json()["detail"]
    duplicate = client.post(
        "/api/concepts/combine",
        json={
            "revision": 1,
            "a": "C",
            "b": "D",
            "id": "DF",
            "resolution": {"Transmission": "from_a", "Visualization": "from_a"},
        },
    )
    assert duplicate.status_code == 422
    assert duplicate.json()["error"] == "validation failed"
    assert client.get("/api/project").json()["revision"] == 1


def test_revisions_are_monotonic(client):
    for expected in (2, 3, 4):
        body = client.patch(
            "/api/scoring/concept-scoring/weights",
            json={
                "revision": expected - 1,
                "criterion": "Cost",
                "weight": f"0.{expected}",
            },
        ).json()
        assert body["revision"] == expected


def test_store_rejects_invalid_candidate(project):
    store = ProjectStore(project)

    def break_it(current):
        scoring = current.scoring_matrices[0]
        ratings = {name: dict(cells) for name, cells in scoring.ratings.items()}
        ratings["Cost"]["F"] = 77
        return dataclasses.replace(
            current,
            scoring_matrices=(dataclasses.replace(scoring, ratings=ratings),),
        )

    from decisionforge.service import MutationRejected

    with pytest.raises(MutationRejected) as info:
        store.mutate(1, break_it)
    assert all(isinstance(issue, ValidationIssue) for issue in info.value.issues)
    assert store.read() == (project, 1)


def test_create_app_requires_valid_project(project):
    scoring = project.scoring_matrices[0]
    heavy = dataclasses.replace(
        scoring,
        criteria=tuple(
            dataclasses.replace(criterion, weight=Fraction(1, 2))
            for criterion in scoring.criteria
        ),
    )
    broken = dataclasses.replace(project, scoring_matrices=(heavy,))
    with pytest.raises(ValueError, match="does not validate"):
        create_app(broken)


def test_resolve_bind_precedence(monkeypatch):
    monkeypatch.delenv(BIND_ENV_VAR, raising=False)
    assert resolve_bind() == ("127.0.0.1", 8157)
    assert DEFAULT_BIND == "127.0.0.1:8157"
    monkeypatch.setenv(BIND_ENV_VAR, "0.0.0.0:9000")
    assert resolve_bind() == ("0.0.0.0", 9000)
    assert resolve_bind("[::1]:8080") == ("[::1]", 8080)


def test_resolve_bind_rejects_malformed_addresses(monkeypatch):
    monkeypatch.delenv(BIND_ENV_VAR, raising=False)
    with pytest.raises(ValueError, match="host:port"):
        resolve_bind("localhost")
    with pytest.raises(ValueError, match="missing a host"):
        resolve_bind(":8000")
    with pytest.raises(ValueError, match="non-numeric port"):
        resolve_bind("localhost:http")
