from contextlib import contextmanager

import pytest

from decisionforge.sample import sample_project

_ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


@pytest.fixture()
def project():
    return sample_project()


@pytest.fixture()
def scoring(project):
    return project.scoring_matrices[0]


@pytest.fixture()
def screening(project):
    return project.pugh_matrices[0]


@pytest.fixture()
def project_file(tmp_path, project):
    from decisionforge.persistence import save_project

    path = tmp_path / "project.json"
    save_project(project, path)
    return path


@pytest.fixture()
def acceptance():
    """Records one named gate per use and reports it in the run summary."""

    @contextmanager
    def criterion(name):
        try:
            yield
        except BaseException:
            _ACCEPTANCE_RESULTS.append((name, False))
            raise
        _ACCEPTANCE_RESULTS.append((name, True))

    return criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _ACCEPTANCE_RESULTS:
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {verdict}: {name}")
