from __future__ import annotations

import pytest

import taxostrat as ts
from taxostrat.data import fixture_text

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    """Collect a per-criterion verdict for the end-of-run summary."""
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter) -> None:
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def dat_taxonomy() -> ts.Taxonomy:
    return ts.parse_taxonomy(fixture_text("data_analysis_taxonomy.txt"))


@pytest.fixture(scope="session")
def cohort_mappings() -> list[ts.ResultMapping]:
    return ts.read_mappings(fixture_text("scientist_mappings.csv"))


@pytest.fixture(scope="session")
def demo_matrix() -> ts.CriteriaMatrix:
    return ts.CriteriaMatrix.from_csv(fixture_text("eight_researchers_criteria.csv"))


@pytest.fixture(scope="session")
def themes_table() -> ts.ContingencyTable:
    return ts.ContingencyTable.from_csv(fixture_text("themes_contingency.csv"))
