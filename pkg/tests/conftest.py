import pytest

from branchorder import FamilyParams, Presentation, build_standard_presentation

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def s3():
    return Presentation.build(["x", "y"], ["x^2", "y^3", "x y x y"], label="S3")


@pytest.fixture
def std00():
    return build_standard_presentation(FamilyParams((0, 0)))
