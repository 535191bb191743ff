import pytest

from cfpq import example


@pytest.fixture
def ex_graph():
    return example.graph()


@pytest.fixture
def ex_cnf():
    return example.cnf_grammar()


@pytest.fixture
def ex_grammar():
    return example.grammar()


# acceptance criterion -> list of (label, passed or None for skipped, detail)
ACCEPTANCE: dict[int, list] = {}


def record(criterion, label, passed, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((label, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        for label, passed, detail in ACCEPTANCE[criterion]:
            status = "SKIP" if passed is None else "PASS" if passed else "FAIL"
            terminalreporter.write_line(f"[{status}] criterion {criterion}: {label} ({detail})")
