import json
from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

# filled by test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def load_report(name: str) -> dict:
    return json.loads((DATA / name).read_text())


def profile_probs(report: dict) -> dict:
    """``{(p, q): (F1..F4)}`` from a frozen oracle report."""
    out = {}
    for pr in report["profiles"]:
        out[(pr["p"], pr["q"])] = tuple(Fraction(c, pr["total"]) for c in pr["counts"])
    return out


@pytest.fixture(scope="session")
def exhaustive_n2():
    return load_report("exhaustive_n2.json")


@pytest.fixture(scope="session")
def mtt_n3():
    return load_report("mtt_n3.json")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
