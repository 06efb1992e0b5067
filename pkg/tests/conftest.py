from fractions import Fraction

import pytest
from hypothesis import settings

from staircase.enumeration import ab_tableaux
from staircase.tableau import Tableau

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction

# a size-7 reference tableau with all four symbols: row, column, symbol
SEVEN = {
    (1, 1): "A", (1, 4): "G", (1, 7): "A", (2, 6): "D", (3, 3): "B",
    (3, 5): "G", (4, 4): "D", (5, 3): "B", (6, 2): "G", (7, 1): "B",
}


@pytest.fixture
def seven() -> Tableau:
    return Tableau.from_cells(7, SEVEN)


def tableaux_up_to(max_n):
    return [t for n in range(1, max_n + 1) for t in ab_tableaux(n)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
