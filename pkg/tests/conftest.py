import pytest

from cuspcount.gw_base import BaseNumbers, GWEngine
from cuspcount.taut import Tautological


@pytest.fixture(scope="session")
def calc() -> Tautological:
    return Tautological(BaseNumbers())


@pytest.fixture(scope="session")
def engine(calc) -> GWEngine:
    return calc.base.engine


ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {name}  {detail}")
