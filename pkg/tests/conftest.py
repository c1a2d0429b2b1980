import math
from fractions import Fraction

import pytest

ACCEPTANCE_RESULTS = []


def lgamma_weight(alpha: float, j: int) -> float:
    """c_j(alpha) from log-gamma; independent of the product recurrence."""
    return math.exp(math.lgamma(j + alpha) - math.lgamma(alpha) - math.lgamma(j + 1))


def half_weight(j: int) -> Fraction:
    """c_j(1/2) = C(2j, j) / 4^j (central binomial closed form)."""
    return Fraction(math.comb(2 * j, j), 4**j)


def brute_sum(values, weight):
    """out[m] = sum_{s<=m} weight(m - s) * values[s], written as a plain double loop."""
    return [sum(weight(m - s) * values[s] for s in range(m + 1)) for m in range(len(values))]


@pytest.fixture
def record():
    def _record(criterion: str, passed: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((criterion, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {criterion}: {status}  {detail}")
