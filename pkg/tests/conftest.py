from __future__ import annotations

from functools import lru_cache

import pytest

from crossnorm.pi import fundamental_crossed_complex
from crossnorm.simplicial import boundary_simplex, cyclic_table, nerve_of_group, standard_simplex


@lru_cache(maxsize=None)
def simplicial_set(kind: str, n: int, N: int):
    if kind == "delta":
        return standard_simplex(n, N)
    if kind == "boundary":
        return boundary_simplex(n, N)
    return nerve_of_group(cyclic_table(n), N)


@lru_cache(maxsize=None)
def upsilon(kind: str, n: int, N: int):
    return fundamental_crossed_complex(simplicial_set(kind, n, N))


SMALL = [("delta", 1, 3), ("delta", 2, 3), ("boundary", 2, 3), ("nerve", 2, 4)]


@pytest.fixture(params=SMALL, ids=lambda p: f"{p[0]}{p[1]}-N{p[2]}")
def small_case(request):
    return request.param


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
