"""Shared oracle helpers and the session-wide relay grid."""

import pytest

from sigtime.relay import ScenarioConfig, sweep

# comparison grid: d = 10, every curve family, 1..50 dB in 0.5 dB steps
GRID_P_DBS = tuple(1.0 + 0.5 * i for i in range(99))
GRID_KAPPAS = (0.35, 0.75)
GRID_A = (1.5, 2.0)
GRID_NTR = (6, 12)


def dfs_words(n):
    """Every valid schedule word of length 2n by direct backtracking.

    Deliberately independent of the library's construction: it never
    reuses the recurrence or the decomposition, only the two local
    rules (spend no more than n ones, never let the surplus go
    negative).
    """
    out = []
    prefix = []

    def go(ones, surplus):
        if len(prefix) == 2 * n:
            out.append("".join(prefix))
            return
        if ones < n:
            prefix.append("1")
            go(ones + 1, surplus + 1)
            prefix.pop()
        if surplus > 0:
            prefix.append("0")
            go(ones, surplus - 1)
            prefix.pop()

    go(0, 0)
    return out


@pytest.fixture(scope="session")
def full_grid():
    """All rate reports for the comparison grid, computed once."""
    base = ScenarioConfig(p=1.0)
    return sweep(base, GRID_P_DBS, GRID_KAPPAS, GRID_A, GRID_NTR)
