import numpy as np
import pytest

from netdichot import ValuedGraph


def random_valued(n, seed, density=0.5, integer=False):
    """Symmetric random valued graph; ``integer`` ties give plenty of exact ties."""
    rng = np.random.default_rng(seed)
    w = rng.integers(1, 5, size=(n, n)).astype(float) if integer else rng.gamma(1.0, 1.0, size=(n, n))
    w *= rng.random((n, n)) < density
    w = np.triu(w, 1)
    return ValuedGraph(w + w.T)


def floyd_warshall(w):
    """Plain O(n^3) shortest paths with edge length 1/w."""
    n = len(w)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for i in range(n):
        for j in range(n):
            if w[i][j] > 0:
                d[i, j] = 1.0 / w[i][j]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i, k] + d[k, j] < d[i, j]:
                    d[i, j] = d[i, k] + d[k, j]
    return d


@pytest.fixture
def triangle():
    return ValuedGraph(np.ones((3, 3)) - np.eye(3))


@pytest.fixture
def path3():
    return ValuedGraph(np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float))


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
