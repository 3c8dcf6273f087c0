import numpy as np
import pytest

from tensor_perron import SparseTensor


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def ones3():
    """Order-3 dimension-2 all-ones tensor."""
    return SparseTensor.from_dense(np.ones((2, 2, 2)))


@pytest.fixture
def swap23():
    """The matrix [[0, 2], [3, 0]]."""
    return SparseTensor(2, 2, {(1, 2): 2.0, (2, 1): 3.0})


@pytest.fixture
def loop_tensor():
    """a_111 = 2, a_122 = 2, a_211 = 8: slice sums (4, 8), loop at vertex 1."""
    return SparseTensor(3, 2, {(1, 1, 1): 2.0, (1, 2, 2): 2.0, (2, 1, 1): 8.0})


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line for an acceptance criterion and assert it."""

    def record(number, title, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
