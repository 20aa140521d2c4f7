import random
import sys
from pathlib import Path

import pytest

from gkcomplex.diagram import doubled_square, dumbbell, k4, relabel, theta

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def theta_d():
    return theta()


@pytest.fixture
def dumbbell_d():
    return dumbbell()


@pytest.fixture
def k4_d():
    return k4()


@pytest.fixture
def doubled_square_d():
    return doubled_square()


def random_relabel(d, rng: random.Random):
    """Random relabelling and the AS sign it introduces."""
    n = d.vertex_count
    vp = list(range(n))
    rng.shuffle(vp)
    perms = []
    sign = 1
    for _ in range(n):
        p = [0, 1, 2]
        rng.shuffle(p)
        perms.append(tuple(p))
        if tuple(p) not in {(0, 1, 2), (1, 2, 0), (2, 0, 1)}:
            sign = -sign
    return relabel(d, vp, perms), sign


@pytest.fixture
def record_criterion():
    def record(number, name, ok, detail=""):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
