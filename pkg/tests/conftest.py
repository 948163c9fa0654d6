import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

HAND = [(1.0, 0.5), (2.0, 0.4), (3.0, 2.5)]
TELESCOPE = [(1.0, 0.5), (2.0, 0.4), (3.0, 0.1)]

ACCEPTANCE_LINES = []


@pytest.fixture
def hand():
    return list(HAND)


@pytest.fixture
def rng():
    return np.random.default_rng(20080601)


def random_pairs(rng, n, ties=False, support=6):
    """Random valid pairs; with ``ties`` values come from a small integer grid."""
    if ties:
        x = rng.integers(1, support + 1, size=n).astype(float)
        y = np.array([rng.integers(0, int(xi) + 1) for xi in x], dtype=float)
    else:
        x = rng.exponential(size=n) + 0.01
        y = x * rng.uniform(0, 1, size=n) ** 0.5 - rng.exponential(0.2, size=n)
    return [(float(a), float(b)) for a, b in zip(x, y)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
