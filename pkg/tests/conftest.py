import random

import pytest

from deepwide.graph import LabelledGraph

ACCEPTANCE = {}


def random_graph(rng, n, p=None, labels=()):
    p = rng.random() if p is None else p
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return LabelledGraph(n, tuple(es), tuple(labels))


@pytest.fixture
def rng():
    return random.Random(20241018)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {line}")
