from pathlib import Path

import numpy as np
import pytest

from tdsmatch.graph import build_graph
from tdsmatch.io import read_edge_list, read_permutation

DATA = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def fig1():
    """Toy pair matching every quantity of the 25-node worked example."""
    g_a, _ = read_edge_list(DATA / "fig1_a.edges")
    g_b, _ = read_edge_list(DATA / "fig1_b.edges")
    truth = read_permutation(DATA / "fig1_truth.perm")
    return g_a, g_b, truth


@pytest.fixture
def cycle4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
