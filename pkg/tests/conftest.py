from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ghostlab import catalog
from ghostlab.enumerate import connected_multigraphs
from ghostlab.graph import DualGraph


def tree4() -> DualGraph:
    return DualGraph.build(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("b", "d")])


@pytest.fixture(scope="session")
def small_graphs() -> list[DualGraph]:
    """Connected multigraphs with loops, at most 5 edges."""
    return list(connected_multigraphs(6, 5))


@pytest.fixture(scope="session")
def tiny_graphs() -> list[DualGraph]:
    """Connected multigraphs with loops, at most 4 edges and 4 vertices."""
    return list(connected_multigraphs(4, 4))


@pytest.fixture
def ghostgroup():
    return catalog.ghostgroup()
