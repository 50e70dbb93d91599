"""Reference instances: worked examples and junior-witness constructions.

Edges are stored along the arrows of the reference drawings; multiplicities
are the edge labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ghosts import SymmetricFunction
from .graph import DualGraph
from .level import MultiplicityCochain


@dataclass(frozen=True)
class Instance:
    name: str
    graph: DualGraph
    M: MultiplicityCochain
    element: SymmetricFunction | None = None

    def scaled(self, k: int) -> "Instance":
        """Multiply ``M`` and the element by ``k`` and the level with them."""
        el = self.element.scaled(k) if self.element is not None else None
        return Instance(f"{self.name}x{k}", self.graph, self.M.scaled(k), el)


def _inst(name, vertices, edges, level, M, a=None) -> Instance:
    g = DualGraph.build(vertices, edges)
    mult = MultiplicityCochain.of(g, level, M)
    el = SymmetricFunction(g, level, a) if a is not None else None
    return Instance(name, g, mult, el)


def triangle(level: int = 3) -> Instance:
    """Three vertices in a directed cycle with ``M`` the circuit."""
    return _inst("triangle", ["v1", "v2", "v3"],
                 [("v1", "v2"), ("v2", "v3"), ("v3", "v1")], level, (1, 1, 1))


def banana(level: int = 3, genera=(0, 0)) -> Instance:
    """Two vertices, two parallel edges, ``M`` the circuit ``(1, -1)``."""
    return _inst("banana", [("v1", genera[0]), ("v2", genera[1])],
                 [("v1", "v2"), ("v1", "v2")], level, (1, -1))


def single_loop(level: int = 3) -> Instance:
    return _inst("loop", ["v"], [("v", "v")], level, (1,))


def vine(level: int = 3) -> Instance:
    """Two vertices joined by three parallel edges of multiplicity 1."""
    return _inst("vine", ["v1", "v2"], [("v1", "v2")] * 3, level, (1, 1, 1))


def conditions_comments() -> Instance:
    """Level 6, three parallel edges with multiplicities 1, 2, 3: no ghosts."""
    return _inst("conditions_comments", ["v1", "v2"], [("v1", "v2")] * 3, 6, (1, 2, 3))


def ghostgroup() -> Instance:
    """Level 8, five vertices, eight edges; the ghost group has order 64."""
    return _inst(
        "ghostgroup", ["A", "B", "C", "D", "T"],
        [("A", "B"), ("A", "B"), ("B", "D"), ("C", "B"),
         ("C", "B"), ("B", "T"), ("T", "D"), ("D", "C")],
        8, (0, 0, 1, 6, 4, 1, 1, 2))


GHOSTGROUP_GENERATORS = {
    2: (0, 0, 0, 4, 4, 0, 0, 4),
    4: (0, 0, 2, 0, 0, 2, 0, 6),
    8: (0, 0, 0, 0, 0, 1, 7, 0),
}
"""Reference generators of the order-64 group keyed by their orders."""


def ghostgroup_generators() -> dict[int, SymmetricFunction]:
    g = ghostgroup().graph
    return {k: SymmetricFunction(g, 8, v) for k, v in GHOSTGROUP_GENERATORS.items()}


def aut5() -> Instance:
    return _inst("aut5", ["X", "Y", "Z"],
                 [("Y", "X"), ("X", "Z"), ("X", "Z"), ("Z", "Y")],
                 5, (2, 1, 1, 2), (1, 1, 1, 1))


def aut8() -> Instance:
    return _inst("aut8", ["P", "Q", "R"],
                 [("Q", "P"), ("P", "R"), ("P", "R"), ("P", "Q"), ("R", "Q")],
                 8, (5, 1, 1, 3, 2), (1, 1, 1, 1, 2))


def aut12() -> Instance:
    return _inst("aut12", ["P", "Q", "R", "S"],
                 [("Q", "P"), ("P", "S"), ("P", "S"), ("P", "Q"), ("R", "Q"), ("S", "R")],
                 12, (7, 1, 1, 5, 2, 2), (1, 1, 1, 1, 2, 2))


def odd_chain(q: int) -> Instance:
    """Junior witness at odd level ``q >= 5`` built by subdividing edges.

    Two parallel ``X -> Z`` edges carry multiplicity 1; the return path
    ``Z -> Y -> W1 -> ... -> X`` has ``(q - 1) / 2`` edges, each of
    multiplicity 2.  The constant function 1 is a ghost of age
    ``((q - 1) / 2 + 2) / q``.  ``q = 5`` recovers the level-5 example.
    """
    if q < 5 or q % 2 == 0:
        raise ValueError("odd_chain needs an odd level q >= 5")
    n_path = (q - 1) // 2
    inner = [f"W{i}" for i in range(1, n_path - 1)]
    path = ["Z", "Y", *inner, "X"]
    edges = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    vertices = ["X", "Y", "Z", *inner]
    all_edges = [edges[-1], ("X", "Z"), ("X", "Z"), *edges[:-1]]
    M = [2, 1, 1] + [2] * (len(all_edges) - 3)
    return _inst(f"chain{q}", vertices, all_edges, q, M, [1] * len(all_edges))


def reference_instances() -> list[Instance]:
    return [triangle(), banana(), single_loop(), vine(), conditions_comments(),
            ghostgroup(), aut5(), aut8(), aut12()]
