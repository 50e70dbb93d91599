"""Connected multigraphs with loops, up to isomorphism, for exhaustive sweeps."""

from __future__ import annotations

import functools
import itertools
from typing import Iterator

from .graph import DualGraph, Edge, Vertex


Shape = tuple[tuple[int, int], ...]


def _vertex_invariant(n: int, edges: Shape) -> list[tuple]:
    degree = [0] * n
    loops = [0] * n
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
        loops[a] += a == b
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if a != b:
            nbrs[a].append(degree[b])
            nbrs[b].append(degree[a])
    return [(degree[v], loops[v], tuple(sorted(nbrs[v]))) for v in range(n)]


def _canonical(n: int, edges: Shape) -> Shape:
    """Least relabelled edge list over labellings that sort the vertex invariant."""
    inv = _vertex_invariant(n, edges)
    classes: dict[tuple, list[int]] = {}
    for v in sorted(range(n), key=lambda v: inv[v]):
        classes.setdefault(inv[v], []).append(v)
    blocks = list(classes.values())
    best = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * n
        for label, v in enumerate(itertools.chain.from_iterable(choice)):
            perm[v] = label
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return best


@functools.lru_cache(maxsize=None)
def _shapes(n_vertices: int, n_edges: int) -> tuple[Shape, ...]:
    # Every connected multigraph with an edge has an edge whose removal leaves a
    # connected graph (a cycle edge) or an isolated leaf, so adding one edge to
    # the smaller shapes reaches every shape.
    if n_edges == 0:
        return ((),) if n_vertices == 1 else ()
    if n_vertices < 1 or n_edges < n_vertices - 1:
        return ()
    found: set[Shape] = set()
    for shape in _shapes(n_vertices, n_edges - 1):
        for a in range(n_vertices):
            for b in range(a, n_vertices):
                found.add(_canonical(n_vertices, shape + ((a, b),)))
    for shape in _shapes(n_vertices - 1, n_edges - 1):
        for a in range(n_vertices - 1):
            found.add(_canonical(n_vertices, shape + ((a, n_vertices - 1),)))
    return tuple(sorted(found))


def multigraph_shapes(n_vertices: int, n_edges: int) -> Iterator[Shape]:
    """Canonical edge lists of connected multigraphs with the given sizes."""
    yield from _shapes(n_vertices, n_edges)


def to_graph(n_vertices: int, edges, genera=None) -> DualGraph:
    genera = genera or [0] * n_vertices
    vs = tuple(Vertex(f"v{i + 1}", genera[i]) for i in range(n_vertices))
    es = tuple(Edge(f"e{k + 1}", f"v{a + 1}", f"v{b + 1}") for k, (a, b) in enumerate(edges))
    return DualGraph(vs, es)


def connected_multigraphs(max_vertices: int, max_edges: int,
                          min_edges: int = 0) -> Iterator[DualGraph]:
    """Every connected multigraph with loops within the bounds, once per
    isomorphism class, ordered by edge count then vertex count."""
    for e in range(min_edges, max_edges + 1):
        for v in range(1, max_vertices + 1):
            if e < v - 1:
                continue
            for shape in multigraph_shapes(v, e):
                yield to_graph(v, shape)
