"""Stable dual multigraphs: circuits, cuts, Betti numbers and contractions.

Vertices and edges are addressed by string ids at the boundary and by their
position in the file order internally.  Every edge carries a stored
orientation ``tail -> head``; an *oriented edge* is a pair ``(index, sign)``
with ``sign = +1`` along the stored orientation and ``-1`` against it.  The
head of an oriented edge plays the role of ``e_+``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError

OrientedEdge = tuple[int, int]


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True, eq=True)
class DualGraph:
    """A connected multigraph with loops and vertex genera.

    Construction only checks well-formedness (unique ids, known endpoints);
    connectivity and stability are checked by :func:`validate`.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _vindex: dict = field(init=False, repr=False, compare=False, hash=False)
    _eindex: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        vindex: dict[str, int] = {}
        for i, v in enumerate(self.vertices):
            if v.id in vindex:
                raise ValidationError(f"duplicate vertex id {v.id!r}")
            if v.genus < 0:
                raise ValidationError(f"negative genus at vertex {v.id!r}")
            vindex[v.id] = i
        eindex: dict[str, int] = {}
        for i, e in enumerate(self.edges):
            if e.id in eindex:
                raise ValidationError(f"duplicate edge id {e.id!r}")
            for end in (e.tail, e.head):
                if end not in vindex:
                    raise ValidationError(
                        f"dangling edge endpoint: edge {e.id!r} references unknown vertex {end!r}")
            eindex[e.id] = i
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "DualGraph":
        """Build from loose data.

        ``vertices`` holds ids or ``(id, genus)`` pairs; ``edges`` holds
        ``(tail, head)`` or ``(id, tail, head)`` tuples.  Edges without ids are
        named ``e1, e2, ...`` in order.
        """
        vs = []
        for v in vertices:
            if isinstance(v, Vertex):
                vs.append(v)
            elif isinstance(v, str):
                vs.append(Vertex(v))
            else:
                vs.append(Vertex(str(v[0]), int(v[1])))
        es = []
        for i, e in enumerate(edges, start=1):
            if isinstance(e, Edge):
                es.append(e)
            elif len(e) == 2:
                es.append(Edge(f"e{i}", str(e[0]), str(e[1])))
            else:
                es.append(Edge(str(e[0]), str(e[1]), str(e[2])))
        return cls(tuple(vs), tuple(es))

    @classmethod
    def from_dict(cls, data: dict) -> "DualGraph":
        try:
            vs = [Vertex(str(v["id"]), int(v.get("genus", 0))) for v in data["vertices"]]
            es = [Edge(str(e["id"]), str(e["tail"]), str(e["head"])) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed graph JSON: {exc}") from exc
        return cls(tuple(vs), tuple(es))

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v.id, "genus": v.genus} for v in self.vertices],
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in self.edges],
        }

    @classmethod
    def load(cls, path: str | Path) -> "DualGraph":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def with_genera(self, genera: dict[str, int] | Sequence[int]) -> "DualGraph":
        if isinstance(genera, dict):
            vs = tuple(Vertex(v.id, int(genera.get(v.id, v.genus))) for v in self.vertices)
        else:
            vs = tuple(Vertex(v.id, int(g)) for v, g in zip(self.vertices, genera, strict=True))
        return DualGraph(vs, self.edges)

    # -- indexing ---------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, vid: str) -> int:
        try:
            return self._vindex[vid]
        except KeyError:
            raise ValidationError(f"unknown vertex id {vid!r}") from None

    def edge_index(self, eid: str) -> int:
        try:
            return self._eindex[eid]
        except KeyError:
            raise ValidationError(f"unknown edge id {eid!r}") from None

    @cached_property
    def ends(self) -> tuple[tuple[int, int], ...]:
        """``(tail_index, head_index)`` for every edge."""
        return tuple((self._vindex[e.tail], self._vindex[e.head]) for e in self.edges)

    def head(self, oe: OrientedEdge) -> int:
        t, h = self.ends[oe[0]]
        return h if oe[1] > 0 else t

    def tail(self, oe: OrientedEdge) -> int:
        t, h = self.ends[oe[0]]
        return t if oe[1] > 0 else h

    @cached_property
    def loops(self) -> frozenset[int]:
        return frozenset(i for i, (t, h) in enumerate(self.ends) if t == h)

    def valence(self, v: int) -> int:
        """Number of half-edges at ``v``; a loop counts twice."""
        return sum((t == v) + (h == v) for t, h in self.ends)

    def incident(self, v: int) -> list[int]:
        return [i for i, (t, h) in enumerate(self.ends) if t == v or h == v]

    @cached_property
    def root(self) -> int:
        """Index of the vertex with the lexicographically least id."""
        return min(range(self.n_vertices), key=lambda i: self.vertices[i].id)

    # -- connectivity -------------------------------------------------------------

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        return tuple(_components(self.n_vertices, self.ends, range(self.n_edges)))

    @property
    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components) == 1

    @cached_property
    def spanning_tree(self) -> tuple[tuple[int | None, ...], tuple[int, ...]]:
        """Breadth-first spanning tree from :attr:`root`.

        Returns ``(parent_edge, depth)`` arrays; ``parent_edge[v]`` is the tree
        edge joining ``v`` to its parent (``None`` at the root).  Neighbours are
        explored in edge order so the tree is deterministic.
        """
        n = self.n_vertices
        parent: list[int | None] = [None] * n
        depth = [-1] * n
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (t, h) in enumerate(self.ends):
            if t != h:
                adj[t].append((i, h))
                adj[h].append((i, t))
        depth[self.root] = 0
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for i, w in adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w] = i
                    queue.append(w)
        if min(depth) < 0:
            raise ValidationError("disconnected graph has no spanning tree")
        return tuple(parent), tuple(depth)

    @cached_property
    def tree_edges(self) -> frozenset[int]:
        return frozenset(e for e in self.spanning_tree[0] if e is not None)

    def tree_path(self, u: int, w: int) -> list[OrientedEdge]:
        """Oriented edges of the spanning-tree path from ``u`` to ``w``."""
        parent, depth = self.spanning_tree
        up: list[OrientedEdge] = []    # from u towards the meeting point
        down: list[OrientedEdge] = []  # from w towards the meeting point, reversed later
        a, b = u, w
        while a != b:
            if depth[a] >= depth[b]:
                i = parent[a]
                t, h = self.ends[i]
                # walk a -> parent(a)
                up.append((i, 1) if t == a else (i, -1))
                a = h if t == a else t
            else:
                i = parent[b]
                t, h = self.ends[i]
                # the final path walks parent(b) -> b
                down.append((i, 1) if h == b else (i, -1))
                b = t if h == b else h
        return up + down[::-1]


def _components(n: int, ends: Sequence[tuple[int, int]], edge_ids: Iterable[int]) -> list[frozenset[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in edge_ids:
        a, b = find(ends[i][0]), find(ends[i][1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(groups[k]) for k in sorted(groups)]


# -- circuits and cuts -------------------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A closed walk through distinct edges, as a sequence of oriented edges."""

    graph: DualGraph = field(repr=False)
    steps: tuple[OrientedEdge, ...]

    def __post_init__(self) -> None:
        g = self.graph
        if not self.steps:
            raise ValidationError("empty circuit")
        seen = [i for i, _ in self.steps]
        if len(set(seen)) != len(seen):
            raise ValidationError("circuit repeats an edge")
        n = len(self.steps)
        for j in range(n):
            if g.head(self.steps[j]) != g.tail(self.steps[(j + 1) % n]):
                raise ValidationError("circuit steps do not chain")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def edge_ids(self) -> list[str]:
        return [self.graph.edges[i].id for i, _ in self.steps]

    def characteristic(self) -> tuple[int, ...]:
        """Integer 1-cochain (stored orientations): +1/-1 along the walk."""
        vec = [0] * self.graph.n_edges
        for i, s in self.steps:
            vec[i] = s
        return tuple(vec)


@dataclass(frozen=True)
class Cut:
    graph: DualGraph = field(repr=False)
    side: frozenset[int]

    def __post_init__(self) -> None:
        if not self.side or len(self.side) >= self.graph.n_vertices:
            raise ValidationError("a cut needs a proper nonempty vertex subset")

    def characteristic(self) -> tuple[int, ...]:
        """``delta`` of the indicator of ``side``: +1 on edges whose head is in
        ``side`` and tail outside, -1 in the opposite case, 0 elsewhere."""
        return tuple((h in self.side) - (t in self.side) for t, h in self.graph.ends)


# -- operations ----------------------------------------------------------------------


def validate(graph: DualGraph, require_stable: bool = False, min_genus: int = 0) -> DualGraph:
    """Raise :class:`ValidationError` unless ``graph`` is admissible; return it."""
    if graph.n_vertices == 0:
        raise ValidationError("graph has no vertices")
    comps = graph.components
    if len(comps) > 1:
        stray = sorted(graph.vertices[v].id for v in comps[1])
        raise ValidationError(f"disconnected: vertices {stray} unreachable from {graph.vertices[0].id!r}")
    if require_stable:
        for v, vert in enumerate(graph.vertices):
            val = graph.valence(v)
            if (vert.genus == 0 and val < 3) or (vert.genus == 1 and val < 1):
                raise ValidationError(
                    f"unstable vertex {vert.id!r}: genus {vert.genus}, valence {val}")
        g = total_genus(graph)
        if g < min_genus:
            raise ValidationError(f"genus too small: {g} < {min_genus}")
    return graph


def betti1(graph: DualGraph) -> int:
    return graph.n_edges - graph.n_vertices + len(graph.components)


def total_genus(graph: DualGraph) -> int:
    return sum(v.genus for v in graph.vertices) + betti1(graph)


def fundamental_circuits(graph: DualGraph) -> list[Circuit]:
    """One circuit per non-tree edge of the breadth-first spanning tree.

    The circuit of a non-tree edge ``e = (t -> h)`` walks the tree path from
    ``t`` to ``h`` and returns along ``e`` reversed; a loop gives the single
    step ``(e, -1)``.
    """
    tree = graph.tree_edges
    out = []
    for i, (t, h) in enumerate(graph.ends):
        if i in tree:
            continue
        out.append(Circuit(graph, tuple(graph.tree_path(t, h)) + ((i, -1),)))
    return out


def cuts_basis(graph: DualGraph) -> list[Cut]:
    """Single-vertex cuts ``W = {v}`` for every vertex but the root."""
    return [Cut(graph, frozenset({v})) for v in range(graph.n_vertices) if v != graph.root]


def subgraph_betti1(graph: DualGraph, edges: Iterable[int]) -> int:
    """b1 of the subgraph spanned by ``edges`` and their end vertices."""
    edges = list(edges)
    if not edges:
        return 0
    verts = sorted({v for i in edges for v in graph.ends[i]})
    local = {v: k for k, v in enumerate(verts)}
    ends = [(local[graph.ends[i][0]], local[graph.ends[i][1]]) for i in edges]
    return len(edges) - len(verts) + len(_components(len(verts), ends, range(len(edges))))


def is_bouquet(graph: DualGraph) -> bool:
    return graph.n_vertices == 1


@dataclass(frozen=True)
class Contraction:
    """The quotient of ``source`` by a set of edges.

    ``vertex_map[v]`` is the quotient vertex of source vertex ``v``;
    ``edge_map[j]`` is the source index of quotient edge ``j``.
    """

    source: DualGraph = field(repr=False)
    contracted: frozenset[int]
    quotient: DualGraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    @property
    def fibers(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.quotient.n_vertices)]
        for v, q in enumerate(self.vertex_map):
            out[q].add(v)
        return [frozenset(s) for s in out]


def contract(graph: DualGraph, edges: Iterable[int | str]) -> Contraction:
    """Contract the given edges (indices or ids).

    Quotient vertices are ordered by their least source vertex; a merged vertex
    is named by joining source ids with ``+`` and receives the arithmetic
    genus of the piece it replaces.
    """
    idx = set()
    for e in edges:
        if isinstance(e, str):
            idx.add(graph.edge_index(e))
        else:
            if not 0 <= e < graph.n_edges:
                raise ValidationError(f"unknown edge index {e}")
            idx.add(int(e))
    comps = _components(graph.n_vertices, graph.ends, sorted(idx))
    comps.sort(key=min)
    vmap = [0] * graph.n_vertices
    for q, comp in enumerate(comps):
        for v in comp:
            vmap[v] = q
    new_vertices = []
    for comp in comps:
        members = sorted(comp)
        inner = [i for i in idx if graph.ends[i][0] in comp]
        genus = sum(graph.vertices[v].genus for v in members) + subgraph_betti1(graph, inner)
        name = "+".join(graph.vertices[v].id for v in members)
        new_vertices.append(Vertex(name, genus))
    emap = tuple(i for i in range(graph.n_edges) if i not in idx)
    new_edges = tuple(
        Edge(graph.edges[i].id,
             new_vertices[vmap[graph.ends[i][0]]].id,
             new_vertices[vmap[graph.ends[i][1]]].id)
        for i in emap)
    quotient = DualGraph(tuple(new_vertices), new_edges)
    return Contraction(graph, frozenset(idx), quotient, tuple(vmap), emap)
