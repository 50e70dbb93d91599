"""Z/n-valued cochains on a dual graph and the maps between them.

A 1-cochain stores one residue per edge, read along the stored orientation;
the value on the reversed edge is the negation.  Residues are normalised to
``[0, n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import ValidationError
from .graph import Circuit, Contraction, DualGraph, fundamental_circuits


def _check_modulus(n: int) -> int:
    if int(n) < 1:
        raise ValidationError(f"modulus must be positive, got {n}")
    return int(n)


@dataclass(frozen=True)
class Cochain0:
    graph: DualGraph = field(repr=False)
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        n = _check_modulus(self.modulus)
        vals = tuple(int(x) % n for x in self.values)
        if len(vals) != self.graph.n_vertices:
            raise ValidationError(
                f"0-cochain needs {self.graph.n_vertices} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, graph: DualGraph, n: int) -> "Cochain0":
        return cls(graph, n, (0,) * graph.n_vertices)

    @classmethod
    def indicator(cls, graph: DualGraph, n: int, vertices) -> "Cochain0":
        idx = {graph.vertex_index(v) if isinstance(v, str) else v for v in vertices}
        return cls(graph, n, tuple(int(i in idx) for i in range(graph.n_vertices)))

    def __getitem__(self, vid: str) -> int:
        return self.values[self.graph.vertex_index(vid)]


@dataclass(frozen=True)
class Cochain1:
    graph: DualGraph = field(repr=False)
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        n = _check_modulus(self.modulus)
        vals = tuple(int(x) % n for x in self.values)
        if len(vals) != self.graph.n_edges:
            raise ValidationError(
                f"1-cochain needs {self.graph.n_edges} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, graph: DualGraph, n: int) -> "Cochain1":
        return cls(graph, n, (0,) * graph.n_edges)

    @classmethod
    def from_mapping(cls, graph: DualGraph, n: int, values: Mapping[str, int]) -> "Cochain1":
        vec = [0] * graph.n_edges
        for eid, x in values.items():
            vec[graph.edge_index(eid)] = int(x)
        return cls(graph, n, tuple(vec))

    def __getitem__(self, eid: str) -> int:
        return self.values[self.graph.edge_index(eid)]

    def value(self, oe: tuple[int, int]) -> int:
        """Value on an oriented edge ``(index, sign)``."""
        return (oe[1] * self.values[oe[0]]) % self.modulus

    def __add__(self, other: "Cochain1") -> "Cochain1":
        _same(self, other)
        return Cochain1(self.graph, self.modulus, tuple(x + y for x, y in zip(self.values, other.values)))

    def __neg__(self) -> "Cochain1":
        return Cochain1(self.graph, self.modulus, tuple(-x for x in self.values))

    def scale(self, k: int) -> "Cochain1":
        return Cochain1(self.graph, self.modulus, tuple(k * x for x in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_dict(self, key: str = "modulus") -> dict:
        return {key: self.modulus,
                "values": {e.id: x for e, x in zip(self.graph.edges, self.values)}}

    @classmethod
    def from_dict(cls, graph: DualGraph, data: dict, key: str = "modulus") -> "Cochain1":
        try:
            n = int(data[key])
            values = data.get("values", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed cochain JSON: missing {key!r}") from exc
        return cls.from_mapping(graph, n, values)


def _same(x, y) -> None:
    if x.modulus != y.modulus:
        raise ValidationError(f"modulus mismatch: {x.modulus} vs {y.modulus}")
    if x.graph is not y.graph and x.graph != y.graph:
        raise ValidationError("cochains live on different graphs")


def delta(a: Cochain0) -> Cochain1:
    """Coboundary: value at the head minus value at the tail."""
    v = a.values
    return Cochain1(a.graph, a.modulus, tuple(v[h] - v[t] for t, h in a.graph.ends))


def partial(b: Cochain1) -> Cochain0:
    """Boundary: incoming minus outgoing values at each vertex."""
    out = [0] * b.graph.n_vertices
    for x, (t, h) in zip(b.values, b.graph.ends):
        out[h] += x
        out[t] -= x
    return Cochain0(b.graph, b.modulus, tuple(out))


def pairing0(a1: Cochain0, a2: Cochain0) -> int:
    _same(a1, a2)
    return sum(x * y for x, y in zip(a1.values, a2.values)) % a1.modulus


def pairing1(b1: Cochain1, b2: Cochain1) -> int:
    """Half the sum over oriented edges, i.e. the sum over stored orientations."""
    _same(b1, b2)
    return sum(x * y for x, y in zip(b1.values, b2.values)) % b1.modulus


def circuit_value(b: Cochain1, circuit: Circuit) -> int:
    if circuit.graph is not b.graph and circuit.graph != b.graph:
        raise ValidationError("circuit belongs to another graph")
    return sum(b.value(oe) for oe in circuit.steps) % b.modulus


def in_im_delta(b: Cochain1) -> bool:
    """True iff ``b`` annihilates every fundamental circuit."""
    return all(circuit_value(b, c) == 0 for c in fundamental_circuits(b.graph))


def integrate(b: Cochain1) -> Cochain0:
    """A 0-cochain ``a`` with ``delta(a) = b``, zero at the root.

    Raises :class:`ValidationError` if ``b`` is not a coboundary.
    """
    if not in_im_delta(b):
        raise ValidationError("cochain is not in the image of delta")
    g = b.graph
    parent, depth = g.spanning_tree
    a = [0] * g.n_vertices
    for v in sorted(range(g.n_vertices), key=depth.__getitem__):
        i = parent[v]
        if i is None:
            continue
        t, h = g.ends[i]
        a[v] = a[t] + b.values[i] if h == v else a[h] - b.values[i]
    return Cochain0(g, b.modulus, tuple(a))


def in_ker_partial(b: Cochain1) -> bool:
    return not any(partial(b).values)


def circuit_cochains(graph: DualGraph, n: int) -> list[Cochain1]:
    return [Cochain1(graph, n, c.characteristic()) for c in fundamental_circuits(graph)]


def enumerate_ker_partial(graph: DualGraph, n: int) -> Iterator[Cochain1]:
    """All ``n ** betti1`` elements of ker(partial) mod ``n``.

    Each is a Z/n-combination of fundamental-circuit cochains.  Every circuit
    contains its own non-tree edge and no other, so distinct coefficient
    vectors give distinct cochains.
    """
    n = _check_modulus(n)
    basis = [c.characteristic() for c in fundamental_circuits(graph)]
    for coeffs in itertools.product(range(n), repeat=len(basis)):
        vec = [0] * graph.n_edges
        for k, col in zip(coeffs, basis):
            if k:
                for i, s in enumerate(col):
                    vec[i] += k * s
        yield Cochain1(graph, n, tuple(vec))


def blowup1(c: Cochain1, contraction: Contraction) -> Cochain1:
    """Extend a cochain on the quotient by zero on the contracted edges."""
    if c.graph != contraction.quotient:
        raise ValidationError("cochain does not live on the contracted graph")
    vec = [0] * contraction.source.n_edges
    for j, i in enumerate(contraction.edge_map):
        vec[i] = c.values[j]
    return Cochain1(contraction.source, c.modulus, tuple(vec))


def pullback0(a: Cochain0, contraction: Contraction) -> Cochain0:
    if a.graph != contraction.quotient:
        raise ValidationError("cochain does not live on the contracted graph")
    return Cochain0(contraction.source, a.modulus,
                    tuple(a.values[q] for q in contraction.vertex_map))


def contract0(a: Cochain0, contraction: Contraction) -> Cochain0:
    """Descend a 0-cochain that is constant on every contracted piece."""
    if a.graph != contraction.source:
        raise ValidationError("cochain does not live on the source graph")
    out: list[int | None] = [None] * contraction.quotient.n_vertices
    for v, q in enumerate(contraction.vertex_map):
        if out[q] is None:
            out[q] = a.values[v]
        elif out[q] != a.values[v]:
            name = contraction.quotient.vertices[q].id
            raise ValidationError(f"not ν-compatible: 0-cochain varies inside {name!r}")
    return Cochain0(contraction.quotient, a.modulus, tuple(out))


def all_cochains1(graph: DualGraph, n: int) -> Iterator[Cochain1]:
    for vals in itertools.product(range(n), repeat=graph.n_edges):
        yield Cochain1(graph, n, vals)


def all_cochains0(graph: DualGraph, n: int) -> Iterator[Cochain0]:
    for vals in itertools.product(range(n), repeat=graph.n_vertices):
        yield Cochain0(graph, n, vals)


def as_values(x: Cochain1 | Sequence[int]) -> tuple[int, ...]:
    return x.values if isinstance(x, Cochain1) else tuple(x)
