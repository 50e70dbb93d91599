"""Multiplicity cochains, local indices, truncated valuations and towers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

from sympy import factorint

from .cochain import Cochain1, enumerate_ker_partial, in_ker_partial, partial
from .errors import ValidationError
from .graph import Contraction, DualGraph, _components, contract

INF = math.inf
"""Valuation of a zero residue; compares above every integer."""


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[tuple[int, int], ...]:
    """``((p, e_p), ...)`` in increasing order of ``p``; empty for ``n = 1``."""
    if n < 1:
        raise ValidationError(f"level must be positive, got {n}")
    return tuple(sorted(factorint(n).items()))


def val_p(x: int, p: int) -> int | float:
    if x == 0:
        return INF
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


@dataclass(frozen=True)
class MultiplicityCochain:
    """A 1-cochain mod ``level`` lying in ker(partial)."""

    cochain: Cochain1

    def __post_init__(self) -> None:
        if self.cochain.modulus < 1:
            raise ValidationError("level must be positive")
        if not in_ker_partial(self.cochain):
            bad = [self.graph.vertices[v].id
                   for v, x in enumerate(partial(self.cochain).values) if x]
            raise ValidationError(f"multiplicity cochain not in ker ∂ (fails at vertices {bad})")

    @classmethod
    def of(cls, graph: DualGraph, level: int, values) -> "MultiplicityCochain":
        if isinstance(values, dict):
            return cls(Cochain1.from_mapping(graph, level, values))
        return cls(Cochain1(graph, level, tuple(values)))

    @classmethod
    def zero(cls, graph: DualGraph, level: int) -> "MultiplicityCochain":
        return cls(Cochain1.zero(graph, level))

    @property
    def graph(self) -> DualGraph:
        return self.cochain.graph

    @property
    def level(self) -> int:
        return self.cochain.modulus

    @property
    def values(self) -> tuple[int, ...]:
        return self.cochain.values

    def __getitem__(self, eid: str) -> int:
        return self.cochain[eid]

    def scaled(self, k: int) -> "MultiplicityCochain":
        """``k * M`` viewed at level ``k * level``."""
        return MultiplicityCochain(Cochain1(self.graph, k * self.level,
                                            tuple(k * x for x in self.values)))

    def to_dict(self) -> dict:
        return self.cochain.to_dict(key="level")

    @classmethod
    def from_dict(cls, graph: DualGraph, data: dict) -> "MultiplicityCochain":
        return cls(Cochain1.from_dict(graph, data, key="level"))

    @cached_property
    def indices(self) -> tuple["LocalIndices", ...]:
        return tuple(_local(x, self.level) for x in self.values)

    @cached_property
    def r(self) -> tuple[int, ...]:
        return tuple(li.r for li in self.indices)

    @cached_property
    def g(self) -> tuple[int, ...]:
        """``gcd(M(e), level)``, the step of the order-``r(e)`` subgroup."""
        return tuple(self.level // li.r for li in self.indices)


@dataclass(frozen=True)
class LocalIndices:
    r: int
    m: int


def _local(x: int, level: int) -> LocalIndices:
    d = math.gcd(x, level)
    r = level // d
    return LocalIndices(r, (x // d) % r)


def local_indices(M: MultiplicityCochain, edge: int | str | tuple[int, int]) -> LocalIndices:
    """``(r, m)`` at an edge; an oriented edge ``(index, -1)`` negates ``m``."""
    sign = 1
    if isinstance(edge, tuple):
        edge, sign = edge
    i = M.graph.edge_index(edge) if isinstance(edge, str) else edge
    return _local((sign * M.values[i]) % M.level, M.level)


@dataclass(frozen=True)
class ValuationProfile:
    level: int
    values: dict[int, tuple[int | float, ...]]  # prime -> per-edge valuation

    def __getitem__(self, p: int) -> tuple[int | float, ...]:
        return self.values[p]


def valuation(M: MultiplicityCochain) -> ValuationProfile:
    out = {}
    for p, e in prime_factors(M.level):
        q = p ** e
        out[p] = tuple(val_p(x % q, p) for x in M.values)
    return ValuationProfile(M.level, out)


def _exponent(M: MultiplicityCochain, p: int) -> int:
    for q, e in prime_factors(M.level):
        if q == p:
            return e
    raise ValidationError(f"{p} does not divide the level {M.level}")


def filtration_subgraph(M: MultiplicityCochain, p: int, k: int) -> tuple[int, ...]:
    """Indices of edges with truncated ``p``-valuation at least ``k``."""
    e = _exponent(M, p)
    if not 0 <= k <= e:
        raise ValidationError(f"filtration index {k} outside 0..{e}")
    nu = valuation(M)[p]
    return tuple(i for i, x in enumerate(nu) if x >= k)


@dataclass(frozen=True)
class ContractionTower:
    """Stages ``Γ(ν_p^k)`` for ``k = e_p, ..., 0`` keyed by ``k``."""

    prime: int
    exponent: int
    stages: dict[int, Contraction] = field(repr=False)

    @property
    def vertex_counts(self) -> tuple[int, ...]:
        """``#V(ν_p^k)`` for ``k = e_p, ..., 1``."""
        return tuple(self.stages[k].quotient.n_vertices for k in range(self.exponent, 0, -1))

    @property
    def total_vertices(self) -> int:
        return sum(self.vertex_counts)

    def top(self) -> Contraction:
        return self.stages[self.exponent]


def contraction_tower(M: MultiplicityCochain, p: int) -> ContractionTower:
    e = _exponent(M, p)
    stages = {k: contract(M.graph, filtration_subgraph(M, p, k)) for k in range(e, -1, -1)}
    return ContractionTower(p, e, stages)


def tower_vertex_counts(M: MultiplicityCochain, p: int) -> dict[int, int]:
    """``#V(ν_p^k)`` for ``k = 0, ..., e_p`` without building quotient graphs."""
    e = _exponent(M, p)
    nu = valuation(M)[p]
    g = M.graph
    return {k: len(_components(g.n_vertices, g.ends, [i for i, x in enumerate(nu) if x >= k]))
            for k in range(e + 1)}


def towers(M: MultiplicityCochain) -> list[ContractionTower]:
    return [contraction_tower(M, p) for p, _ in prime_factors(M.level)]


def enumerate_multiplicities(graph: DualGraph, level: int) -> Iterator[MultiplicityCochain]:
    for c in enumerate_ker_partial(graph, level):
        yield MultiplicityCochain(c)
