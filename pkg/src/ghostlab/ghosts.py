"""Ghost automorphism groups.

A ghost is stored as a symmetric edge function ``a`` whose value ``ã(e)`` is
an exponent of a fixed primitive ``ℓ``-th root of unity.  It must lie in the
order-``r(e)`` subgroup of Z/ℓ at every edge, and the associated 1-cochain
``m(e)·ã(e)`` must be a coboundary.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import divisors, mobius

from .cochain import Cochain0, Cochain1, delta, in_im_delta
from .errors import BudgetExceeded, ValidationError
from .graph import DualGraph, fundamental_circuits
from .level import MultiplicityCochain, contraction_tower, prime_factors, tower_vertex_counts

DEFAULT_BUDGET = 10 ** 7


def default_budget() -> int:
    """Oracle budget, overridable through ``GHOSTLAB_BUDGET``."""
    raw = os.environ.get("GHOSTLAB_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(f"GHOSTLAB_BUDGET is not an integer: {raw!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class SymmetricFunction:
    graph: DualGraph = field(repr=False)
    level: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValidationError("level must be positive")
        vals = tuple(int(x) % self.level for x in self.values)
        if len(vals) != self.graph.n_edges:
            raise ValidationError(f"symmetric function needs {self.graph.n_edges} values")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, graph: DualGraph, level: int) -> "SymmetricFunction":
        return cls(graph, level, (0,) * graph.n_edges)

    @classmethod
    def from_mapping(cls, graph: DualGraph, level: int, values) -> "SymmetricFunction":
        vec = [0] * graph.n_edges
        for eid, x in values.items():
            vec[graph.edge_index(eid)] = int(x)
        return cls(graph, level, tuple(vec))

    def __getitem__(self, eid: str) -> int:
        return self.values[self.graph.edge_index(eid)]

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        return SymmetricFunction(self.graph, self.level,
                                 tuple(x + y for x, y in zip(self.values, other.values)))

    def __neg__(self) -> "SymmetricFunction":
        return SymmetricFunction(self.graph, self.level, tuple(-x for x in self.values))

    def scale(self, k: int) -> "SymmetricFunction":
        return SymmetricFunction(self.graph, self.level, tuple(k * x for x in self.values))

    def scaled(self, k: int) -> "SymmetricFunction":
        """``k * a`` viewed at level ``k * level``."""
        return SymmetricFunction(self.graph, k * self.level, tuple(k * x for x in self.values))

    @property
    def order(self) -> int:
        return self.level // math.gcd(self.level, *self.values)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.values) if x)

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_dict(self) -> dict:
        return {"level": self.level,
                "values": {e.id: x for e, x in zip(self.graph.edges, self.values)}}

    @classmethod
    def from_dict(cls, graph: DualGraph, data: dict) -> "SymmetricFunction":
        try:
            return cls.from_mapping(graph, int(data["level"]), data.get("values", {}))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed ghost JSON: {exc}") from exc


def _check_pair(a: SymmetricFunction, M: MultiplicityCochain) -> None:
    if a.level != M.level:
        raise ValidationError(f"level mismatch: {a.level} vs {M.level}")
    if a.graph != M.graph:
        raise ValidationError("symmetric function and multiplicity live on different graphs")


def in_S_nu(a: SymmetricFunction, M: MultiplicityCochain) -> bool:
    _check_pair(a, M)
    return all(x % g == 0 for x, g in zip(a.values, M.g))


def sym_to_cochain(a: SymmetricFunction, M: MultiplicityCochain) -> Cochain1:
    if not in_S_nu(a, M):
        raise ValidationError("symmetric function outside S_ν")
    return Cochain1(M.graph, M.level, tuple(li.m * x for li, x in zip(M.indices, a.values)))


def cochain_to_sym(b: Cochain1, M: MultiplicityCochain) -> SymmetricFunction:
    if b.modulus != M.level or b.graph != M.graph:
        raise ValidationError("cochain and multiplicity are incompatible")
    out = []
    for x, li, g in zip(b.values, M.indices, M.g):
        if x % g:
            raise ValidationError("b outside C¹_ν")
        out.append(0 if li.r == 1 else pow(li.m, -1, li.r) * x)
    return SymmetricFunction(M.graph, M.level, tuple(out))


def is_ghost(a: SymmetricFunction, M: MultiplicityCochain) -> bool:
    return in_S_nu(a, M) and in_im_delta(sym_to_cochain(a, M))


# -- group structure ------------------------------------------------------------


@dataclass(frozen=True)
class GhostGroup:
    """Structure of the ghost group; the basis is built on first access."""

    M: MultiplicityCochain = field(repr=False)
    exponents: dict[int, tuple[int, ...]]
    """Prime ``p`` -> ``(α_p^1, ..., α_p^{e_p})``: multiplicity of Z/p^k."""

    @property
    def graph(self) -> DualGraph:
        return self.M.graph

    @property
    def level(self) -> int:
        return self.M.level

    @cached_property
    def generators(self) -> tuple[SymmetricFunction, ...]:
        """A basis: one generator per cyclic summand, largest orders first per prime."""
        gens: list[SymmetricFunction] = []
        for p, e in prime_factors(self.level):
            by_order = _tower_generators(self.M, p, e)
            for order in sorted(by_order, reverse=True):
                gens.extend(by_order[order])
        return tuple(gens)

    @property
    def order(self) -> int:
        return math.prod(p ** (k * a) for p, al in self.exponents.items()
                         for k, a in enumerate(al, start=1))

    @property
    def elementary_divisors(self) -> list[int]:
        return sorted(p ** k for p, al in self.exponents.items()
                      for k, a in enumerate(al, start=1) for _ in range(a))

    @property
    def generator_orders(self) -> list[int]:
        return [a.order for a in self.generators]

    def order_counts(self) -> dict[int, int]:
        return order_counts(self.elementary_divisors, self.level)

    def elements(self) -> Iterator[SymmetricFunction]:
        yield from span(self.generators, self.graph, self.level)


def order_counts(invariants: Sequence[int], exponent_bound: int) -> dict[int, int]:
    """Number of elements of each order in ``⊕ Z/n_i``; orders divide ``exponent_bound``."""
    upto = {d: math.prod(math.gcd(d, n) for n in invariants) for d in divisors(exponent_bound)}
    out = {}
    for d in divisors(exponent_bound):
        c = sum(int(mobius(d // e)) * upto[e] for e in divisors(d))
        if c:
            out[int(d)] = c
    return out


def element_order_counts(elements: Iterable[SymmetricFunction]) -> dict[int, int]:
    return dict(Counter(a.order for a in elements))


def span(gens: Sequence[SymmetricFunction], graph: DualGraph,
         level: int) -> Iterator[SymmetricFunction]:
    """Every element of the subgroup generated by ``gens``, each exactly once."""
    seen: set[tuple[int, ...]] = set()
    for coeffs in itertools.product(*(range(a.order) for a in gens)):
        vec = tuple(sum(c * a.values[i] for c, a in zip(coeffs, gens)) % level
                    for i in range(graph.n_edges))
        if vec not in seen:
            seen.add(vec)
            yield SymmetricFunction(graph, level, vec)


def _tower_generators(M: MultiplicityCochain, p: int, e: int) -> dict[int, list[SymmetricFunction]]:
    """Blown-up cut generators keyed by their order ``p^j``.

    For each ``k`` the vertices of ``Γ(ν_p^k)`` are grouped by the vertex of
    ``Γ(ν_p^{k-1})`` they map to.  In each group the vertex holding the least
    source vertex is skipped; every other vertex ``w`` contributes the cut of
    its preimage, scaled by ``ℓ / p^{e-k+1}``.
    """
    tower = contraction_tower(M, p)
    ell = M.level
    out: dict[int, list[SymmetricFunction]] = {}
    for k in range(1, e + 1):
        fine, coarse = tower.stages[k], tower.stages[k - 1]
        fibers = fine.fibers  # source vertices of each fine vertex
        groups: dict[int, list[int]] = {}
        for w, fib in enumerate(fibers):
            groups.setdefault(coarse.vertex_map[min(fib)], []).append(w)
        order = p ** (e - k + 1)
        coeff = ell // order
        for members in groups.values():
            members.sort(key=lambda w: min(fibers[w]))
            for w in members[1:]:
                ind = Cochain0.indicator(M.graph, ell, fibers[w])
                b = delta(ind).scale(coeff)
                out.setdefault(order, []).append(cochain_to_sym(b, M))
    return out


def ghost_group(graph: DualGraph, M: MultiplicityCochain) -> GhostGroup:
    """Closed-form structure of the ghost group from the tower vertex counts."""
    if graph != M.graph:
        raise ValidationError("multiplicity cochain lives on another graph")
    exps: dict[int, tuple[int, ...]] = {}
    for p, e in prime_factors(M.level):
        nv = tower_vertex_counts(M, p)
        exps[p] = tuple(nv[e - k + 1] - nv[e - k] for k in range(1, e + 1))
    return GhostGroup(M, exps)


def has_nontrivial_ghosts(graph: DualGraph, M: MultiplicityCochain) -> bool:
    """True iff some top tower stage is not a bouquet."""
    return any(tower_vertex_counts(M, p)[e] > 1 for p, e in prime_factors(M.level))


# -- exhaustive routes -------------------------------------------------------------------


def _circuit_matrix(graph: DualGraph) -> np.ndarray:
    circuits = fundamental_circuits(graph)
    mat = np.zeros((len(circuits), graph.n_edges), dtype=np.int64)
    for j, c in enumerate(circuits):
        for i, s in c.steps:
            mat[j, i] = s
    return mat


def candidate_count(M: MultiplicityCochain) -> int:
    return math.prod(M.r)


def enumerate_ghosts(graph: DualGraph, M: MultiplicityCochain,
                     budget: int | None = None, chunk: int = 1 << 18) -> Iterator[SymmetricFunction]:
    """Brute-force scan of S_ν, yielding each ghost.

    Loop edges are forced to zero (their one-edge circuit demands it), so only
    non-loop coordinates are scanned.  Ghosts come out in mixed-radix order of
    their coordinates, first edge most significant.
    """
    budget = default_budget() if budget is None else budget
    need = candidate_count(M)
    if need > budget:
        raise BudgetExceeded(f"budget exceeded: {need} candidates > budget {budget}", needed=need)
    ell = M.level
    free = [i for i in range(graph.n_edges)
            if i not in graph.loops and M.r[i] > 1]
    radices = [M.r[i] for i in free]
    total = math.prod(radices)
    mat = _circuit_matrix(graph)[:, free] if free else None
    # ξ_ℓ-exponent of coordinate t at edge i is g(e)*t; its cochain value is m*g*t
    steps_a = np.array([M.g[i] for i in free], dtype=np.int64)
    steps_b = np.array([M.g[i] * M.indices[i].m % ell for i in free], dtype=np.int64)
    strides = [math.prod(radices[j + 1:]) for j in range(len(free))]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        if free:
            digits = np.stack([(idx // s) % r for s, r in zip(strides, radices)], axis=1)
            vals = (mat @ ((digits * steps_b) % ell).T) % ell
            ok = ~vals.any(axis=0)
            hits = digits[ok] * steps_a
        else:
            hits = np.zeros((len(idx), 0), dtype=np.int64)
        for row in hits:
            vec = [0] * graph.n_edges
            for i, x in zip(free, row):
                vec[i] = int(x)
            yield SymmetricFunction(graph, ell, tuple(vec))


def cut_scan_size(M: MultiplicityCochain) -> int:
    return M.level ** max(M.graph.n_vertices - 1, 0)


def ghosts_via_cuts(graph: DualGraph, M: MultiplicityCochain,
                    budget: int | None = None, chunk: int = 1 << 18) -> Iterator[SymmetricFunction]:
    """Exhaustive scan of coboundaries ``δx`` with ``x(root) = 0``.

    Each ghost corresponds to exactly one such ``x`` with ``δx`` in C¹_ν, so
    this lists every ghost once at a cost of ``ℓ^(#V-1)`` candidates.
    """
    budget = default_budget() if budget is None else budget
    need = cut_scan_size(M)
    if need > budget:
        raise BudgetExceeded(f"budget exceeded: {need} candidates > budget {budget}", needed=need)
    ell = M.level
    others = [v for v in range(graph.n_vertices) if v != graph.root]
    pos = {v: j for j, v in enumerate(others)}
    n_e = graph.n_edges
    D = np.zeros((n_e, len(others)), dtype=np.int64)
    for i, (t, h) in enumerate(graph.ends):
        if h in pos:
            D[i, pos[h]] += 1
        if t in pos:
            D[i, pos[t]] -= 1
    gvec = np.array(M.g, dtype=np.int64)
    inv = np.array([0 if li.r == 1 else pow(li.m, -1, li.r) for li in M.indices], dtype=np.int64)
    strides = [ell ** (len(others) - 1 - j) for j in range(len(others))]
    for start in range(0, need, chunk):
        idx = np.arange(start, min(need, start + chunk), dtype=np.int64)
        x = np.stack([(idx // s) % ell for s in strides], axis=1) if others \
            else np.zeros((len(idx), 0), dtype=np.int64)
        b = (x @ D.T) % ell
        ok = ~((b % gvec).any(axis=1))
        a = (b[ok] * inv) % ell
        for row in a:
            yield SymmetricFunction(graph, ell, tuple(int(v) for v in row))
