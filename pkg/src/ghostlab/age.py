"""Ages of ghosts, junior detection, exhaustive sweeps and junior witnesses."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .catalog import Instance, aut5, aut8, aut12, odd_chain
from .cochain import enumerate_ker_partial
from .enumerate import connected_multigraphs
from .errors import BudgetExceeded
from .ghosts import (SymmetricFunction, candidate_count, cut_scan_size, default_budget,
                     enumerate_ghosts, ghost_group, ghosts_via_cuts, is_ghost)
from .graph import DualGraph
from .level import MultiplicityCochain

TRIVIAL, JUNIOR, SENIOR = "trivial", "junior", "senior"
NO_JUNIOR_LEVELS = frozenset({1, 2, 3, 4, 6})


@dataclass(frozen=True)
class AgeReport:
    element: SymmetricFunction
    age: Fraction
    verdict: str


def age_of(a: SymmetricFunction) -> Fraction:
    return sum((Fraction(x, a.level) for x in a.values), Fraction(0))


def classify(a: SymmetricFunction) -> AgeReport:
    age = age_of(a)
    if a.is_zero():
        verdict = TRIVIAL
    elif age < 1:
        verdict = JUNIOR
    else:
        verdict = SENIOR
    return AgeReport(a, age, verdict)


def _basis_elements(graph: DualGraph, M: MultiplicityCochain,
                    limit: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Chunks of group elements generated by the closed-form basis."""
    G = ghost_group(graph, M)
    gens = np.array([a.values for a in G.generators],
                    dtype=np.int64).reshape(len(G.generators), graph.n_edges)
    radices = [a.order for a in G.generators]
    strides = [math.prod(radices[j + 1:]) for j in range(len(radices))]
    total = min(G.order, limit)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = np.stack([(idx // s) % r for s, r in zip(strides, radices)], axis=1) \
            if radices else np.zeros((len(idx), 0), dtype=np.int64)
        yield (coeffs @ gens) % M.level


def _least_junior(rows: np.ndarray, ell: int) -> tuple[int, ...] | None:
    sums = rows.sum(axis=1)
    hits = rows[(sums > 0) & (sums < ell)]
    if not len(hits):
        return None
    return min(tuple(int(x) for x in r) for r in hits)


def find_junior_ghost(graph: DualGraph, M: MultiplicityCochain,
                      budget: int | None = None) -> AgeReport | None:
    """The lexicographically least junior ghost, or ``None``.

    Uses the cheaper exhaustive scan (coboundaries or S_ν candidates) when it
    fits the budget, and otherwise the span of the closed-form basis.  If even
    that exceeds the budget the partial scan is reported through
    :class:`BudgetExceeded` with any witness found so far.
    """
    budget = default_budget() if budget is None else budget
    ell = M.level
    best: tuple[int, ...] | None = None
    if min(cut_scan_size(M), candidate_count(M)) <= budget:
        if cut_scan_size(M) <= candidate_count(M):
            elements = ghosts_via_cuts(graph, M, budget)
        else:
            elements = enumerate_ghosts(graph, M, budget)
        for a in elements:
            s = sum(a.values)
            if 0 < s < ell and (best is None or a.values < best):
                best = a.values
    else:
        order = ghost_group(graph, M).order
        scanned = 0
        for rows in _basis_elements(graph, M, budget):
            scanned += len(rows)
            cand = _least_junior(rows, ell)
            if cand is not None and (best is None or cand < best):
                best = cand
        if order > budget:
            partial = classify(SymmetricFunction(graph, ell, best)) if best else None
            raise BudgetExceeded(
                f"budget exceeded: scanned {scanned} of {order} ghosts",
                needed=order, scanned=scanned, partial=partial)
    if best is None:
        return None
    return classify(SymmetricFunction(graph, ell, best))


# -- sweeps ----------------------------------------------------------------------------


@dataclass
class SweepInstance:
    graph: DualGraph
    M: MultiplicityCochain
    witness: SymmetricFunction | None
    age: Fraction | None

    def to_dict(self) -> dict:
        out = {"graph": self.graph.to_dict(), "M": self.M.to_dict()}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
            out["age"] = f"{self.age.numerator}/{self.age.denominator}"
        return out


@dataclass
class SweepReport:
    level: int
    graphs: int = 0
    instances: int = 0
    witnesses: list[SweepInstance] = field(default_factory=list)
    skipped: list[DualGraph] = field(default_factory=list)
    min_nontrivial_age: Fraction | None = None

    @property
    def max_age_below_1(self) -> Fraction | None:
        """Largest junior age among the witnesses, ``None`` if there are none."""
        return max((w.age for w in self.witnesses), default=None)

    def summary(self) -> dict:
        def fmt(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"
        return {"level": self.level, "graphs": self.graphs, "instances": self.instances,
                "witnesses": len(self.witnesses), "skipped": len(self.skipped),
                "max_age_below_1": fmt(self.max_age_below_1),
                "min_nontrivial_age": fmt(self.min_nontrivial_age)}

    def to_dict(self) -> dict:
        return {"summary": self.summary(),
                "instances": [w.to_dict() for w in self.witnesses]}


def _coboundaries(graph: DualGraph, ell: int) -> np.ndarray:
    """All ``δx`` with ``x(root) = 0`` as rows."""
    others = [v for v in range(graph.n_vertices) if v != graph.root]
    n = len(others)
    grid = np.array(list(itertools.product(range(ell), repeat=n)), dtype=np.int64).reshape(ell ** n, n)
    D = np.zeros((graph.n_edges, len(others)), dtype=np.int64)
    for i, (t, h) in enumerate(graph.ends):
        for v, s in ((h, 1), (t, -1)):
            if v != graph.root:
                D[i, others.index(v)] += s
    return (grid @ D.T) % ell


def _sweep_graph(graph: DualGraph, ell: int, report: SweepReport) -> None:
    rows = [c.values for c in enumerate_ker_partial(graph, ell)]
    Ms = np.array(rows, dtype=np.int64).reshape(len(rows), graph.n_edges)
    B = _coboundaries(graph, ell)
    g = np.gcd(Ms, ell)                       # (nM, E); gcd(0, ℓ) = ℓ
    r = ell // g
    m = (Ms // g) % r
    inv = np.zeros_like(m)
    for idx in zip(*np.nonzero(r > 1)):
        inv[idx] = pow(int(m[idx]), -1, int(r[idx]))
    ok = ~((B[None, :, :] % g[:, None, :]).any(axis=2))      # (nM, nB)
    A = (B[None, :, :] * inv[:, None, :]) % ell              # (nM, nB, E)
    sums = A.sum(axis=2)
    nontrivial = ok & (sums > 0)
    if nontrivial.any():
        low = Fraction(int(sums[nontrivial].min()), ell)
        if report.min_nontrivial_age is None or low < report.min_nontrivial_age:
            report.min_nontrivial_age = low
    junior = nontrivial & (sums < ell)
    report.instances += len(Ms)
    for k in np.nonzero(junior.any(axis=1))[0]:
        rows = A[k][junior[k]]
        best = min(tuple(int(x) for x in row) for row in rows)
        a = SymmetricFunction(graph, ell, best)
        report.witnesses.append(
            SweepInstance(graph, MultiplicityCochain.of(graph, ell, Ms[k].tolist()), a, age_of(a)))


def junior_sweep(level: int, max_edges: int, max_vertices: int,
                 budget: int | None = None) -> SweepReport:
    """Scan every (graph, M) within the bounds for junior ghosts.

    A graph is skipped (and listed) when ``level ** #E``, the size of its
    joint (M, coboundary) scan, exceeds the budget.
    """
    budget = default_budget() if budget is None else budget
    report = SweepReport(level)
    for graph in connected_multigraphs(max_vertices, max_edges):
        report.graphs += 1
        if level ** graph.n_edges > budget:
            report.skipped.append(graph)
            continue
        _sweep_graph(graph, level, report)
    return report


# -- witnesses ----------------------------------------------------------------------------


def _smallest_odd_divisor_from(level: int, low: int) -> int | None:
    for q in range(low, level + 1, 2):
        if level % q == 0:
            return q
    return None


def junior_witness(level: int) -> Instance | None:
    """A validated junior ghost at ``level``, or ``None`` when none exists."""
    if level in NO_JUNIOR_LEVELS:
        return None
    if level % 5 == 0:
        base = aut5()
    elif (q := _smallest_odd_divisor_from(level, 7)) is not None:
        base = odd_chain(q)
    elif level % 8 == 0:
        base = aut8()
    elif level % 12 == 0:
        base = aut12()
    else:  # pragma: no cover - every level outside NO_JUNIOR_LEVELS is handled above
        raise AssertionError(f"no construction for level {level}")
    k = level // base.M.level
    inst = base.scaled(k) if k > 1 else base
    if not is_ghost(inst.element, inst.M) or classify(inst.element).verdict != JUNIOR:
        raise AssertionError(f"witness construction failed at level {level}")
    return inst
