"""Counting audits: point counts, forgetful degrees, fiber lengths."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from .errors import AuditError, ValidationError
from .ghosts import ghost_group
from .graph import DualGraph, subgraph_betti1, betti1, total_genus
from .level import (MultiplicityCochain, contraction_tower, enumerate_multiplicities,
                    filtration_subgraph, prime_factors)


def phi(n: int, level: int) -> int:
    """``ℓ^n ∏_{p | ℓ} (1 - p^-n)``, the number of elements of order ``ℓ`` in (Z/ℓ)^n."""
    if level < 1 or n < 0:
        raise ValidationError("phi needs level >= 1 and n >= 0")
    return math.prod(p ** (e * n) - p ** ((e - 1) * n) for p, e in prime_factors(level))


def forgetful_degree(g: int, level: int) -> Fraction:
    if g < 2:
        raise ValidationError(f"genus must be at least 2, got {g}")
    return Fraction(phi(2 * g, level), level)


def component_count(graph: DualGraph, M: MultiplicityCochain) -> int:
    pg = sum(v.genus for v in graph.vertices)
    out = M.level ** (2 * pg)
    for p, e in prime_factors(M.level):
        for k in range(1, e + 1):
            out *= p ** subgraph_betti1(graph, filtration_subgraph(M, p, k))
    return out


def component_length(graph: DualGraph, M: MultiplicityCochain) -> int:
    """Length of each fiber component, via the contraction towers."""
    out = 1
    for p, e in prime_factors(M.level):
        tower = contraction_tower(M, p)
        for k in range(1, e + 1):
            out *= p ** betti1(tower.stages[k].quotient)
    return out


def component_length_by_ghosts(graph: DualGraph, M: MultiplicityCochain) -> int:
    """Length as stabiliser order over ghost-group order."""
    num = math.prod(M.r)
    den = ghost_group(graph, M).order
    if num % den:
        raise AuditError(f"ghost order {den} does not divide {num}")
    return num // den


@dataclass
class FiberRow:
    M: MultiplicityCochain
    components: int
    length: int

    @property
    def total(self) -> int:
        return self.components * self.length

    def to_dict(self) -> dict:
        return {"M": self.M.to_dict(), "components": str(self.components),
                "length": str(self.length)}


@dataclass
class FiberAudit:
    graph: DualGraph = field(repr=False)
    level: int
    genus: int
    total: int
    rows: list[FiberRow] = field(default_factory=list)

    @property
    def expected(self) -> int:
        return self.level ** (2 * self.genus)

    def to_dict(self) -> dict:
        return {"level": self.level, "genus": self.genus, "total": str(self.total),
                "expected": str(self.expected), "rows": [r.to_dict() for r in self.rows]}


def fiber_audit(graph: DualGraph, level: int, keep_rows: bool = True) -> FiberAudit:
    """Sum ``components * length`` over every multiplicity cochain.

    Raises :class:`AuditError` if the sum is not ``ℓ^(2g)``.
    """
    g = total_genus(graph)
    audit = FiberAudit(graph, level, g, 0)
    for M in enumerate_multiplicities(graph, level):
        row = FiberRow(M, component_count(graph, M), component_length(graph, M))
        audit.total += row.total
        if keep_rows:
            audit.rows.append(row)
    if audit.total != audit.expected:
        raise AuditError(f"fiber total {audit.total} != {level}^{2 * g}")
    return audit


@dataclass(frozen=True)
class BoundaryDegrees:
    genus: int
    level: int
    i: int
    reducible: tuple[Fraction, Fraction, Fraction]
    irreducible: tuple[Fraction, Fraction, Fraction] | None
    """Degrees of δ₀', δ₀'' and δ₀^ram at level 3; ``None`` otherwise."""

    @property
    def reducible_sum(self) -> Fraction:
        return sum(self.reducible, Fraction(0))

    @property
    def irreducible_weighted_sum(self) -> Fraction | None:
        if self.irreducible is None:
            return None
        first, second, ram = self.irreducible
        return first + second + self.level * ram

    @property
    def degree(self) -> Fraction:
        return forgetful_degree(self.genus, self.level)

    def checks(self) -> dict[str, bool]:
        out = {"reducible_sum": self.reducible_sum == self.degree}
        if self.irreducible is not None:
            out["irreducible_weighted_sum"] = self.irreducible_weighted_sum == self.degree
        return out

    def to_dict(self) -> dict:
        def f(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"
        out = {"genus": self.genus, "level": self.level, "i": self.i,
               "reducible": [f(x) for x in self.reducible],
               "reducible_sum": f(self.reducible_sum), "degree": f(self.degree),
               "checks": self.checks()}
        if self.irreducible is not None:
            out["irreducible"] = [f(x) for x in self.irreducible]
            out["irreducible_weighted_sum"] = f(self.irreducible_weighted_sum)
        return out


def boundary_degrees_prime(g: int, level: int, i: int) -> BoundaryDegrees:
    """Degrees over the boundary divisors of the forgetful map at prime level."""
    if not isprime(level):
        raise ValidationError(f"level {level} is not prime")
    if not 0 < 2 * i < g:
        raise ValidationError(f"index i = {i} must satisfy 0 < i < g/2")
    l = level
    a, b = l ** (2 * i) - 1, l ** (2 * g - 2 * i) - 1
    reducible = (Fraction(a, l), Fraction(b, l), Fraction(a * b, l))
    irreducible = None
    if l == 3:
        t = 3 ** (2 * g - 2)
        irreducible = (Fraction(3 * (t - 1), 3), Fraction(2, 3), Fraction(2 * t, 3))
    return BoundaryDegrees(g, l, i, reducible, irreducible)
