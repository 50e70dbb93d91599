"""Automorphisms of stack-theoretic elliptic tails acting on their level data.

An automorphism ``(a1, a2)`` combines the elliptic involution (``a1`` mod 2)
with a ghost (``a2`` mod ``r``).  It acts on ``(k1, k2)`` in Z/l ⊕ Z/r by

    (k1, k2) -> ((-1)^a1 k1 + (l/r) a2 k2,  (-1)^a1 k2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import ValidationError


def _check(l: int, r: int) -> None:
    if l < 1 or r < 1 or l % r:
        raise ValidationError(f"r = {r} does not divide l = {l}")


@dataclass(frozen=True)
class TailLineBundle:
    l: int
    r: int
    k1: int
    k2: int

    def __post_init__(self) -> None:
        _check(self.l, self.r)
        object.__setattr__(self, "k1", self.k1 % self.l)
        object.__setattr__(self, "k2", self.k2 % self.r)

    @property
    def faithful(self) -> bool:
        return math.gcd(self.k2, self.r) == 1

    @property
    def order(self) -> int:
        n = 1
        while (n * self.k1) % self.l or (n * self.k2) % self.r:
            n += 1
        return n


@dataclass(frozen=True)
class TailAutomorphism:
    a1: int
    a2: int
    r: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", self.a1 % 2)
        object.__setattr__(self, "a2", self.a2 % self.r)

    @property
    def is_identity(self) -> bool:
        return self.a1 == 0 and self.a2 == 0

    def __matmul__(self, other: "TailAutomorphism") -> "TailAutomorphism":
        """Composition ``self ∘ other`` compatible with :func:`tail_act`."""
        s, t = (-1) ** self.a1, (-1) ** other.a1
        return TailAutomorphism(self.a1 + other.a1, s * other.a2 + t * self.a2, self.r)


def tail_automorphisms(r: int) -> Iterator[TailAutomorphism]:
    for a1 in range(2):
        for a2 in range(r):
            yield TailAutomorphism(a1, a2, r)


def tail_act(g: TailAutomorphism, L: TailLineBundle) -> TailLineBundle:
    if g.r != L.r:
        raise ValidationError(f"automorphism for r = {g.r} applied to bundle with r = {L.r}")
    s = (-1) ** g.a1
    return TailLineBundle(L.l, L.r, s * L.k1 + (L.l // L.r) * g.a2 * L.k2, s * L.k2)


def tail_stabilizer(L: TailLineBundle) -> list[TailAutomorphism]:
    """Nontrivial automorphisms fixing a faithful bundle of order exactly ``l``."""
    if not L.faithful:
        raise ValidationError(f"bundle not faithful: gcd(k2, r) = {math.gcd(L.k2, L.r)}")
    if L.order != L.l:
        raise ValidationError(f"bundle has order {L.order}, expected {L.l}")
    return [g for g in tail_automorphisms(L.r)
            if not g.is_identity and tail_act(g, L) == L]


def faithful_bundles(l: int, r: int) -> Iterator[TailLineBundle]:
    """Faithful bundles of order exactly ``l``."""
    _check(l, r)
    for k1 in range(l):
        for k2 in range(r):
            L = TailLineBundle(l, r, k1, k2)
            if L.faithful and L.order == l:
                yield L


def orbit(L: TailLineBundle) -> set[TailLineBundle]:
    return {tail_act(g, L) for g in tail_automorphisms(L.r)}
