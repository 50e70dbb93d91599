"""Smooth / canonical / noncanonical classification of a moduli point.

Two facts about the curve are not visible in ``(Γ, M)`` and enter as
annotations: whether the coarse automorphisms are spanned by elliptic tail
involutions, and which elliptic tails carry an order-3 automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .age import AgeReport, find_junior_ghost
from .errors import BudgetExceeded, ValidationError
from .ghosts import has_nontrivial_ghosts
from .graph import DualGraph
from .level import MultiplicityCochain

SMOOTH, CANONICAL, NONCANONICAL = "smooth", "canonical_singular", "noncanonical"


@dataclass(frozen=True)
class CurveAnnotations:
    eti: bool = True
    component_orders: dict[str, int] = field(default_factory=dict)
    order3_tails: frozenset[str] = frozenset()

    @classmethod
    def from_dict(cls, data: dict) -> "CurveAnnotations":
        try:
            return cls(bool(data.get("eti", True)),
                       {str(k): int(v) for k, v in data.get("component_orders", {}).items()},
                       frozenset(str(v) for v in data.get("order3_tails", [])))
        except (TypeError, ValueError, AttributeError) as exc:
            raise ValidationError(f"malformed annotation JSON: {exc}") from exc

    def to_dict(self) -> dict:
        return {"eti": self.eti, "component_orders": dict(self.component_orders),
                "order3_tails": sorted(self.order3_tails)}

    def check(self, graph: DualGraph, level: int) -> None:
        for vid, d in self.component_orders.items():
            graph.vertex_index(vid)
            if d < 1 or level % d:
                raise ValidationError(f"component order {d} at {vid!r} does not divide {level}")
        for vid in sorted(self.order3_tails):
            if not is_elliptic_tail(graph, graph.vertex_index(vid)):
                raise ValidationError(f"vertex {vid!r} is flagged as an elliptic tail but is not one")


def is_elliptic_tail(graph: DualGraph, v: int) -> bool:
    """Arithmetic genus 1 (own genus plus loops) and a single non-loop edge."""
    loops = sum(1 for i in graph.loops if graph.ends[i][0] == v)
    attaching = sum(1 for i in graph.incident(v) if i not in graph.loops)
    return graph.vertices[v].genus + loops == 1 and attaching == 1


@dataclass(frozen=True)
class SingularityReport:
    verdict: str
    reasons: tuple[str, ...]
    junior: AgeReport | None = None
    tail: str | None = None
    complete: bool = True
    """False when the junior-ghost search hit its budget without a witness."""

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "reasons": list(self.reasons), "complete": self.complete}
        if self.junior is not None:
            a = self.junior.age
            out["junior"] = {"element": self.junior.element.to_dict(),
                             "age": f"{a.numerator}/{a.denominator}"}
        if self.tail is not None:
            out["tail"] = self.tail
        return out


def is_smooth_point(graph: DualGraph, M: MultiplicityCochain,
                    annotations: CurveAnnotations | None) -> bool:
    if annotations is None:
        raise ValidationError("missing annotation: coarse automorphism flag required")
    return annotations.eti and not has_nontrivial_ghosts(graph, M)


def detect_T_curve(graph: DualGraph, M: MultiplicityCochain,
                   annotations: CurveAnnotations) -> str | None:
    """First flagged elliptic tail (in vertex order) with trivial level structure."""
    annotations.check(graph, M.level)
    for v in graph.vertices:
        if v.id not in annotations.order3_tails:
            continue
        d = annotations.component_orders.get(v.id)
        if d is None:
            raise ValidationError(f"annotation required for vertex {v.id}")
        if d == 1:
            return v.id
    return None


def classify_point(graph: DualGraph, M: MultiplicityCochain,
                   annotations: CurveAnnotations | None = None,
                   budget: int | None = None) -> SingularityReport:
    annotations = annotations or CurveAnnotations()
    reasons: list[str] = []
    if has_nontrivial_ghosts(graph, M):
        reasons.append("has_nontrivial_ghosts")
    if not annotations.eti:
        reasons.append("non_ETI_coarse_aut")
    complete = True
    try:
        junior = find_junior_ghost(graph, M, budget)
    except BudgetExceeded as exc:
        junior = exc.partial
        complete = junior is not None
    if junior is not None:
        reasons.append(f"J_curve({','.join(map(str, junior.element.values))})")
    tail = detect_T_curve(graph, M, annotations)
    if tail is not None:
        reasons.append(f"T_curve({tail})")
    if junior is not None or tail is not None:
        verdict = NONCANONICAL
    elif not reasons:
        verdict = SMOOTH
    else:
        verdict = CANONICAL
    return SingularityReport(verdict, tuple(reasons), junior, tail, complete)
