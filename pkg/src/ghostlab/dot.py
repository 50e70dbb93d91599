"""Graphviz rendering of a graph with its multiplicities and contraction towers."""

from __future__ import annotations

import math

from .graph import DualGraph
from .level import MultiplicityCochain, contraction_tower, prime_factors, valuation


def _nu(x) -> str:
    return "∞" if x == math.inf else str(x)


def _q(s: str) -> str:
    return '"' + s.replace('"', r'\"') + '"'


def _label(M: MultiplicityCochain, nu: dict, i: int) -> str:
    parts = [str(M.values[i])] + [_nu(nu[p][i]) for p in sorted(nu)]
    return "(" + ", ".join(parts) + ")"


def _cluster(lines: list[str], name: str, title: str, graph: DualGraph, prefix: str,
             labels: list[str]) -> None:
    lines.append(f"  subgraph {_q('cluster_' + name)} {{")
    lines.append(f"    label={_q(title)};")
    for v in graph.vertices:
        lines.append(f"    {_q(prefix + v.id)} [label={_q(f'{v.id} (g={v.genus})')}];")
    for e, lab in zip(graph.edges, labels):
        lines.append(f"    {_q(prefix + e.tail)} -> {_q(prefix + e.head)} "
                     f"[label={_q(e.id + ' ' + lab)}];")
    lines.append("  }")


def to_dot(graph: DualGraph, M: MultiplicityCochain) -> str:
    """Edges are labelled ``(M(e), ν_p(e), ...)``; each tower stage is a cluster."""
    nu = valuation(M).values
    labels = [_label(M, nu, i) for i in range(graph.n_edges)]
    lines = ["digraph ghostlab {", "  compound=true;"]
    _cluster(lines, "source", f"Γ, level {M.level}", graph, "src:", labels)
    for p, e in prime_factors(M.level):
        tower = contraction_tower(M, p)
        for k in range(e, 0, -1):
            st = tower.stages[k]
            sub = [labels[i] for i in st.edge_map]
            _cluster(lines, f"p{p}_k{k}", f"Γ(ν_{p}^{k}): {st.quotient.n_vertices} vertices",
                     st.quotient, f"p{p}k{k}:", sub)
    lines.append("}")
    return "\n".join(lines) + "\n"
