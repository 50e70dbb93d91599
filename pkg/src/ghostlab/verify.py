"""Self-check suite over the reference examples.

Each check recomputes a known value from scratch and compares it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog
from .age import age_of, classify, find_junior_ghost, junior_witness, JUNIOR
from .cochain import Cochain1, circuit_value, in_im_delta, in_ker_partial
from .counting import (boundary_degrees_prime, component_length, component_length_by_ghosts,
                       fiber_audit, forgetful_degree, phi)
from .ghosts import (SymmetricFunction, cochain_to_sym, enumerate_ghosts, ghost_group,
                     has_nontrivial_ghosts, is_ghost, sym_to_cochain)
from .graph import betti1, contract, fundamental_circuits
from .level import contraction_tower, local_indices, valuation, INF
from .singularity import NONCANONICAL, CANONICAL, CurveAnnotations, classify_point
from .tails import TailLineBundle, tail_stabilizer


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _eq(got, want) -> tuple[bool, str]:
    return got == want, f"got {got!r}, expected {want!r}"


def _ghostgroup_structure():
    inst = catalog.ghostgroup()
    G = ghost_group(inst.graph, inst.M)
    tower = contraction_tower(inst.M, 2)
    return _eq((G.order, G.elementary_divisors, tower.vertex_counts, tower.total_vertices),
               (64, [2, 4, 8], (4, 3, 2), 9))


def _ghostgroup_oracle():
    inst = catalog.ghostgroup()
    return _eq(sum(1 for _ in enumerate_ghosts(inst.graph, inst.M)), 64)


def _ghostgroup_valuation():
    inst = catalog.ghostgroup()
    return _eq(valuation(inst.M)[2], (INF, INF, 0, 1, 2, 0, 0, 1))


def _ghostgroup_first_stage():
    inst = catalog.ghostgroup()
    return _eq(contract(inst.graph, ["e1", "e2"]).quotient.n_vertices, 4)


def _generator_ages():
    inst = catalog.ghostgroup()
    gens = catalog.ghostgroup_generators()
    got = {k: (is_ghost(a, inst.M), a.order, age_of(a)) for k, a in gens.items()}
    want = {2: (True, 2, Fraction(3, 2)), 4: (True, 4, Fraction(5, 4)), 8: (True, 8, Fraction(1))}
    return _eq(got, want)


def _aut(factory, age):
    def check():
        inst = factory()
        report = classify_point(inst.graph, inst.M, CurveAnnotations())
        got = (is_ghost(inst.element, inst.M), age_of(inst.element),
               classify(inst.element).verdict, report.verdict)
        return _eq(got, (True, age, JUNIOR, NONCANONICAL))
    return check


def _aut5_dictionary():
    inst = catalog.aut5()
    b = sym_to_cochain(inst.element, inst.M)
    back = cochain_to_sym(inst.M.cochain, inst.M)
    return _eq((b.values, back.values), ((2, 1, 1, 2), (1, 1, 1, 1)))


def _circuit_triangle():
    inst = catalog.triangle()
    G = ghost_group(inst.graph, inst.M)
    ghosts = list(enumerate_ghosts(inst.graph, inst.M))
    low = min(age_of(a) for a in ghosts if not a.is_zero())
    return _eq((G.elementary_divisors, len(ghosts), low, find_junior_ghost(inst.graph, inst.M)),
               ([3, 3], 9, Fraction(1), None))


def _circuit_banana():
    inst = catalog.banana()
    ghosts = [a for a in enumerate_ghosts(inst.graph, inst.M) if not a.is_zero()]
    return _eq((ghost_group(inst.graph, inst.M).elementary_divisors,
                sorted(age_of(a) for a in ghosts)),
               ([3], [Fraction(1), Fraction(1)]))


def _circuit_loop():
    inst = catalog.single_loop()
    return _eq((ghost_group(inst.graph, inst.M).order,
                len(fundamental_circuits(inst.graph)[0])), (1, 1))


def _banana_circuit_value():
    inst = catalog.banana()
    b = Cochain1(inst.graph, 3, (1, 2))
    return _eq((circuit_value(b, fundamental_circuits(inst.graph)[0]), in_im_delta(b)), (2, False))


def _vine():
    inst = catalog.vine()
    a = SymmetricFunction(inst.graph, 3, (1, 1, 1))
    return _eq((in_im_delta(inst.M.cochain), is_ghost(a, inst.M)), (True, True))


def _conditions_comments():
    inst = catalog.conditions_comments()
    return _eq((ghost_group(inst.graph, inst.M).order, has_nontrivial_ghosts(inst.graph, inst.M)),
               (1, False))


def _fig2_ker():
    inst = catalog.ghostgroup()
    return _eq((in_ker_partial(inst.M.cochain), betti1(inst.graph)), (True, 4))


def _fig2_classification():
    inst = catalog.ghostgroup()
    return _eq(classify_point(inst.graph, inst.M, CurveAnnotations()).verdict, CANONICAL)


def _local_indices():
    inst = catalog.ghostgroup()
    li = local_indices(inst.M, "e4")
    return _eq((li.r, li.m), (4, 3))


def _component_length():
    inst = catalog.ghostgroup()
    return _eq(component_length(inst.graph, inst.M),
               component_length_by_ghosts(inst.graph, inst.M))


def _fiber_banana():
    inst = catalog.banana(2, (1, 1))
    audit = fiber_audit(inst.graph, 2)
    return _eq((audit.total, [(r.components, r.length) for r in audit.rows]),
               (64, [(32, 1), (16, 2)]))


def _fiber_fig2():
    inst = catalog.ghostgroup()
    return _eq(fiber_audit(inst.graph, 8, keep_rows=False).total, 8 ** 8)


def _no_junior_levels():
    return _eq([l for l in range(1, 13) if junior_witness(l) is None], [1, 2, 3, 4, 6])


def _witness_10():
    w = junior_witness(10)
    return _eq((w.M.values, w.element.values, age_of(w.element)),
               ((4, 2, 2, 4), (2, 2, 2, 2), Fraction(4, 5)))


def _tails():
    got = {(1, 1, 0, 0), (2, 1, 1, 0), (2, 2, 0, 1), (2, 2, 1, 1), (4, 2, 1, 1), (4, 2, 3, 1)}
    found = set()
    for l in range(1, 13):
        for r in (d for d in range(1, l + 1) if l % d == 0):
            for k1 in range(l):
                for k2 in range(r):
                    L = TailLineBundle(l, r, k1, k2)
                    if L.faithful and L.order == l and tail_stabilizer(L):
                        found.add((l, r, k1, k2))
    return _eq(found, got)


def _tail_case_iv():
    s = tail_stabilizer(TailLineBundle(4, 2, 1, 1))
    return _eq([(g.a1, g.a2) for g in s], [(1, 1)])


def _degrees():
    ok = all(forgetful_degree(g, l) == Fraction(l ** (2 * g) - 1, l)
             for g in range(2, 7) for l in (2, 3, 5, 7))
    tables = all(all(boundary_degrees_prime(g, 3, i).checks().values())
                 for g in range(4, 9) for i in range(1, (g + 1) // 2))
    return _eq((ok, tables, phi(4, 2), phi(2, 6)), (True, True, 15, 24))


CHECKS: dict[str, Callable[[], tuple[bool, str]]] = {
    "ghostgroup.structure": _ghostgroup_structure,
    "ghostgroup.oracle": _ghostgroup_oracle,
    "ghostgroup.valuation": _ghostgroup_valuation,
    "ghostgroup.first_stage": _ghostgroup_first_stage,
    "ghostgroup.ker_partial": _fig2_ker,
    "ghostgroup.local_indices": _local_indices,
    "ghostgroup.generator_ages": _generator_ages,
    "ghostgroup.canonical": _fig2_classification,
    "ghostgroup.component_length": _component_length,
    "aut5": _aut(catalog.aut5, Fraction(4, 5)),
    "aut5.dictionary": _aut5_dictionary,
    "aut8": _aut(catalog.aut8, Fraction(3, 4)),
    "aut12": _aut(catalog.aut12, Fraction(2, 3)),
    "circuit.triangle": _circuit_triangle,
    "circuit.banana": _circuit_banana,
    "circuit.loop": _circuit_loop,
    "circuit.banana_value": _banana_circuit_value,
    "vine": _vine,
    "conditions_comments": _conditions_comments,
    "fiber.banana": _fiber_banana,
    "fiber.ghostgroup": _fiber_fig2,
    "witness.levels": _no_junior_levels,
    "witness.scaled10": _witness_10,
    "tails.classification": _tails,
    "tails.case_iv": _tail_case_iv,
    "counting.degrees": _degrees,
}

SUITES = {"paper-examples": CHECKS}


def run_suite(name: str = "paper-examples") -> list[CheckResult]:
    out = []
    for key in sorted(SUITES[name]):
        try:
            ok, detail = SUITES[name][key]()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(key, ok, detail))
    return out
