"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ghostlab import catalog  # noqa: E402
from ghostlab.age import (JUNIOR, age_of, classify, find_junior_ghost, junior_sweep,  # noqa: E402
                          junior_witness)
from ghostlab.cochain import (Cochain0, Cochain1, all_cochains0, all_cochains1,  # noqa: E402
                              delta, in_im_delta, pairing0, pairing1, partial)
from ghostlab.counting import boundary_degrees_prime, fiber_audit, forgetful_degree  # noqa: E402
from ghostlab.enumerate import connected_multigraphs  # noqa: E402
from ghostlab.ghosts import (element_order_counts, enumerate_ghosts, ghost_group,  # noqa: E402
                             is_ghost, order_counts)
from ghostlab.graph import betti1  # noqa: E402
from ghostlab.level import contraction_tower, enumerate_multiplicities  # noqa: E402
from ghostlab.singularity import NONCANONICAL, classify_point  # noqa: E402
from ghostlab.tails import faithful_bundles, tail_stabilizer  # noqa: E402


def criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    inst = catalog.ghostgroup()
    G = ghost_group(inst.graph, inst.M)
    tower = contraction_tower(inst.M, 2)
    elapsed = time.perf_counter() - start
    got = (G.order, G.elementary_divisors, tower.vertex_counts, tower.total_vertices)
    ok = got == (64, [2, 4, 8], (4, 3, 2), 9) and elapsed < 1
    return ok, f"ghostgroup order/divisors/tower {got} in {elapsed:.3f}s"


def criterion_2() -> tuple[bool, str]:
    ages = {k: age_of(a) for k, a in catalog.ghostgroup_generators().items()}
    ok = ages == {2: Fraction(3, 2), 4: Fraction(5, 4), 8: Fraction(1)}
    return ok, "generator ages " + ", ".join(f"order {k}: {v}" for k, v in sorted(ages.items()))


def criterion_3() -> tuple[bool, str]:
    want = {"aut5": Fraction(4, 5), "aut8": Fraction(3, 4), "aut12": Fraction(2, 3)}
    parts, ok = [], True
    for name, age in want.items():
        inst = getattr(catalog, name)()
        verdict = classify_point(inst.graph, inst.M).verdict
        good = (is_ghost(inst.element, inst.M) and age_of(inst.element) == age
                and verdict == NONCANONICAL)
        ok &= good
        parts.append(f"{name} age {age_of(inst.element)} {verdict}")
    return ok, "; ".join(parts)


def criterion_4() -> tuple[bool, str]:
    tri = catalog.triangle()
    G = ghost_group(tri.graph, tri.M)
    tri_ages = [age_of(a) for a in enumerate_ghosts(tri.graph, tri.M) if not a.is_zero()]
    banana = catalog.banana()
    B = ghost_group(banana.graph, banana.M)
    banana_ages = sorted(age_of(a) for a in enumerate_ghosts(banana.graph, banana.M)
                         if not a.is_zero())
    loop = catalog.single_loop()
    L = ghost_group(loop.graph, loop.M)
    ok = (G.elementary_divisors == [3, 3] and min(tri_ages) == 1
          and find_junior_ghost(tri.graph, tri.M) is None
          and B.elementary_divisors == [3] and banana_ages == [1, 1] and L.order == 1)
    return ok, (f"triangle {G.elementary_divisors} min age {min(tri_ages)}; "
                f"banana {B.elementary_divisors} ages {[str(x) for x in banana_ages]}; "
                f"loop order {L.order}")


def criterion_5() -> tuple[bool, str]:
    parts, ok = [], True
    for ell in (2, 3, 4, 6):
        report = junior_sweep(ell, max_edges=5, max_vertices=4)
        good = not report.witnesses and not report.skipped
        ok &= good
        parts.append(f"l={ell}: {report.instances} instances, {len(report.witnesses)} junior")
    for ell in (5, 7, 8, 12):
        inst = junior_witness(ell)
        good = (inst is not None and inst.M.level == ell and is_ghost(inst.element, inst.M)
                and classify(inst.element).verdict == JUNIOR)
        ok &= good
        parts.append(f"witness l={ell}: age {age_of(inst.element) if inst else None}")
    return ok, "; ".join(parts)


def criterion_6() -> tuple[bool, str]:
    instances = mismatches = 0
    for g in connected_multigraphs(5, 4):
        for ell in range(1, 11):
            for M in enumerate_multiplicities(g, ell):
                els = list(enumerate_ghosts(g, M))
                G = ghost_group(g, M)
                instances += 1
                if (len(els) != G.order
                        or element_order_counts(els) != order_counts(G.elementary_divisors, ell)):
                    mismatches += 1
    return mismatches == 0, f"{instances} instances, {mismatches} mismatches"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(20261016)
    graphs = [g for g in connected_multigraphs(4, 6) if betti1(g) <= 3]
    bad = 0
    for _ in range(50):
        g = rng.choice(graphs)
        g = g.with_genera([rng.randrange(3) for _ in range(g.n_vertices)])
        ell = rng.randrange(1, 13)
        audit = fiber_audit(g, ell, keep_rows=False)
        bad += audit.total != ell ** (2 * audit.genus)
    banana = fiber_audit(catalog.banana(2, (1, 1)).graph, 2)
    rows = sorted((r.components, r.length) for r in banana.rows)
    ok = bad == 0 and banana.total == 64 and rows == [(16, 2), (32, 1)]
    return ok, f"50 random audits, {bad} failures; banana rows {rows} total {banana.total}"


def criterion_8() -> tuple[bool, str]:
    found = {}
    for l in range(1, 13):
        for r in range(1, l + 1):
            if l % r:
                continue
            for L in faithful_bundles(l, r):
                stab = tail_stabilizer(L)
                if stab:
                    found.setdefault((l, r), set()).update((g.a1, g.a2) for g in stab)
    want = {(1, 1): {(1, 0)}, (2, 1): {(1, 0)}, (2, 2): {(1, 0)}, (4, 2): {(1, 1)}}
    return found == want, f"nontrivial stabilizers at {sorted(found)}"


def criterion_9() -> tuple[bool, str]:
    bad = []
    for p in (2, 3, 5, 7, 11, 13):
        for g in range(2, 7):
            if forgetful_degree(g, p) != Fraction(p ** (2 * g) - 1, p):
                bad.append(("deg", p, g))
    for g in range(4, 9):
        for i in range(1, (g + 1) // 2):
            t = boundary_degrees_prime(g, 3, i)
            target = Fraction(3 ** (2 * g) - 1, 3)
            if t.reducible_sum != target or t.irreducible_weighted_sum != target:
                bad.append(("boundary", g, i))
    return not bad, f"degree and level-3 boundary identities, failures {bad}"


def criterion_10() -> tuple[bool, str]:
    counts = {"adjoint": 0, "im_delta": 0, "ghosts": 0}
    bad = []
    rng = random.Random(10)
    # adjointness is bilinear, so basis pairs cover every pair; random pairs add a spot check
    for g in connected_multigraphs(6, 5):
        for n in range(1, 13):
            for v in range(g.n_vertices):
                a = Cochain0.indicator(g, n, [v])
                for e in range(g.n_edges):
                    b = Cochain1.from_mapping(g, n, {g.edges[e].id: 1})
                    counts["adjoint"] += 1
                    if pairing1(delta(a), b) != pairing0(a, partial(b)):
                        bad.append(("adjoint", g, n))
            a = Cochain0(g, n, [rng.randrange(n) for _ in range(g.n_vertices)])
            b = Cochain1(g, n, [rng.randrange(n) for _ in range(g.n_edges)])
            if pairing1(delta(a), b) != pairing0(a, partial(b)):
                bad.append(("adjoint", g, n))
    for g in connected_multigraphs(4, 4):
        for n in range(1, 7):
            image = {delta(a).values for a in all_cochains0(g, n)}
            for b in all_cochains1(g, n):
                counts["im_delta"] += 1
                if in_im_delta(b) != (b.values in image):
                    bad.append(("im_delta", g, n))
    for g in connected_multigraphs(5, 4):
        for ell in range(1, 13):
            for M in enumerate_multiplicities(g, ell):
                for a in enumerate_ghosts(g, M):
                    counts["ghosts"] += 1
                    support = sum(1 for x in a.values if x)
                    if any(a.values[i] for i in g.loops) or support == 1:
                        bad.append(("ghost", g, M.values, a.values))
    return not bad, (f"{counts['adjoint']} basis pairings, {counts['im_delta']} membership "
                     f"tests, {counts['ghosts']} ghosts checked; {len(bad)} failures")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def report(n: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[n]()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = report(n)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        ok, line = report(n)
        failures += not ok
        print(line, flush=True)
    sys.exit(1 if failures else 0)
