from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import tree4
from ghostlab import catalog
from ghostlab.counting import (boundary_degrees_prime, component_count, component_length,
                               component_length_by_ghosts, fiber_audit, forgetful_degree, phi)
from ghostlab.enumerate import connected_multigraphs
from ghostlab.errors import ValidationError
from ghostlab.graph import betti1
from ghostlab.level import MultiplicityCochain, enumerate_multiplicities


def test_phi_examples():
    assert phi(4, 2) == 15
    assert phi(2, 6) == 24
    assert phi(3, 1) == 1
    for p in (2, 3, 5, 7, 11):
        for n in range(1, 7):
            assert phi(n, p) == p ** n - 1


def test_phi_counts_elements_of_full_order():
    import itertools
    import math
    for ell in range(1, 9):
        for n in (1, 2):
            count = sum(1 for v in itertools.product(range(ell), repeat=n)
                        if math.gcd(ell, *v) == 1)
            assert phi(n, ell) == count


def test_forgetful_degree():
    assert forgetful_degree(2, 2) == Fraction(15, 2)
    assert forgetful_degree(3, 1) == 1
    for p in (2, 3, 5, 7, 11):
        for g in range(2, 7):
            assert forgetful_degree(g, p) == Fraction(p ** (2 * g) - 1, p)
    with pytest.raises(ValidationError):
        forgetful_degree(1, 3)


def test_boundary_degrees_examples():
    table = boundary_degrees_prime(4, 3, 1)
    assert table.reducible[0] == Fraction(8, 3)
    assert table.checks() == {"reducible_sum": True, "irreducible_weighted_sum": True}
    assert boundary_degrees_prime(5, 5, 2).irreducible is None


def test_boundary_degree_identities():
    for g in range(4, 9):
        for ell in (2, 3, 5, 7):
            for i in range(1, (g + 1) // 2):
                table = boundary_degrees_prime(g, ell, i)
                assert table.reducible_sum == forgetful_degree(g, ell)
                if ell == 3:
                    assert table.irreducible_weighted_sum == Fraction(3 ** (2 * g) - 1, 3)


def test_boundary_degree_errors():
    with pytest.raises(ValidationError, match="not prime"):
        boundary_degrees_prime(4, 6, 1)
    with pytest.raises(ValidationError, match="0 < i < g/2"):
        boundary_degrees_prime(4, 3, 2)


def test_boundary_table_serializes_fractions():
    d = boundary_degrees_prime(4, 3, 1).to_dict()
    assert d["reducible"][0] == "8/3"
    assert d["degree"] == "6560/3"


# -- fiber audit --------------------------------------------------------------------------


def test_banana_audit_rows():
    g = catalog.banana(2, (1, 1)).graph
    audit = fiber_audit(g, 2)
    rows = sorted((r.components, r.length) for r in audit.rows)
    assert rows == [(16, 2), (32, 1)]
    assert audit.total == 64 == audit.expected


def test_tree_audit():
    g = tree4().with_genera([1, 0, 2, 0])
    audit = fiber_audit(g, 6)
    assert len(audit.rows) == 1 and audit.rows[0].length == 1
    assert audit.total == 6 ** 6


def test_ghostgroup_audit(ghostgroup):
    audit = fiber_audit(ghostgroup.graph, 8, keep_rows=False)
    assert audit.total == 8 ** 8 and audit.rows == []
    g, M = ghostgroup.graph, ghostgroup.M
    assert component_length(g, M) == component_length_by_ghosts(g, M)


def test_component_length_examples():
    banana = catalog.banana(2)
    assert component_length(banana.graph, banana.M) == 2
    zero = MultiplicityCochain.zero(banana.graph, 2)
    assert component_length(banana.graph, zero) == 1


def test_random_audits():
    rng = random.Random(7)
    graphs = [g for g in connected_multigraphs(4, 6) if betti1(g) <= 3]
    for _ in range(50):
        g = rng.choice(graphs)
        g = g.with_genera([rng.randrange(3) for _ in range(g.n_vertices)])
        ell = rng.randrange(1, 13)
        audit = fiber_audit(g, ell, keep_rows=False)
        assert audit.total == ell ** (2 * audit.genus)


def test_audit_all_small_graphs():
    for g in connected_multigraphs(5, 4):
        # a genus-1 vertex keeps g at most 5 since b1 is at most 4
        g = g.with_genera([1] + [0] * (g.n_vertices - 1))
        for ell in range(1, 13):
            if ell ** betti1(g) > 5000:
                continue
            audit = fiber_audit(g, ell, keep_rows=False)
            assert audit.total == ell ** (2 * audit.genus)


def test_component_length_two_ways(small_graphs):
    for g in small_graphs[::3]:
        for ell in (2, 4, 6, 8, 9, 12):
            for M in list(enumerate_multiplicities(g, ell))[:60]:
                assert component_length(g, M) == component_length_by_ghosts(g, M)


def test_component_count_zero_multiplicity():
    g = catalog.banana(3, (1, 0)).graph
    zero = MultiplicityCochain.zero(g, 3)
    assert component_count(g, zero) == 3 ** 2 * 3 ** 1


def test_audit_to_dict_uses_decimal_strings():
    d = fiber_audit(catalog.banana(2, (1, 1)).graph, 2).to_dict()
    assert d["total"] == "64" and d["expected"] == "64"
    assert {r["length"] for r in d["rows"]} == {"1", "2"}
