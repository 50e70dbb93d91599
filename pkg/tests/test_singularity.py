from __future__ import annotations

import pytest

from ghostlab import catalog
from ghostlab.errors import ValidationError
from ghostlab.ghosts import ghost_group, has_nontrivial_ghosts
from ghostlab.graph import DualGraph
from ghostlab.level import MultiplicityCochain, enumerate_multiplicities
from ghostlab.singularity import (CANONICAL, NONCANONICAL, SMOOTH, CurveAnnotations,
                                  classify_point, detect_T_curve, is_elliptic_tail,
                                  is_smooth_point)


def tailed_graph() -> DualGraph:
    """A genus-1 tail ``t`` hanging off a triangle."""
    return DualGraph.build(["a", "b", "c", ("t", 1)],
                           [("a", "b"), ("b", "c"), ("c", "a"), ("a", "t")])


def tailed_M(level: int = 3) -> MultiplicityCochain:
    return MultiplicityCochain.of(tailed_graph(), level, (1, 1, 1, 0))


@pytest.mark.parametrize("name", ["aut5", "aut8", "aut12"])
def test_reference_junior_instances_are_noncanonical(name):
    inst = getattr(catalog, name)()
    report = classify_point(inst.graph, inst.M)
    assert report.verdict == NONCANONICAL
    assert any(r.startswith("J_curve(") for r in report.reasons)
    assert 0 < report.junior.age < 1
    assert report.complete


def test_ghostgroup_is_canonical_singular(ghostgroup):
    report = classify_point(ghostgroup.graph, ghostgroup.M)
    assert report.verdict == CANONICAL
    assert report.reasons == ("has_nontrivial_ghosts",)


def test_trivial_ghosts_and_eti_is_smooth():
    inst = catalog.conditions_comments()
    report = classify_point(inst.graph, inst.M, CurveAnnotations())
    assert report.verdict == SMOOTH and report.reasons == ()
    assert is_smooth_point(inst.graph, inst.M, CurveAnnotations())


def test_non_eti_is_canonical_singular():
    inst = catalog.conditions_comments()
    report = classify_point(inst.graph, inst.M, CurveAnnotations(eti=False))
    assert report.verdict == CANONICAL
    assert report.reasons == ("non_ETI_coarse_aut",)
    assert not is_smooth_point(inst.graph, inst.M, CurveAnnotations(eti=False))


def test_missing_annotations_rejected_for_smoothness():
    inst = catalog.triangle()
    with pytest.raises(ValidationError, match="missing annotation"):
        is_smooth_point(inst.graph, inst.M, None)


def test_elliptic_tail_detection():
    g = tailed_graph()
    assert is_elliptic_tail(g, g.vertex_index("t"))
    assert not is_elliptic_tail(g, g.vertex_index("a"))
    # genus 0 with one loop counts as arithmetic genus 1
    h = DualGraph.build(["a", "b", "t"], [("a", "b"), ("b", "a"), ("a", "t"), ("t", "t")])
    assert is_elliptic_tail(h, h.vertex_index("t"))


def test_t_curve_needs_trivial_tail_order():
    g, M = tailed_graph(), tailed_M()
    flagged = CurveAnnotations(order3_tails=frozenset({"t"}), component_orders={"t": 1})
    assert detect_T_curve(g, M, flagged) == "t"
    report = classify_point(g, M, flagged)
    assert report.verdict == NONCANONICAL
    assert "T_curve(t)" in report.reasons
    nontrivial = CurveAnnotations(order3_tails=frozenset({"t"}), component_orders={"t": 3})
    assert detect_T_curve(g, M, nontrivial) is None
    assert classify_point(g, M, nontrivial).verdict == CANONICAL


def test_t_curve_annotation_errors():
    g, M = tailed_graph(), tailed_M()
    with pytest.raises(ValidationError, match="annotation required for vertex t"):
        detect_T_curve(g, M, CurveAnnotations(order3_tails=frozenset({"t"})))
    with pytest.raises(ValidationError, match="not one"):
        detect_T_curve(g, M, CurveAnnotations(order3_tails=frozenset({"a"}),
                                              component_orders={"a": 1}))
    with pytest.raises(ValidationError, match="does not divide"):
        detect_T_curve(g, M, CurveAnnotations(component_orders={"t": 2}))


def test_t_flag_is_monotone():
    g = tailed_graph()
    for M in enumerate_multiplicities(g, 6):
        base = classify_point(g, M, CurveAnnotations())
        flagged = classify_point(g, M, CurveAnnotations(order3_tails=frozenset({"t"}),
                                                       component_orders={"t": 1}))
        assert flagged.verdict == NONCANONICAL
        if base.verdict == NONCANONICAL:
            assert flagged.verdict == NONCANONICAL


def test_tail_edge_never_carries_multiplicity():
    g = tailed_graph()
    for ell in range(1, 13):
        for M in enumerate_multiplicities(g, ell):
            assert M.values[g.edge_index("e4")] == 0


def test_has_nontrivial_ghosts_two_paths(small_graphs):
    for g in small_graphs[::2]:
        for ell in (2, 4, 6, 9, 12):
            for M in list(enumerate_multiplicities(g, ell))[:50]:
                assert has_nontrivial_ghosts(g, M) == (ghost_group(g, M).order > 1)


def test_budget_limited_report_discloses_incompleteness():
    a8 = catalog.aut8()
    report = classify_point(a8.graph, a8.M, budget=1)
    # the partial scan saw no junior element, so the verdict is flagged as incomplete
    assert not report.complete
    assert report.verdict == CANONICAL


def test_annotation_json_round_trip():
    ann = CurveAnnotations(eti=False, component_orders={"t": 3}, order3_tails=frozenset({"t"}))
    assert CurveAnnotations.from_dict(ann.to_dict()) == ann
    with pytest.raises(ValidationError, match="malformed annotation"):
        CurveAnnotations.from_dict({"component_orders": {"t": "x"}})


def test_report_serializes_age_as_fraction():
    inst = catalog.aut5()
    d = classify_point(inst.graph, inst.M).to_dict()
    assert d["verdict"] == NONCANONICAL and d["junior"]["age"] == "4/5"
