"""Tests for the inequality checkers and their tightness side conditions."""

from __future__ import annotations

import pytest

from graphlab.bounds import (
    BOUND_IDS,
    BoundCheck,
    NotApplicableError,
    check_gamma_diameter,
    check_l2_ng,
    check_lemma5,
    check_mantel,
    check_obs_rho1,
    check_prop3,
    check_thm2_open,
    check_thm2_pack,
    check_thm4,
)
from graphlab.graph_core import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    graph_from_edges,
    path_graph,
)
from graphlab.solvers import is_k_limited_packing


def test_bound_id_registry_is_fixed() -> None:
    assert BOUND_IDS == (
        "MANTEL",
        "THM2_OPEN",
        "THM2_PACK",
        "EQ11_GAMMA",
        "PROP3_LK",
        "OBS_RHO1",
        "THM4_NG",
        "LEM5_OPEN",
        "L2_NG",
    )


def test_passed_requires_holds_and_all_subchecks() -> None:
    good = BoundCheck("X", 1, 2, holds=True, tight=False)
    assert good.passed
    bad = BoundCheck("X", 1, 2, holds=True, tight=False, subchecks={"side": False})
    assert not bad.passed
    assert not BoundCheck("X", 3, 2, holds=False, tight=False).passed


def test_not_applicable_is_a_value_error() -> None:
    assert issubclass(NotApplicableError, ValueError)


# =============================================================================
# Edge-count bound for triangle-free graphs
# =============================================================================

def test_mantel_tight_on_balanced_biclique() -> None:
    bc = check_mantel(complete_bipartite(2, 3))
    assert bc.holds and bc.tight
    assert (bc.lhs, bc.rhs) == (6, 6)
    assert bc.subchecks == {"tight_iff_balanced_biclique": True}


def test_mantel_loose_on_path() -> None:
    bc = check_mantel(path_graph(4))
    assert bc.holds and not bc.tight
    assert (bc.lhs, bc.rhs) == (3, 4)


def test_mantel_accepts_disconnected_and_tiny_graphs() -> None:
    bc = check_mantel(disjoint_union([complete_graph(2), complete_graph(2)]))
    assert bc.holds and not bc.tight
    assert check_mantel(complete_graph(1)).tight
    assert check_mantel(empty_graph(2)).passed


def test_mantel_not_applicable_with_triangle() -> None:
    with pytest.raises(NotApplicableError, match="triangle"):
        check_mantel(complete_graph(3))


# =============================================================================
# Square-root bounds for triangle-free graphs
# =============================================================================

def test_thm2_open_tight_cases_are_family_members() -> None:
    for g in (cycle_graph(4), complete_bipartite(3, 3), complete_graph(2)):
        bc = check_thm2_open(g)
        assert bc.holds and bc.tight
        assert bc.subchecks == {"tight_iff_family_member": True}


def test_thm2_open_loose_on_path_five() -> None:
    bc = check_thm2_open(path_graph(5))
    assert bc.holds and not bc.tight
    assert bc.lhs == 3
    assert bc.rhs == pytest.approx(5 + 1 - (4 * 4 - 2 * 5 + 1) ** 0.5)
    assert bc.subchecks == {"tight_iff_family_member": True}


def test_thm2_pack_tight_on_path_four() -> None:
    bc = check_thm2_pack(path_graph(4))
    assert bc.holds and bc.tight
    assert bc.lhs == 2
    assert bc.rhs == pytest.approx(2.0)
    assert bc.subchecks == {"tight_iff_family_member": True}


def test_thm2_pack_loose_cases() -> None:
    bc = check_thm2_pack(cycle_graph(4))
    assert bc.holds and not bc.tight
    assert bc.lhs == 1
    assert check_thm2_pack(cycle_graph(6)).holds


def test_thm2_not_applicable_reasons() -> None:
    with pytest.raises(NotApplicableError, match="triangle"):
        check_thm2_open(complete_graph(3))
    with pytest.raises(NotApplicableError, match="isolated"):
        check_thm2_open(empty_graph(2))
    with pytest.raises(NotApplicableError, match="isolated"):
        check_thm2_pack(disjoint_union([complete_graph(1), complete_graph(2)]))


# =============================================================================
# Domination versus diameter
# =============================================================================

def test_gamma_diameter_pinned_cases() -> None:
    bc = check_gamma_diameter(path_graph(7))
    assert bc.tight and (bc.lhs, bc.rhs) == (3, 3)
    assert check_gamma_diameter(complete_graph(5)).tight
    loose = check_gamma_diameter(cycle_graph(4))
    assert loose.holds and not loose.tight
    assert (loose.lhs, loose.rhs) == (2, 1)
    assert check_gamma_diameter(complete_graph(1)).tight


def test_gamma_diameter_requires_connected() -> None:
    with pytest.raises(NotApplicableError, match="disconnected"):
        check_gamma_diameter(disjoint_union([complete_graph(2), complete_graph(2)]))


# =============================================================================
# Diameter lower bound for limited packings
# =============================================================================

def test_prop3_pinned_cases() -> None:
    bc = check_prop3(path_graph(7), 1)
    assert bc.tight and (bc.lhs, bc.rhs) == (3, 3)
    assert bc.witness == frozenset({0, 3, 6})
    assert bc.subchecks == {"witness_validates": True, "witness_has_bound_size": True}
    bc = check_prop3(path_graph(4), 2)
    assert bc.tight and (bc.lhs, bc.rhs) == (3, 3)
    assert bc.witness == frozenset({0, 1, 3})
    bc = check_prop3(complete_graph(6), 1)
    assert bc.tight and (bc.lhs, bc.rhs) == (1, 1)


def test_prop3_witness_comes_from_a_diametral_path() -> None:
    bc = check_prop3(cycle_graph(4), 1)
    assert bc.context["path"] == (0, 1, 2)
    assert bc.witness == frozenset({0})
    assert is_k_limited_packing(cycle_graph(4), bc.witness, 1)


def test_prop3_guards() -> None:
    with pytest.raises(ValueError):
        check_prop3(path_graph(4), 3)
    with pytest.raises(NotApplicableError, match="disconnected"):
        check_prop3(disjoint_union([complete_graph(1), complete_graph(1)]), 1)


# =============================================================================
# Packing number one exactly when diameter at most two
# =============================================================================

def test_obs_rho1_biconditional_samples() -> None:
    for g in (path_graph(4), complete_graph(4), cycle_graph(5), complete_bipartite(1, 6)):
        bc = check_obs_rho1(g)
        assert bc.holds and bc.passed
    with pytest.raises(NotApplicableError, match="disconnected"):
        check_obs_rho1(disjoint_union([complete_graph(2), complete_graph(2)]))


# =============================================================================
# Nordhaus-Gaddum for the packing number
# =============================================================================

def test_thm4_both_diameters_three_clause() -> None:
    bc = check_thm4(path_graph(4))
    assert bc.context["clause"] == "both-diameters-3"
    assert bc.tight and (bc.lhs, bc.rhs) == (4, 4)
    assert bc.context["product"] == 4
    assert bc.subchecks == {"product_equals_four": True}


def test_thm4_differing_diameters_clause() -> None:
    bc = check_thm4(path_graph(5))
    assert bc.context["clause"] == "diameters-differ"
    assert bc.holds and not bc.tight
    assert (bc.lhs, bc.rhs) == (3, 4)
    assert bc.subchecks == {"product_bound_holds": True, "diameters_differ": True}
    assert "one_sided_bound" in bc.context and "one_sided_rho" in bc.context


def test_thm4_not_applicable_cases() -> None:
    with pytest.raises(NotApplicableError):
        check_thm4(cycle_graph(5))
    with pytest.raises(NotApplicableError, match="complement"):
        check_thm4(complete_bipartite(1, 3))
    with pytest.raises(NotApplicableError, match="disconnected"):
        check_thm4(disjoint_union([complete_graph(2), complete_graph(2)]))


# =============================================================================
# Open packing versus maximum degree
# =============================================================================

def test_lemma5_tight_exactly_with_dominating_vertex_and_pendant() -> None:
    bc = check_lemma5(complete_bipartite(1, 3))
    assert bc.tight and (bc.lhs, bc.rhs) == (2, 2)
    assert bc.subchecks == {"tight_iff_dominating_vertex_and_pendant": True}
    loose = check_lemma5(complete_graph(4))
    assert loose.holds and not loose.tight
    assert (loose.lhs, loose.rhs) == (1, 2)
    assert check_lemma5(cycle_graph(6)).rhs == 5
    with pytest.raises(NotApplicableError, match="disconnected"):
        check_lemma5(disjoint_union([complete_graph(1), complete_graph(1)]))


# =============================================================================
# Nordhaus-Gaddum for the 2-limited packing number
# =============================================================================

def test_l2_ng_pinned_cases() -> None:
    bc = check_l2_ng(path_graph(4))
    assert bc.tight and (bc.lhs, bc.rhs) == (6, 6)
    assert check_l2_ng(complete_graph(1)).lhs == 2
    loose = check_l2_ng(cycle_graph(5))
    assert loose.holds and not loose.tight
    assert (loose.lhs, loose.rhs) == (6, 7)


def test_l2_ng_accepts_disconnected_input() -> None:
    bc = check_l2_ng(disjoint_union([complete_graph(2), complete_graph(2)]))
    assert bc.holds and bc.tight
    assert (bc.lhs, bc.rhs) == (6, 6)
    assert bc.context["connected"] is False
    with pytest.raises(NotApplicableError):
        check_l2_ng(empty_graph(0))
