"""Tests for the family generators, recognizers and the equality checker."""

from __future__ import annotations

import random

import pytest

from graphlab.families import (
    FAMILY_TAGS,
    PI2_TAGS,
    FamilyMembership,
    OmegaParams,
    gen_ng_sharp,
    gen_omega,
    gen_omega_prime,
    gen_pi1,
    gen_pi2,
    pi2_parameter_grid,
    recognize_omega,
    recognize_omega_prime,
    recognize_pi1,
    recognize_pi2,
    verify_theorem6,
)
from graphlab.graph_core import (
    canonical_code,
    clique_number,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    graph_from_edges,
    is_connected,
    is_triangle_free,
    path_graph,
)
from graphlab.solvers import open_packing_number, packing_number


def _relabel(g, perm):
    """Rebuild ``g`` with vertex ``v`` renamed to ``perm[v]``."""
    return graph_from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def _paw():
    """Return the triangle with one pendant vertex."""
    return graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def test_family_tag_registry_is_fixed() -> None:
    assert FAMILY_TAGS[:3] == ("OMEGA", "OMEGA_PRIME", "PI1")
    assert PI2_TAGS == tuple(f"PI2_{letter}" for letter in "ABCDEFGHIJ")


# =============================================================================
# Core-plus-pendants generators
# =============================================================================

def test_omega_params_from_map_sorts_pairs() -> None:
    params = OmegaParams.from_map(1, 1, {1: 1, 0: 0})
    assert params.attachment == ((0, 0), (1, 1))


def test_gen_omega_smallest_member_is_the_four_cycle() -> None:
    g = gen_omega(OmegaParams.from_map(1, 1, {0: 0, 1: 1}))
    assert canonical_code(g) == canonical_code(cycle_graph(4))


def test_gen_omega_edge_count_formula() -> None:
    for t, p in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1)]:
        attachment = {c: 0 if c < t else 1 for c in range(2 * t)}
        g = gen_omega(OmegaParams.from_map(t, p, attachment))
        assert g.n == 2 * t + 2 * p
        assert g.m == t * t + 2 * t + p
        assert is_triangle_free(g)


def test_gen_omega_rejects_bad_parameters() -> None:
    with pytest.raises(ValueError, match="at least 1"):
        gen_omega(OmegaParams.from_map(0, 1, {}))
    with pytest.raises(ValueError, match="at least 1"):
        gen_omega(OmegaParams.from_map(1, 0, {0: 0, 1: 0}))
    with pytest.raises(ValueError, match="cover every core vertex"):
        gen_omega(OmegaParams.from_map(1, 1, {0: 0}))
    with pytest.raises(ValueError, match="outside 0..1"):
        gen_omega(OmegaParams.from_map(1, 1, {0: 0, 1: 2}))


def test_gen_omega_rejects_triangle_closing_attachments() -> None:
    with pytest.raises(ValueError, match="triangle"):
        gen_omega(OmegaParams.from_map(2, 1, {0: 0, 1: 1, 2: 0, 3: 1}))


def test_gen_omega_prime_smallest_member_is_the_path() -> None:
    g = gen_omega_prime(OmegaParams.from_map(1, 2, {0: 0, 1: 1}))
    assert canonical_code(g) == canonical_code(path_graph(4))
    assert g.m == 1 * 1 + 2 * 1


def test_gen_omega_prime_requires_every_pendant_attached() -> None:
    with pytest.raises(ValueError, match="pendant"):
        gen_omega_prime(OmegaParams.from_map(1, 2, {0: 0, 1: 0}))


# =============================================================================
# Core-plus-pendants recognizers
# =============================================================================

def test_recognize_omega_round_trips_generated_members() -> None:
    rng = random.Random(3)
    for t, p in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)]:
        for _ in range(3):
            attachment = {}
            for c in range(2 * t):
                part = set(range(t)) if c < t else set(range(t, 2 * t))
                taken = {attachment[o] for o in attachment if o not in part}
                choices = [x for x in range(p) if x not in taken] or list(range(p))
                attachment[c] = rng.choice(choices)
            try:
                g = gen_omega(OmegaParams.from_map(t, p, attachment))
            except ValueError:
                continue
            verdict = recognize_omega(g)
            assert verdict.member, (t, p, attachment)
            assert set(verdict.roles) == {"B", "core_part_a", "core_part_b"}
            assert len(verdict.roles["core_part_a"]) == t


def test_recognize_omega_accepts_coreless_matchings() -> None:
    assert recognize_omega(complete_graph(2)).member
    assert recognize_omega(disjoint_union([complete_graph(2), complete_graph(2)])).member


def test_recognize_omega_pinned_negative_and_positive_cases() -> None:
    assert recognize_omega(complete_bipartite(3, 3)).member
    assert recognize_omega(cycle_graph(4)).member
    assert not recognize_omega(path_graph(4)).member
    assert not recognize_omega(cycle_graph(6)).member
    assert not recognize_omega(_paw()).member


def test_recognize_omega_prime_pinned_cases() -> None:
    assert recognize_omega_prime(path_graph(4)).member
    assert not recognize_omega_prime(cycle_graph(4)).member
    assert not recognize_omega_prime(complete_bipartite(1, 3)).member
    assert not recognize_omega_prime(path_graph(6)).member
    assert not recognize_omega_prime(cycle_graph(8)).member


def test_recognize_omega_prime_round_trips_generated_members() -> None:
    cases = [
        (1, 2, {0: 0, 1: 1}),
        (2, 2, {0: 0, 1: 0, 2: 1, 3: 1}),
        (2, 4, {0: 0, 1: 1, 2: 2, 3: 3}),
    ]
    for t, p, attachment in cases:
        g = gen_omega_prime(OmegaParams.from_map(t, p, attachment))
        assert recognize_omega_prime(g).member, (t, p)


def test_core_recognizers_enforce_size_cap() -> None:
    with pytest.raises(ValueError, match="capped"):
        recognize_omega(path_graph(25))


# =============================================================================
# Clique-number-2 equality family
# =============================================================================

def test_gen_pi1_members_are_pinned() -> None:
    members = gen_pi1()
    assert len(members) == 4
    expected = [path_graph(4), path_graph(5), path_graph(6), cycle_graph(4)]
    for built, reference in zip(members, expected):
        assert canonical_code(built) == canonical_code(reference)


def test_recognize_pi1_accepts_relabeled_members() -> None:
    rng = random.Random(9)
    for g in gen_pi1():
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert recognize_pi1(_relabel(g, perm)).member


def test_recognize_pi1_rejects_lookalikes() -> None:
    for g in (path_graph(3), cycle_graph(5), complete_bipartite(1, 3), path_graph(7)):
        assert not recognize_pi1(g).member


# =============================================================================
# Clique-number >= 3 equality families
# =============================================================================

def test_gen_pi2_preserves_clique_number_and_connectivity() -> None:
    for omega in (3, 4):
        for tag, kwargs in pi2_parameter_grid(omega):
            g = gen_pi2(tag, omega, **kwargs)
            assert clique_number(g)[0] == omega, (tag, omega, kwargs)
            assert is_connected(g), (tag, omega, kwargs)


def test_gen_pi2_parameter_validation() -> None:
    with pytest.raises(ValueError):
        gen_pi2("PI2_Z", 3)
    with pytest.raises(ValueError):
        gen_pi2("PI2_A", 3, attach=2)
    with pytest.raises(ValueError):
        gen_pi2("PI2_C", 3, attach=1)
    with pytest.raises(ValueError):
        gen_pi2("PI2_D", 3, attach=3)
    with pytest.raises(ValueError):
        gen_pi2("PI2_B", 3, components=((0,),))
    with pytest.raises(ValueError):
        gen_pi2("PI2_B", 3, components=((2, 2),))


def test_gen_pi2_b_lone_pendant_is_the_paw() -> None:
    g = gen_pi2("PI2_B", 3, components=((1,),))
    assert canonical_code(g) == canonical_code(_paw())


def test_recognize_pi2_on_the_diamond() -> None:
    diamond = graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    tags = [ms.tag for ms in recognize_pi2(diamond)]
    assert tags == ["PI2_B", "PI2_C"]
    by_tag = {ms.tag: ms for ms in recognize_pi2(diamond)}
    assert by_tag["PI2_C"].roles["S"] == frozenset({0, 1, 2})
    assert by_tag["PI2_C"].roles["y"] == 3


def test_recognize_pi2_round_trips_the_generator_grid() -> None:
    for omega in (3, 4):
        for tag, kwargs in pi2_parameter_grid(omega):
            g = gen_pi2(tag, omega, **kwargs)
            tags = [ms.tag for ms in recognize_pi2(g)]
            assert tag in tags, (tag, omega, kwargs, tags)


def test_recognize_pi2_strict_pins_the_tail_degree() -> None:
    h = gen_pi2("PI2_H", 3)
    roles = {ms.tag: ms.roles for ms in recognize_pi2(h)}["PI2_H"]
    widened = graph_from_edges(h.n, list(h.edges()) + [(roles["y"], roles["w"])])
    assert [ms.tag for ms in recognize_pi2(widened, strict=True)] == []
    assert "PI2_H" in [ms.tag for ms in recognize_pi2(widened, strict=False)]


def test_recognize_pi2_input_guards() -> None:
    with pytest.raises(ValueError):
        recognize_pi2(complete_graph(2))
    with pytest.raises(ValueError):
        recognize_pi2(disjoint_union([complete_graph(3), complete_graph(3)]))
    with pytest.raises(ValueError):
        recognize_pi2(path_graph(17))
    assert recognize_pi2(path_graph(5)) == []
    assert recognize_pi2(complete_graph(4)) == []


# =============================================================================
# Equality checker
# =============================================================================

def test_verify_theorem6_agreement_cases() -> None:
    assert verify_theorem6(path_graph(4)) == {
        "lhs": True,
        "rhs": True,
        "agree": True,
        "details": {"n": 4, "omega": 2, "rho_open": 2, "target": 2, "tags": ["PI1"]},
    }
    assert verify_theorem6(complete_graph(4))["agree"] is True
    assert verify_theorem6(cycle_graph(5))["agree"] is True


def test_verify_theorem6_star_disagrees_without_membership() -> None:
    outcome = verify_theorem6(complete_bipartite(1, 3))
    assert outcome["lhs"] is True
    assert outcome["rhs"] is False
    assert outcome["agree"] is False
    assert outcome["details"]["tags"] == []


def test_verify_theorem6_paw_disagrees_with_membership() -> None:
    outcome = verify_theorem6(_paw())
    assert outcome["lhs"] is False
    assert outcome["rhs"] is True
    assert outcome["agree"] is False
    assert outcome["details"]["tags"] == ["PI2_B"]


def test_verify_theorem6_input_guards() -> None:
    with pytest.raises(ValueError):
        verify_theorem6(complete_graph(2))
    with pytest.raises(ValueError):
        verify_theorem6(disjoint_union([complete_graph(2), complete_graph(2)]))


# =============================================================================
# Sharpness construction for the complement-pair packing bounds
# =============================================================================

def test_gen_ng_sharp_builds_verified_instances() -> None:
    for t, len_x, len_y in [(3, 3, 0), (3, 3, 3), (3, 6, 1), (4, 3, 0)]:
        g = gen_ng_sharp(t, len_x, len_y)
        assert is_connected(g)
        assert packing_number(g).value >= 2


def test_gen_ng_sharp_rejects_bad_parameters() -> None:
    with pytest.raises(ValueError):
        gen_ng_sharp(2, 3, 0)
    with pytest.raises(ValueError):
        gen_ng_sharp(3, 4, 0)
    with pytest.raises(ValueError):
        gen_ng_sharp(3, 3, 4)


def test_family_membership_shape() -> None:
    verdict = FamilyMembership("PI1", False)
    assert verdict.roles is None
    assert not verdict.member
