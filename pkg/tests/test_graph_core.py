"""Tests for the bitmask graph type, constructors and structure queries."""

from __future__ import annotations

import math
import random

import pytest

from graphlab.graph_core import (
    Graph,
    MAX_CANONICAL_N,
    MAX_VERTICES,
    add_vertex,
    canonical_code,
    clique_number,
    closed_neighborhood,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    degree_extremes,
    diameter,
    disjoint_union,
    distances_from,
    edge_partition,
    empty_graph,
    graph_from_edges,
    induced_subgraph,
    is_balanced_biclique,
    is_connected,
    is_triangle_free,
    is_two_independent,
    mask_to_set,
    maximum_cliques,
    neighbors,
    path_graph,
    recognize_shape,
    vertex_mask,
)


def _relabel(g: Graph, perm: list[int]) -> Graph:
    """Rebuild ``g`` with vertex ``v`` renamed to ``perm[v]``."""
    return graph_from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


# =============================================================================
# Construction and validation
# =============================================================================

def test_graph_rejects_asymmetric_rows() -> None:
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))


def test_graph_rejects_loops() -> None:
    with pytest.raises(ValueError):
        Graph(1, (0b1,))


def test_graph_rejects_oversized_order() -> None:
    with pytest.raises(ValueError):
        empty_graph(MAX_VERTICES + 1)


def test_graph_from_edges_basics() -> None:
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n == 4
    assert g.m == 3
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.has_edge(1, 2)
    assert not g.has_edge(0, 2)
    assert g.degree(1) == 2


def test_graph_from_edges_ignores_duplicates() -> None:
    g = graph_from_edges(2, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_graph_from_edges_rejects_bad_input() -> None:
    with pytest.raises(ValueError):
        graph_from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        graph_from_edges(2, [(0, 2)])


def test_standard_constructors() -> None:
    assert complete_graph(4).m == 6
    assert path_graph(1).m == 0
    assert path_graph(5).m == 4
    assert cycle_graph(3).m == 3
    assert complete_bipartite(2, 3).m == 6
    assert empty_graph(3).m == 0


def test_disjoint_union_shifts_labels() -> None:
    g = disjoint_union([complete_graph(2), path_graph(3)])
    assert g.n == 5
    assert g.edges() == [(0, 1), (2, 3), (3, 4)]
    assert not is_connected(g)


def test_add_vertex_appends_with_neighbor_mask() -> None:
    g = add_vertex(path_graph(2), 0b01)
    assert g.n == 3
    assert g.edges() == [(0, 1), (0, 2)]


# =============================================================================
# Neighborhoods, masks and distances
# =============================================================================

def test_vertex_mask_round_trip() -> None:
    g = path_graph(6)
    mask = vertex_mask(g, [0, 2, 5])
    assert mask == 0b100101
    assert mask_to_set(mask) == frozenset({0, 2, 5})
    with pytest.raises(ValueError):
        vertex_mask(g, [6])


def test_neighborhood_sets() -> None:
    g = path_graph(4)
    assert neighbors(g, 1) == frozenset({0, 2})
    assert closed_neighborhood(g, 1) == frozenset({0, 1, 2})


def test_complement_of_cycle_five_is_cycle_five() -> None:
    g = cycle_graph(5)
    assert canonical_code(complement(g)) == canonical_code(g)


def test_complement_of_complete_graph_is_empty() -> None:
    assert complement(complete_graph(4)).m == 0


def test_distances_and_diameter() -> None:
    g = path_graph(4)
    assert distances_from(g, 0) == [0, 1, 2, 3]
    assert distances_from(disjoint_union([g, g]), 0) == [0, 1, 2, 3, -1, -1, -1, -1]
    assert diameter(g) == 3
    assert diameter(complete_graph(1)) == 0
    assert diameter(disjoint_union([complete_graph(1), complete_graph(1)])) == math.inf
    with pytest.raises(ValueError):
        diameter(empty_graph(0))


def test_connectivity_and_degree_extremes() -> None:
    star = complete_bipartite(1, 3)
    assert is_connected(star)
    assert not is_connected(disjoint_union([star, complete_graph(2)]))
    assert degree_extremes(star) == (3, 1)


# =============================================================================
# Structure predicates
# =============================================================================

def test_triangle_free_predicate() -> None:
    assert is_triangle_free(cycle_graph(4))
    assert not is_triangle_free(graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]))


def test_two_independence_checks_induced_degree() -> None:
    g = path_graph(4)
    assert is_two_independent(g, frozenset({0, 1}))
    assert not is_two_independent(g, frozenset({0, 1, 2}))


def test_induced_subgraph_reports_mapping() -> None:
    g = cycle_graph(5)
    sub, mapping = induced_subgraph(g, {1, 2, 4})
    assert mapping == (1, 2, 4)
    assert sub.edges() == [(0, 1)]


def test_edge_partition_counts() -> None:
    parts = edge_partition(cycle_graph(5), {0, 1})
    assert parts.inside == 1
    assert parts.cross == 2
    assert parts.outside == 2
    assert parts.total == 5


# =============================================================================
# Cliques and shape recognition
# =============================================================================

def test_clique_number_pinned_values() -> None:
    assert clique_number(cycle_graph(5))[0] == 2
    assert clique_number(complete_graph(5))[0] == 5
    paw = graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    omega, witness = clique_number(paw)
    assert omega == 3
    assert witness == frozenset({0, 1, 2})


def test_clique_witness_is_a_clique() -> None:
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = graph_from_edges(n, edges)
        omega, witness = clique_number(g)
        assert len(witness) == omega
        assert all(g.has_edge(u, v) for u in witness for v in witness if u < v)


def test_maximum_cliques_on_diamond() -> None:
    diamond = graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert maximum_cliques(diamond) == [frozenset({0, 1, 2}), frozenset({0, 1, 3})]


def test_recognize_shape_tags() -> None:
    assert ("path", 4) in recognize_shape(path_graph(4))
    assert ("cycle", 4) in recognize_shape(cycle_graph(4))
    assert ("biclique", 2, 2) in recognize_shape(cycle_graph(4))
    assert ("complete", 4) in recognize_shape(complete_graph(4))
    assert ("biclique", 1, 3) in recognize_shape(complete_bipartite(1, 3))


def test_balanced_biclique_predicate() -> None:
    assert is_balanced_biclique(cycle_graph(4))
    assert is_balanced_biclique(complete_graph(2))
    assert is_balanced_biclique(complete_graph(1))
    assert not is_balanced_biclique(path_graph(4))
    assert not is_balanced_biclique(complete_bipartite(1, 3))


# =============================================================================
# Canonical codes
# =============================================================================

def test_canonical_code_is_relabeling_invariant() -> None:
    rng = random.Random(20260819)
    samples = [
        path_graph(6),
        cycle_graph(6),
        complete_bipartite(3, 3),
        graph_from_edges(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if (u + v) % 3]),
    ]
    for g in samples:
        code = canonical_code(g)
        for _ in range(6):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_code(_relabel(g, perm)) == code


def test_canonical_code_separates_nonisomorphic_graphs() -> None:
    codes = {
        canonical_code(g)
        for g in (path_graph(4), cycle_graph(4), complete_bipartite(1, 3), complete_graph(4))
    }
    assert len(codes) == 4


def test_canonical_code_enforces_cap() -> None:
    with pytest.raises(ValueError):
        canonical_code(empty_graph(MAX_CANONICAL_N + 1))
