"""Immutable simple-graph primitives shared by every other module.

A graph stores one adjacency bit row per vertex (a Python int), so every
neighborhood operation reduces to a couple of integer bit operations.
Vertices are indexed 0..n-1 and n is capped at 64; anything larger is out
of scope for an exact-computation laboratory.

Beyond the representation this module provides the structural helpers the
solvers and checkers lean on: diameter, clique machinery, special-shape
recognition (complete / path / cycle / complete bipartite) and a canonical
code for small-graph isomorphism dedup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

MAX_VERTICES = 64

# Canonical codes are only needed for desk-scale enumeration work.
MAX_CANONICAL_N = 8


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with adjacency bit rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.n > MAX_VERTICES:
            raise ValueError(f"graphs beyond {MAX_VERTICES} vertices are not supported")
        if len(self.rows) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} mentions vertices outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"vertex {v} may not be its own neighbor")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if (self.rows[u] >> v & 1) != (self.rows[v] >> u & 1):
                    raise ValueError(f"adjacency is not symmetric on pair ({u}, {v})")

    @property
    def m(self):
        """Return the number of edges."""
        return sum(row.bit_count() for row in self.rows) // 2

    def degree(self, v):
        """Return the degree of ``v``."""
        return self.rows[v].bit_count()

    def has_edge(self, u, v):
        """Return ``True`` when ``uv`` is an edge."""
        _check_vertex(self, u)
        _check_vertex(self, v)
        return bool(self.rows[u] >> v & 1)

    def edges(self):
        """Return the edge list as sorted (u, v) pairs with u < v."""
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1) << (u + 1)
            while row:
                v = (row & -row).bit_length() - 1
                out.append((u, v))
                row &= row - 1
        return out


def _check_vertex(g, v):
    if not isinstance(v, int) or v < 0 or v >= g.n:
        raise ValueError(f"vertex {v!r} is out of range 0..{g.n - 1}")


def vertex_mask(g, members):
    """Return the bitmask of ``members``, validating every index."""
    mask = 0
    for v in members:
        _check_vertex(g, v)
        mask |= 1 << v
    return mask


def mask_to_set(mask):
    """Return the frozen vertex set encoded by ``mask``."""
    out = set()
    while mask:
        out.add((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return frozenset(out)


# =============================================================================
# Constructors
# =============================================================================

def graph_from_edges(n, edges):
    """Build a graph on ``n`` vertices from an iterable of (u, v) pairs."""
    if n < 0 or n > MAX_VERTICES:
        raise ValueError(f"vertex count must be in 0..{MAX_VERTICES}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u} is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) leaves vertex range 0..{n - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n):
    """Return the edgeless graph on ``n`` vertices."""
    return graph_from_edges(n, [])


def complete_graph(n):
    """Return K_n."""
    return graph_from_edges(n, combinations(range(n), 2))


def path_graph(n):
    """Return the path 0-1-...-(n-1)."""
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    """Return the cycle on ``n`` >= 3 vertices."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a, b):
    """Return K_{a,b} with part A on 0..a-1 and part B on a..a+b-1."""
    if a < 0 or b < 0:
        raise ValueError("part sizes must be non-negative")
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(graphs):
    """Return the disjoint union of ``graphs`` with vertices relabeled in order."""
    total = sum(g.n for g in graphs)
    rows = []
    offset = 0
    for g in graphs:
        for v in range(g.n):
            rows.append(g.rows[v] << offset)
        offset += g.n
    return Graph(total, tuple(rows))


def add_vertex(g, neighbor_mask):
    """Return ``g`` extended with one new vertex adjacent to ``neighbor_mask``."""
    if neighbor_mask >> g.n:
        raise ValueError("neighbor mask mentions vertices outside the old graph")
    rows = [g.rows[v] | ((neighbor_mask >> v & 1) << g.n) for v in range(g.n)]
    rows.append(neighbor_mask)
    return Graph(g.n + 1, tuple(rows))


# =============================================================================
# Neighborhood and global structure operations
# =============================================================================

def neighbors(g, v):
    """Return the open neighborhood N(v) as a frozen set."""
    _check_vertex(g, v)
    return mask_to_set(g.rows[v])


def closed_neighborhood(g, v):
    """Return N[v] = N(v) united with {v}."""
    _check_vertex(g, v)
    return mask_to_set(g.rows[v] | (1 << v))


def complement(g):
    """Return the complement graph on the same vertex set."""
    full = (1 << g.n) - 1
    rows = tuple((full & ~g.rows[v]) & ~(1 << v) for v in range(g.n))
    return Graph(g.n, rows)


def _bfs_masks(g, start):
    """Return the list of distances from ``start`` (-1 for unreachable)."""
    dist = [-1] * g.n
    dist[start] = 0
    frontier = 1 << start
    seen = frontier
    d = 0
    while frontier:
        reach = 0
        row = frontier
        while row:
            v = (row & -row).bit_length() - 1
            reach |= g.rows[v]
            row &= row - 1
        frontier = reach & ~seen
        seen |= frontier
        d += 1
        row = frontier
        while row:
            v = (row & -row).bit_length() - 1
            dist[v] = d
            row &= row - 1
    return dist


def distances_from(g, start):
    """Return BFS distances from ``start``; unreachable vertices get -1."""
    _check_vertex(g, start)
    return _bfs_masks(g, start)


def diameter(g):
    """Return the diameter, ``math.inf`` when disconnected, 0 for a single vertex."""
    if g.n == 0:
        raise ValueError("the empty graph has no diameter")
    best = 0
    for v in range(g.n):
        dist = _bfs_masks(g, v)
        if min(dist) < 0:
            return math.inf
        best = max(best, max(dist))
    return best


def is_connected(g):
    """Return ``True`` when the graph has exactly one component."""
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    return min(_bfs_masks(g, 0)) >= 0


def degree_extremes(g):
    """Return (maximum degree, minimum degree)."""
    if g.n == 0:
        raise ValueError("degrees are undefined for the empty graph")
    degrees = [g.degree(v) for v in range(g.n)]
    return max(degrees), min(degrees)


def is_triangle_free(g):
    """Return ``True`` when no three vertices are mutually adjacent."""
    for u in range(g.n):
        row = g.rows[u] >> (u + 1) << (u + 1)
        while row:
            v = (row & -row).bit_length() - 1
            if g.rows[u] & g.rows[v]:
                return False
            row &= row - 1
    return True


def is_two_independent(g, members):
    """Return ``True`` when the induced subgraph on ``members`` has max degree <= 1."""
    mask = vertex_mask(g, members)
    sub = mask
    while sub:
        v = (sub & -sub).bit_length() - 1
        if (g.rows[v] & mask).bit_count() > 1:
            return False
        sub &= sub - 1
    return True


def induced_subgraph(g, members):
    """Return (subgraph, mapping) where mapping[i] is the old index of new vertex i."""
    mask = vertex_mask(g, members)
    mapping = tuple(sorted(mask_to_set(mask)))
    index = {old: new for new, old in enumerate(mapping)}
    rows = [0] * len(mapping)
    for new, old in enumerate(mapping):
        row = g.rows[old] & mask
        while row:
            u = (row & -row).bit_length() - 1
            rows[new] |= 1 << index[u]
            row &= row - 1
    return Graph(len(mapping), tuple(rows)), mapping


def edge_partition(g, members):
    """Split the edge count into (inside B, crossing, inside the complement of B)."""
    mask = vertex_mask(g, members)
    inside = cross = outside = 0
    for u, v in g.edges():
        hits = (mask >> u & 1) + (mask >> v & 1)
        if hits == 2:
            inside += 1
        elif hits == 1:
            cross += 1
        else:
            outside += 1
    return EdgePartition(inside, cross, outside)


@dataclass(frozen=True)
class EdgePartition:
    """Edge counts inside a set B, across the cut, and inside V minus B."""

    inside: int
    cross: int
    outside: int

    @property
    def total(self):
        return self.inside + self.cross + self.outside


# =============================================================================
# Cliques
# =============================================================================

def clique_number(g):
    """Return (omega, witness) for a maximum clique, by branch and bound."""
    if g.n == 0:
        raise ValueError("the empty graph has no clique number")
    order = sorted(range(g.n), key=g.degree, reverse=True)
    best_size = 1
    best_mask = 1 << order[0]

    def grow(current_mask, size, candidates):
        nonlocal best_size, best_mask
        if size + candidates.bit_count() <= best_size:
            return
        if not candidates:
            if size > best_size:
                best_size = size
                best_mask = current_mask
            return
        row = candidates
        while row:
            v = (row & -row).bit_length() - 1
            row &= row - 1
            grow(current_mask | (1 << v), size + 1, row & g.rows[v])
            if size + row.bit_count() + 1 <= best_size:
                return

    grow(0, 0, (1 << g.n) - 1)
    return best_size, mask_to_set(best_mask)


def maximum_cliques(g):
    """Return every clique of maximum size, via Bron-Kerbosch with pivoting."""
    if g.n == 0:
        raise ValueError("the empty graph has no cliques")
    maximal = []

    def extend(r, p, x):
        if not p and not x:
            maximal.append(r)
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best_cover = -1
        pool = pivot_pool
        while pool:
            u = (pool & -pool).bit_length() - 1
            cover = (p & g.rows[u]).bit_count()
            if cover > best_cover:
                best_cover = cover
                pivot = u
            pool &= pool - 1
        branch = p & ~g.rows[pivot]
        while branch:
            v = (branch & -branch).bit_length() - 1
            bit = 1 << v
            extend(r | bit, p & g.rows[v], x & g.rows[v])
            p &= ~bit
            x |= bit
            branch &= branch - 1

    extend(0, (1 << g.n) - 1, 0)
    top = max(mask.bit_count() for mask in maximal)
    cliques = sorted(
        (tuple(sorted(mask_to_set(mask))) for mask in maximal if mask.bit_count() == top)
    )
    return [frozenset(c) for c in cliques]


# =============================================================================
# Special-shape recognition
# =============================================================================

def recognize_shape(g):
    """Classify the graph among K_n, P_n, C_n and K_{a,b}; report every tag that fits.

    Returns a sorted list of tuples: ("complete", n), ("path", n),
    ("cycle", n) and ("biclique", a, b) with a <= b and a >= 1. Structural
    tests only; no general isomorphism.
    """
    tags = []
    n = g.n
    if n >= 1 and g.m == n * (n - 1) // 2:
        tags.append(("complete", n))
    if n >= 1 and _is_path(g):
        tags.append(("path", n))
    if n >= 3 and _is_cycle(g):
        tags.append(("cycle", n))
    parts = _biclique_parts(g)
    if parts is not None:
        tags.append(("biclique", parts[0], parts[1]))
    return sorted(tags)


def _is_path(g):
    if g.n == 1:
        return True
    if g.m != g.n - 1 or not is_connected(g):
        return False
    degrees = sorted(g.degree(v) for v in range(g.n))
    if g.n == 2:
        return degrees == [1, 1]
    return degrees[:2] == [1, 1] and degrees[2:] == [2] * (g.n - 2)


def _is_cycle(g):
    if g.m != g.n or not is_connected(g):
        return False
    return all(g.degree(v) == 2 for v in range(g.n))


def _biclique_parts(g):
    """Return (a, b) when the graph is K_{a,b} with a, b >= 1, else ``None``."""
    if g.n < 2 or g.m == 0 or not is_connected(g):
        return None
    color = [-1] * g.n
    color[0] = 0
    queue = [0]
    while queue:
        v = queue.pop()
        row = g.rows[v]
        while row:
            u = (row & -row).bit_length() - 1
            if color[u] < 0:
                color[u] = 1 - color[v]
                queue.append(u)
            elif color[u] == color[v]:
                return None
            row &= row - 1
    a = color.count(0)
    b = g.n - a
    if g.m != a * b:
        return None
    return (min(a, b), max(a, b))


def is_balanced_biclique(g):
    """Return ``True`` when the graph is K_{floor(n/2), ceil(n/2)}.

    Degenerate orders n <= 1 count: K_{0, n} is read as the edgeless graph.
    """
    if g.n <= 1:
        return g.m == 0
    parts = _biclique_parts(g)
    return parts == (g.n // 2, (g.n + 1) // 2)


# =============================================================================
# Canonical form (desk-scale isomorphism dedup)
# =============================================================================

def _refine_colors(g):
    """Return stable vertex colors via iterated neighbor-color refinement.

    Seeded with (degree, local triangle count) so that many regular graphs
    split before the permutation search.
    """
    seeds = []
    for v in range(g.n):
        triangles = 0
        row = g.rows[v]
        while row:
            u = (row & -row).bit_length() - 1
            triangles += (g.rows[v] & g.rows[u]).bit_count()
            row &= row - 1
        seeds.append((g.degree(v), triangles))
    ranks = sorted(set(seeds))
    colors = [ranks.index(c) for c in seeds]
    while True:
        keys = []
        for v in range(g.n):
            nbr = []
            row = g.rows[v]
            while row:
                u = (row & -row).bit_length() - 1
                nbr.append(colors[u])
                row &= row - 1
            keys.append((colors[v], tuple(sorted(nbr))))
        order = sorted(set(keys))
        new = [order.index(k) for k in keys]
        if new == colors:
            return colors
        colors = new


def canonical_code(g, cap=MAX_CANONICAL_N):
    """Return a byte string equal across isomorphic graphs and only those.

    The code is the minimum upper-triangle adjacency bit string over all
    vertex orderings compatible with the refined color classes, with
    prefix pruning; identical codes hold exactly for isomorphic graphs.
    """
    if g.n > cap:
        raise ValueError(f"canonical codes are capped at {cap} vertices")
    n = g.n
    if n == 0:
        return bytes([0])
    colors = _refine_colors(g)
    # Position i may only host vertices of the class assigned to it.
    by_color = {}
    for v, c in enumerate(colors):
        by_color.setdefault(c, []).append(v)
    position_class = []
    for c in sorted(by_color):
        position_class.extend([c] * len(by_color[c]))

    best = None
    perm = [0] * n

    def place(pos, used, cols):
        nonlocal best
        if pos == n:
            if best is None or cols < best:
                best = list(cols)
            return
        for v in by_color[position_class[pos]]:
            if used >> v & 1:
                continue
            col = 0
            for j in range(pos):
                col = col << 1 | (g.rows[v] >> perm[j] & 1)
            if best is not None:
                prefix = cols + [col]
                if prefix > best[: pos + 1]:
                    continue
            perm[pos] = v
            place(pos + 1, used | (1 << v), cols + [col])

    place(0, 0, [])
    bits = []
    for pos, col in enumerate(best):
        bits.extend((col >> (pos - 1 - j)) & 1 for j in range(pos))
    packed = bytearray([n])
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = byte << 1 | b
        byte <<= max(0, 8 - len(bits[i : i + 8]))
        packed.append(byte)
    return bytes(packed)
