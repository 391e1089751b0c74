"""Exact solvers and validators for packing-type vertex subset problems.

Four optimization problems live here: packing number (pairwise disjoint
closed neighborhoods), open packing number (no vertex sees two set members),
k-limited packing number (every closed neighborhood meets the set at most k
times) and domination number. Each solver runs a branch-and-bound search
for the optimum value, then a second lexicographic pass extracts the
smallest witness among optimal sets, so results are reproducible down to
the witness.

``brute_force_optimum`` re-solves any of the four by scanning all vertex
subsets. It is deliberately independent of the branch-and-bound code paths
and exists so tests can cross-check the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .graph_core import Graph, mask_to_set, vertex_mask

BRUTE_FORCE_MAX_N = 20
DEFAULT_MAX_N = 24

SOLVER_KINDS = ("packing", "open_packing", "limited_packing", "domination")


@dataclass(frozen=True)
class InvariantResult:
    """Value of a graph invariant plus the witness set that attains it."""

    value: int
    witness: frozenset[int]
    method: str


def _solver_size_guard(g):
    cap = int(os.environ.get("GRAPHLAB_MAX_N", str(DEFAULT_MAX_N)))
    if g.n > cap:
        raise ValueError(
            f"graph has {g.n} vertices, over the exact-solver cap {cap}"
            " (raise GRAPHLAB_MAX_N to override)"
        )


# =============================================================================
# Validators
# =============================================================================

def is_packing(g, members):
    """Return ``True`` when the closed neighborhoods of ``members`` are disjoint."""
    mask = vertex_mask(g, members)
    seen = 0
    sub = mask
    while sub:
        v = (sub & -sub).bit_length() - 1
        ball = g.rows[v] | (1 << v)
        if ball & seen:
            return False
        seen |= ball
        sub &= sub - 1
    return True


def is_open_packing(g, members):
    """Return ``True`` when no vertex has two or more neighbors in ``members``."""
    mask = vertex_mask(g, members)
    return all((g.rows[v] & mask).bit_count() <= 1 for v in range(g.n))


def is_k_limited_packing(g, members, k):
    """Return ``True`` when every closed neighborhood meets ``members`` at most ``k`` times."""
    if k < 1:
        raise ValueError("the limit k must be a positive integer")
    mask = vertex_mask(g, members)
    return all(((g.rows[v] | (1 << v)) & mask).bit_count() <= k for v in range(g.n))


def is_dominating(g, members):
    """Return ``True`` when every vertex outside ``members`` has a neighbor inside."""
    mask = vertex_mask(g, members)
    for v in range(g.n):
        if not (mask >> v & 1) and not (g.rows[v] & mask):
            return False
    return True


# =============================================================================
# Independent-set engine (packing and open packing reduce to it)
# =============================================================================

def _conflict_value(conflicts, n):
    """Return the maximum size of a set with no internal conflict edge."""
    if n == 0:
        return 0
    # Greedy seed: repeatedly take a least-conflicted available vertex.
    best = 0
    avail = (1 << n) - 1
    while avail:
        pick = None
        pick_deg = n + 1
        scan = avail
        while scan:
            v = (scan & -scan).bit_length() - 1
            deg = (conflicts[v] & avail).bit_count()
            if deg < pick_deg:
                pick, pick_deg = v, deg
            scan &= scan - 1
        best += 1
        avail &= ~(conflicts[pick] | (1 << pick))

    best_size = best

    def search(avail, size):
        nonlocal best_size
        if size + avail.bit_count() <= best_size:
            return
        if not avail:
            best_size = max(best_size, size)
            return
        # Branch on a most-conflicted available vertex.
        pick = None
        pick_deg = -1
        scan = avail
        while scan:
            v = (scan & -scan).bit_length() - 1
            deg = (conflicts[v] & avail).bit_count()
            if deg > pick_deg:
                pick, pick_deg = v, deg
            scan &= scan - 1
        bit = 1 << pick
        search(avail & ~(conflicts[pick] | bit), size + 1)
        search(avail & ~bit, size)

    search((1 << n) - 1, 0)
    return best_size


def _conflict_lex_witness(conflicts, n, target):
    """Return the lexicographically least conflict-free set of size ``target``."""
    found = None

    def descend(avail, chosen, size):
        nonlocal found
        if found is not None:
            return
        if size == target:
            found = chosen
            return
        if size + avail.bit_count() < target:
            return
        v = (avail & -avail).bit_length() - 1
        bit = 1 << v
        descend(avail & ~(conflicts[v] | bit), chosen | bit, size + 1)
        if found is None:
            descend(avail & ~bit, chosen, size)

    descend((1 << n) - 1, 0, 0)
    return mask_to_set(found)


def _packing_conflicts(g):
    """Conflict rows for the packing problem: vertices within distance two."""
    conflicts = []
    for v in range(g.n):
        ball_v = g.rows[v] | (1 << v)
        row = 0
        for u in range(g.n):
            if u != v and ball_v & (g.rows[u] | (1 << u)):
                row |= 1 << u
        conflicts.append(row)
    return conflicts


def _open_packing_conflicts(g):
    """Conflict rows for open packing: pairs with a common neighbor."""
    conflicts = []
    for v in range(g.n):
        row = 0
        for u in range(g.n):
            if u != v and g.rows[v] & g.rows[u]:
                row |= 1 << u
        conflicts.append(row)
    return conflicts


def packing_number(g):
    """Return the packing number with a lexicographically least witness."""
    _solver_size_guard(g)
    conflicts = _packing_conflicts(g)
    value = _conflict_value(conflicts, g.n)
    witness = _conflict_lex_witness(conflicts, g.n, value)
    return InvariantResult(value, witness, "branch-and-bound")


def open_packing_number(g):
    """Return the open packing number with a lexicographically least witness."""
    _solver_size_guard(g)
    conflicts = _open_packing_conflicts(g)
    value = _conflict_value(conflicts, g.n)
    witness = _conflict_lex_witness(conflicts, g.n, value)
    return InvariantResult(value, witness, "branch-and-bound")


# =============================================================================
# k-limited packing
# =============================================================================

def _limited_value(g, k):
    closed = [g.rows[v] | (1 << v) for v in range(g.n)]
    counts = [0] * g.n
    # Greedy seed in ascending vertex order.
    seed = 0
    for v in range(g.n):
        ball = closed[v]
        ok = True
        scan = ball
        while scan:
            u = (scan & -scan).bit_length() - 1
            if counts[u] >= k:
                ok = False
                break
            scan &= scan - 1
        if ok:
            seed += 1
            scan = ball
            while scan:
                u = (scan & -scan).bit_length() - 1
                counts[u] += 1
                scan &= scan - 1
    best = seed

    order = sorted(range(g.n), key=g.degree, reverse=True)
    counts = [0] * g.n

    def search(idx, size):
        nonlocal best
        if size + (g.n - idx) <= best:
            return
        if idx == g.n:
            best = max(best, size)
            return
        v = order[idx]
        ball = closed[v]
        scan = ball
        ok = True
        while scan:
            u = (scan & -scan).bit_length() - 1
            if counts[u] >= k:
                ok = False
                break
            scan &= scan - 1
        if ok:
            scan = ball
            while scan:
                u = (scan & -scan).bit_length() - 1
                counts[u] += 1
                scan &= scan - 1
            search(idx + 1, size + 1)
            scan = ball
            while scan:
                u = (scan & -scan).bit_length() - 1
                counts[u] -= 1
                scan &= scan - 1
        search(idx + 1, size)

    search(0, 0)
    return best


def _limited_lex_witness(g, k, target):
    closed = [g.rows[v] | (1 << v) for v in range(g.n)]
    counts = [0] * g.n
    found = None

    def descend(v, chosen, size):
        nonlocal found
        if found is not None:
            return
        if size == target:
            found = chosen
            return
        if v == g.n or size + (g.n - v) < target:
            return
        ball = closed[v]
        scan = ball
        ok = True
        while scan:
            u = (scan & -scan).bit_length() - 1
            if counts[u] >= k:
                ok = False
                break
            scan &= scan - 1
        if ok:
            scan = ball
            while scan:
                u = (scan & -scan).bit_length() - 1
                counts[u] += 1
                scan &= scan - 1
            descend(v + 1, chosen | (1 << v), size + 1)
            scan = ball
            while scan:
                u = (scan & -scan).bit_length() - 1
                counts[u] -= 1
                scan &= scan - 1
        if found is None:
            descend(v + 1, chosen, size)

    descend(0, 0, 0)
    return mask_to_set(found)


def limited_packing_number(g, k):
    """Return the k-limited packing number with a lexicographically least witness."""
    if k < 1:
        raise ValueError("the limit k must be a positive integer")
    _solver_size_guard(g)
    value = _limited_value(g, k)
    witness = _limited_lex_witness(g, k, value)
    return InvariantResult(value, witness, "branch-and-bound")


# =============================================================================
# Domination
# =============================================================================

def _domination_value(g):
    closed = [g.rows[v] | (1 << v) for v in range(g.n)]
    full = (1 << g.n) - 1
    max_ball = max((ball.bit_count() for ball in closed), default=1)

    # Greedy seed: cover the most new vertices each step.
    dominated = 0
    best = 0
    while dominated != full:
        gain, pick = -1, 0
        for v in range(g.n):
            new = (closed[v] & ~dominated).bit_count()
            if new > gain:
                gain, pick = new, v
        dominated |= closed[pick]
        best += 1

    best_size = best

    def search(dominated, size):
        nonlocal best_size
        if dominated == full:
            best_size = min(best_size, size)
            return
        missing = (full & ~dominated).bit_count()
        if size + -(-missing // max_ball) >= best_size:
            return
        # Branch on an undominated vertex with fewest potential dominators.
        pick = None
        pick_count = g.n + 1
        scan = full & ~dominated
        while scan:
            u = (scan & -scan).bit_length() - 1
            count = closed[u].bit_count()
            if count < pick_count:
                pick, pick_count = u, count
            scan &= scan - 1
        scan = closed[pick]
        while scan:
            v = (scan & -scan).bit_length() - 1
            search(dominated | closed[v], size + 1)
            scan &= scan - 1

    search(0, 0)
    return best_size


def _domination_lex_witness(g, target):
    closed = [g.rows[v] | (1 << v) for v in range(g.n)]
    full = (1 << g.n) - 1
    # last_cover[u]: largest vertex whose closed neighborhood covers u.
    last_cover = [max(v for v in range(g.n) if closed[v] >> u & 1) for u in range(g.n)]
    found = None

    def descend(v, chosen, dominated, size):
        nonlocal found
        if found is not None:
            return
        if size == target:
            if dominated == full:
                found = chosen
            return
        if v == g.n or size + (g.n - v) < target:
            return
        scan = full & ~dominated
        while scan:
            u = (scan & -scan).bit_length() - 1
            if last_cover[u] < v:
                return
            scan &= scan - 1
        descend(v + 1, chosen | (1 << v), dominated | closed[v], size + 1)
        if found is None:
            descend(v + 1, chosen, dominated, size)

    descend(0, 0, 0, 0)
    return mask_to_set(found)


def domination_number(g):
    """Return the domination number with a lexicographically least witness."""
    if g.n == 0:
        raise ValueError("domination is undefined for the empty graph")
    _solver_size_guard(g)
    value = _domination_value(g)
    witness = _domination_lex_witness(g, value)
    return InvariantResult(value, witness, "branch-and-bound")


# =============================================================================
# Brute-force oracle
# =============================================================================

def brute_force_optimum(g, kind, k=None):
    """Re-solve one of the four problems by scanning every vertex subset.

    ``kind`` is one of ``packing``, ``open_packing``, ``limited_packing``
    (which requires ``k``) and ``domination``. Capped at 20 vertices. The
    witness is again the lexicographically least optimal set, so results
    are directly comparable with the branch-and-bound solvers.
    """
    if kind not in SOLVER_KINDS:
        raise ValueError(f"unknown problem kind {kind!r}; expected one of {SOLVER_KINDS}")
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_MAX_N} vertices")
    if kind == "domination" and g.n == 0:
        raise ValueError("domination is undefined for the empty graph")
    if kind == "limited_packing":
        if k is None:
            raise ValueError("limited_packing needs the limit k")
        accept = lambda members: is_k_limited_packing(g, members, k)
    elif kind == "packing":
        accept = lambda members: is_packing(g, members)
    elif kind == "open_packing":
        accept = lambda members: is_open_packing(g, members)
    else:
        accept = lambda members: is_dominating(g, members)

    maximize = kind != "domination"
    best_mask = None
    best_value = -1 if maximize else g.n + 1
    for mask in range(1 << g.n):
        members = mask_to_set(mask)
        if not accept(members):
            continue
        size = mask.bit_count()
        better = size > best_value if maximize else size < best_value
        if better:
            best_value, best_mask = size, mask
        elif size == best_value and tuple(sorted(members)) < tuple(
            sorted(mask_to_set(best_mask))
        ):
            best_mask = mask
    return InvariantResult(best_value, mask_to_set(best_mask), "brute-force")


# =============================================================================
# Cached wrappers (shared by the bound checkers and corpus sweeps)
# =============================================================================

@lru_cache(maxsize=None)
def packing_number_cached(g: Graph):
    """Memoized ``packing_number``; safe because graphs are immutable."""
    return packing_number(g)


@lru_cache(maxsize=None)
def open_packing_number_cached(g: Graph):
    """Memoized ``open_packing_number``."""
    return open_packing_number(g)


@lru_cache(maxsize=None)
def limited_packing_number_cached(g: Graph, k: int):
    """Memoized ``limited_packing_number``."""
    return limited_packing_number(g, k)


@lru_cache(maxsize=None)
def domination_number_cached(g: Graph):
    """Memoized ``domination_number``."""
    return domination_number(g)


def invariant_report(g, include_witnesses=False):
    """Return the standard invariant summary for a non-empty graph as a dict.

    Keys: n, m, rho, rho_open, l1, l2, gamma, omega, max_degree,
    min_degree, diameter (``None`` when disconnected) and triangle_free.
    With ``include_witnesses`` a parallel ``witnesses`` dict of sorted
    vertex lists is attached.
    """
    from . import graph_core

    if g.n == 0:
        raise ValueError("the empty graph has no invariant summary")
    rho = packing_number_cached(g)
    rho_open = open_packing_number_cached(g)
    l1 = limited_packing_number_cached(g, 1)
    l2 = limited_packing_number_cached(g, 2)
    gamma = domination_number_cached(g)
    omega, omega_witness = graph_core.clique_number(g)
    max_deg, min_deg = graph_core.degree_extremes(g)
    diam = graph_core.diameter(g)
    report = {
        "n": g.n,
        "m": g.m,
        "rho": rho.value,
        "rho_open": rho_open.value,
        "l1": l1.value,
        "l2": l2.value,
        "gamma": gamma.value,
        "omega": omega,
        "max_degree": max_deg,
        "min_degree": min_deg,
        "diameter": None if diam != diam or diam == float("inf") else diam,
        "triangle_free": graph_core.is_triangle_free(g),
        "connected": graph_core.is_connected(g),
    }
    if include_witnesses:
        report["witnesses"] = {
            "rho": sorted(rho.witness),
            "rho_open": sorted(rho_open.witness),
            "l1": sorted(l1.witness),
            "l2": sorted(l2.witness),
            "gamma": sorted(gamma.witness),
            "omega": sorted(omega_witness),
        }
    return report
