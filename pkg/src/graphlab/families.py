"""Generators and recognizers for the extremal families behind the bounds.

Two kinds of family live here. The core-plus-pendants families (``OMEGA``
with K2 pendants, ``OMEGA_PRIME`` with single-vertex pendants) are exactly
the graphs attaining the two triangle-free packing bounds. The clique
families (``PI1`` for clique number 2, ``PI2_A``..``PI2_J`` for clique
number at least 3) characterize when the open packing number equals
n minus the clique number; ``verify_theorem6`` checks that biconditional
on a single graph and reports disagreements as data, never as crashes.

Recognition is structural search, deliberately independent of the bound
arithmetic, so tightness biconditionals are tested by two separate routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .graph_core import (
    canonical_code,
    clique_number,
    complement,
    cycle_graph,
    degree_extremes,
    diameter,
    graph_from_edges,
    induced_subgraph,
    is_connected,
    is_triangle_free,
    is_two_independent,
    mask_to_set,
    maximum_cliques,
    path_graph,
    recognize_shape,
)
from .solvers import open_packing_number_cached, packing_number_cached

FAMILY_TAGS = (
    "OMEGA",
    "OMEGA_PRIME",
    "PI1",
    "PI2_A",
    "PI2_B",
    "PI2_C",
    "PI2_D",
    "PI2_E",
    "PI2_F",
    "PI2_G",
    "PI2_H",
    "PI2_I",
    "PI2_J",
)

PI2_TAGS = tuple(tag for tag in FAMILY_TAGS if tag.startswith("PI2_"))

CORE_RECOGNITION_MAX_N = 24
PI2_RECOGNITION_MAX_N = 16


@dataclass(frozen=True)
class FamilyMembership:
    """Recognition verdict: the tag, the answer, and role vertices when member."""

    tag: str
    member: bool
    roles: dict | None = None


@dataclass(frozen=True)
class OmegaParams:
    """Parameters for the core-plus-pendants generators.

    ``t`` is the half-size of the balanced complete bipartite core, ``p``
    the number of pendant components (edges for ``OMEGA``, single vertices
    for ``OMEGA_PRIME``) and ``attachment`` maps every core vertex
    (0..2t-1, first part 0..t-1) to the pendant-component vertex it is
    joined to, given as a sorted tuple of (core_vertex, outside_index)
    pairs. Outside indices run over 0..2p-1 for ``OMEGA`` (vertex 2t+i)
    and 0..p-1 for ``OMEGA_PRIME``.
    """

    t: int
    p: int
    attachment: tuple[tuple[int, int], ...]

    @classmethod
    def from_map(cls, t, p, attachment):
        """Build params from any mapping or pair iterable."""
        return cls(t, p, tuple(sorted(dict(attachment).items())))


def _check_omega_params(params, outside_count):
    if params.t < 1:
        raise ValueError("core half-size t must be at least 1")
    if params.p < 1:
        raise ValueError("pendant count p must be at least 1")
    attach = dict(params.attachment)
    if len(attach) != len(params.attachment):
        raise ValueError("duplicate core vertex in attachment map")
    if set(attach) != set(range(2 * params.t)):
        raise ValueError("attachment must cover every core vertex exactly once")
    for target in attach.values():
        if not (0 <= target < outside_count):
            raise ValueError(f"attachment target {target} outside 0..{outside_count - 1}")
    return attach


def gen_omega(params):
    """Build the core-plus-K2-pendants member described by ``params``.

    The result has n = 2t + 2p and m = t^2 + 2t + p. Attachments that
    would close a triangle (two adjacent core vertices sharing a target)
    are rejected.
    """
    t, p = params.t, params.p
    attach = _check_omega_params(params, 2 * p)
    edges = [(i, t + j) for i in range(t) for j in range(t)]
    edges += [(2 * t + 2 * i, 2 * t + 2 * i + 1) for i in range(p)]
    edges += [(u, 2 * t + target) for u, target in attach.items()]
    g = graph_from_edges(2 * t + 2 * p, edges)
    if not is_triangle_free(g):
        raise ValueError("attachment map closes a triangle")
    assert g.m == t * t + 2 * t + p
    return g


def gen_omega_prime(params):
    """Build the core-plus-single-vertex-pendants member for ``params``.

    The result has n = 2t + p and m = t^2 + 2t. Every pendant vertex must
    receive at least one attachment (an isolated vertex would fall outside
    the bound's no-isolated-vertex hypothesis), and no two adjacent core
    vertices may share a target (that closes a triangle).
    """
    t, p = params.t, params.p
    attach = _check_omega_params(params, p)
    if set(attach.values()) != set(range(p)):
        raise ValueError("every pendant vertex needs at least one attachment")
    edges = [(i, t + j) for i in range(t) for j in range(t)]
    edges += [(u, 2 * t + target) for u, target in attach.items()]
    g = graph_from_edges(2 * t + p, edges)
    if not is_triangle_free(g):
        raise ValueError("attachment map closes a triangle")
    assert g.m == t * t + 2 * t
    return g


def _biclique_sides(g, core):
    """Split ``core`` (inducing a connected biclique in g) into its two parts."""
    if not core:
        return frozenset(), frozenset()
    sub, mapping = induced_subgraph(g, core)
    side = [0] * sub.n
    queue = [0]
    seen = 1
    while queue:
        v = queue.pop()
        row = sub.rows[v]
        while row:
            u = (row & -row).bit_length() - 1
            if not (seen >> u & 1):
                seen |= 1 << u
                side[u] = 1 - side[v]
                queue.append(u)
            row &= row - 1
    part_a = frozenset(mapping[v] for v in range(sub.n) if side[v] == 0)
    part_b = frozenset(mapping[v] for v in range(sub.n) if side[v] == 1)
    return part_a, part_b


def _recognize_core_family(g, matched):
    """Shared search for OMEGA (matched pendants) and OMEGA_PRIME."""
    tag = "OMEGA" if matched else "OMEGA_PRIME"
    if g.n > CORE_RECOGNITION_MAX_N:
        raise ValueError(f"recognition is capped at {CORE_RECOGNITION_MAX_N} vertices")
    if g.n == 0 or not is_triangle_free(g):
        return FamilyMembership(tag, False)
    full = (1 << g.n) - 1
    m = g.m
    min_b = 2 if matched else 1
    for b in range(min_b, g.n + 1):
        if (g.n - b) % 2:
            continue
        s = (g.n - b) // 2
        if not matched and s == 0:
            continue
        # Edge count is forced: s^2 core + 2s attachments + pendant edges.
        expected_m = s * s + 2 * s + (b // 2 if matched else 0)
        if matched and b % 2:
            continue
        if m != expected_m:
            continue
        degree_pool = [v for v in range(g.n) if g.degree(v) == s + 1]
        if len(degree_pool) < 2 * s:
            continue
        for core in combinations(degree_pool, 2 * s):
            core_mask = 0
            for v in core:
                core_mask |= 1 << v
            rest_mask = full & ~core_mask
            if matched:
                pendants_ok = all(
                    (g.rows[v] & rest_mask).bit_count() == 1
                    for v in mask_to_set(rest_mask)
                )
            else:
                pendants_ok = all(
                    g.rows[v] & rest_mask == 0 and g.rows[v] != 0
                    for v in mask_to_set(rest_mask)
                )
            if not pendants_ok:
                continue
            if any((g.rows[c] & rest_mask).bit_count() != 1 for c in core):
                continue
            if s:
                sub, _ = induced_subgraph(g, core)
                if ("biclique", s, s) not in recognize_shape(sub):
                    continue
            part_a, part_b = _biclique_sides(g, core)
            roles = {
                "B": mask_to_set(rest_mask),
                "core_part_a": part_a,
                "core_part_b": part_b,
            }
            return FamilyMembership(tag, True, roles)
    return FamilyMembership(tag, False)


def recognize_omega(g):
    """Decide membership in the K2-pendants family by structure search."""
    return _recognize_core_family(g, matched=True)


def recognize_omega_prime(g):
    """Decide membership in the single-vertex-pendants family by structure search."""
    return _recognize_core_family(g, matched=False)


# =============================================================================
# Clique-number-2 family
# =============================================================================

def gen_pi1():
    """Return the four clique-number-2 graphs attaining rho_open = n - 2."""
    return [path_graph(4), path_graph(5), path_graph(6), cycle_graph(4)]


def recognize_pi1(g):
    """Decide membership among the four clique-number-2 equality graphs."""
    if g.n > 6:
        return FamilyMembership("PI1", False)
    code = canonical_code(g)
    for member in gen_pi1():
        if canonical_code(member) == code:
            return FamilyMembership("PI1", True, {})
    return FamilyMembership("PI1", False)


# =============================================================================
# Clique-number >= 3 families
# =============================================================================

def gen_pi2(tag, omega, attach=None, components=None):
    """Build one member of the requested clique family.

    The base is a clique S on vertices 0..omega-1 (omega >= 3) with x = 0
    as the distinguished clique vertex; extra vertices are appended in the
    order y, z, w, t as the tag requires. ``attach`` controls how many
    clique vertices the far end is joined to (family defaults are the
    minimum). ``PI2_B`` instead takes ``components``: a tuple of component
    shapes, each ``(j,)`` for a single vertex with j clique attachments or
    ``(j1, j2)`` for an edge whose ends get j1 and j2 attachments; targets
    are assigned to distinct clique vertices in order, so every clique
    vertex keeps at most one outside neighbor.
    """
    if tag not in PI2_TAGS:
        raise ValueError(f"unknown clique-family tag {tag!r}")
    if omega < 3:
        raise ValueError("clique families need clique number at least 3")
    if tag == "PI2_B":
        return _gen_pi2_b(omega, components)
    if components is not None:
        raise ValueError(f"{tag} takes no components parameter")

    defaults = {"PI2_A": 0, "PI2_C": 2, "PI2_J": 0}
    if attach is None:
        attach = defaults.get(tag, 1)
    clique = list(combinations(range(omega), 2))

    if tag == "PI2_A":
        if not 0 <= attach <= omega - 2:
            raise ValueError("side attachments must stay within 0..omega-2")
        v, w = omega, omega + 1
        edges = clique + [(0, v), (0, w)] + [(i, v) for i in range(1, attach + 1)]
        g = graph_from_edges(omega + 2, edges)
    elif tag == "PI2_C":
        if not 2 <= attach <= omega - 1:
            raise ValueError("the new vertex needs 2..omega-1 clique neighbors")
        y = omega
        edges = clique + [(i, y) for i in range(attach)]
        g = graph_from_edges(omega + 1, edges)
    elif tag == "PI2_J":
        if not 0 <= attach <= omega - 2:
            raise ValueError("extra attachments must stay within 0..omega-2")
        y, z = omega, omega + 1
        edges = clique + [(y, z), (0, z)] + [(i, z) for i in range(1, attach + 1)]
        g = graph_from_edges(omega + 2, edges)
    else:
        if not 1 <= attach <= omega - 1:
            raise ValueError("y needs 1..omega-1 clique neighbors avoiding x")
        y = omega
        edges = clique + [(i, y) for i in range(1, attach + 1)]
        z = omega + 1
        if tag == "PI2_D":
            edges.append((0, z))
            n = omega + 2
        elif tag in ("PI2_E", "PI2_F", "PI2_G"):
            edges.append((y, z))
            n = omega + 2
            if tag == "PI2_F":
                edges.append((0, z))
            if tag == "PI2_G":
                edges.append((0, omega + 2))
                n = omega + 3
        else:  # PI2_H, PI2_I
            w = omega + 2
            edges += [(y, z), (z, w)]
            n = omega + 3
            if tag == "PI2_I":
                edges.append((0, omega + 3))
                n = omega + 4
        g = graph_from_edges(n, edges)

    got_omega, _ = clique_number(g)
    assert got_omega == omega and is_connected(g)
    return g


def _gen_pi2_b(omega, components):
    if components is None:
        components = ((1, 1),)
    next_target = 0
    vertex = omega
    edges = list(combinations(range(omega), 2))
    for shape in components:
        if len(shape) not in (1, 2) or any(j < 0 for j in shape):
            raise ValueError("component shapes are (j,) or (j1, j2) with j >= 0")
        if sum(shape) < 1:
            raise ValueError("every component needs at least one clique attachment")
        if max(shape) > omega - 1:
            raise ValueError("a component end may attach to at most omega-1 clique vertices")
        ends = [vertex] if len(shape) == 1 else [vertex, vertex + 1]
        if len(shape) == 2:
            edges.append((ends[0], ends[1]))
        for end, j in zip(ends, shape):
            for _ in range(j):
                if next_target >= omega:
                    raise ValueError(
                        "total attachments exceed omega; clique vertices would"
                        " gain two outside neighbors"
                    )
                edges.append((next_target, end))
                next_target += 1
        vertex += len(shape)
    g = graph_from_edges(vertex, edges)
    got_omega, _ = clique_number(g)
    assert got_omega == omega and is_connected(g)
    return g


def pi2_parameter_grid(omega):
    """Return the minimal (tag, parameters) grid for one clique size.

    The grid covers every tag with its smallest attachment choices. For
    ``PI2_B`` it lists the minimal component shapes that keep the equality
    property; the single-vertex-one-attachment shape is excluded because
    a lone pendant below a maximum clique satisfies the family text yet
    not the equality, so it would poison generator round-trip tests.
    """
    grid = []
    for attach in range(omega - 1):
        grid.append(("PI2_A", {"attach": attach}))
    for shapes in (((2,),), ((1, 1),), ((1, 0),), ((1,), (1,))):
        grid.append(("PI2_B", {"components": shapes}))
    for attach in range(2, omega):
        grid.append(("PI2_C", {"attach": attach}))
    for tag in ("PI2_D", "PI2_E", "PI2_F", "PI2_G", "PI2_H", "PI2_I"):
        for attach in range(1, omega):
            grid.append((tag, {"attach": attach}))
    for attach in range(omega - 1):
        grid.append(("PI2_J", {"attach": attach}))
    return grid


def _single_clique_neighbor(g, v, smask):
    """Return the unique clique neighbor of ``v`` or None."""
    hits = g.rows[v] & smask
    if hits.bit_count() != 1:
        return None
    return hits.bit_length() - 1


def recognize_pi2(g, strict=True):
    """Return memberships among the clique-number >= 3 equality families.

    Every maximum clique is tried as S and every assignment of the
    remaining vertices to the distinguished roles is checked against the
    family conditions; the first match per tag (cliques and assignments
    in sorted order) supplies the recorded roles. Families H and I pin the
    far vertex w to be a pendant on z; with ``strict=False`` w may attach
    anywhere inside {y, z}, a looser reading whose extra matches are
    surfaced by sweeps as findings.
    """
    if g.n < 3:
        raise ValueError("clique-family recognition needs at least 3 vertices")
    if not is_connected(g):
        raise ValueError("clique-family recognition expects a connected graph")
    if g.n > PI2_RECOGNITION_MAX_N:
        raise ValueError(f"recognition is capped at {PI2_RECOGNITION_MAX_N} vertices")
    omega, _ = clique_number(g)
    if omega < 3 or omega == g.n:
        return []
    found = {}

    max_deg, min_deg = degree_extremes(g)
    if min_deg == 1 and max_deg == g.n - 1 and max_deg == omega + 1:
        hub = next(v for v in range(g.n) if g.degree(v) == g.n - 1)
        pendant = min(v for v in range(g.n) if g.degree(v) == 1)
        found["PI2_A"] = {"u": hub, "w": pendant}

    for clique in maximum_cliques(g):
        smask = 0
        for v in clique:
            smask |= 1 << v
        rem = sorted(set(range(g.n)) - clique)
        rem_mask = 0
        for v in rem:
            rem_mask |= 1 << v
        blanket = all((g.rows[s] & rem_mask).bit_count() <= 1 for s in clique)

        if "PI2_B" not in found and rem and blanket and is_two_independent(g, rem):
            found["PI2_B"] = {"S": clique}
        if not blanket:
            continue

        if len(rem) == 1 and "PI2_C" not in found:
            y = rem[0]
            if (g.rows[y] & smask).bit_count() >= 2:
                found["PI2_C"] = {"S": clique, "y": y}

        if len(rem) == 2:
            for y, z in permutations(rem):
                ybit, zbit = 1 << y, 1 << z
                if "PI2_D" not in found:
                    x = _single_clique_neighbor(g, z, smask)
                    if (
                        x is not None
                        and g.rows[z] == 1 << x
                        and g.rows[y] & ~(smask & ~(1 << x)) == 0
                        and g.rows[y]
                    ):
                        found["PI2_D"] = {"S": clique, "x": x, "y": y, "z": z}
                if "PI2_E" not in found:
                    if (
                        g.rows[z] == ybit
                        and g.rows[y] & zbit
                        and g.rows[y] & smask
                        and smask & ~g.rows[y]
                    ):
                        x = (smask & ~g.rows[y] & -(smask & ~g.rows[y])).bit_length() - 1
                        found["PI2_E"] = {"S": clique, "x": x, "y": y, "z": z}
                if "PI2_F" not in found:
                    x = _single_clique_neighbor(g, z, smask)
                    if (
                        x is not None
                        and g.rows[z] == (1 << x) | ybit
                        and not g.rows[y] >> x & 1
                        and g.rows[y] & smask
                    ):
                        found["PI2_F"] = {"S": clique, "x": x, "y": y, "z": z}
                if "PI2_J" not in found:
                    if g.rows[y] == zbit and g.rows[z] & smask:
                        x = (g.rows[z] & smask & -(g.rows[z] & smask)).bit_length() - 1
                        found["PI2_J"] = {"S": clique, "x": x, "y": y, "z": z}

        if len(rem) == 3:
            for y, z, t in permutations(rem):
                if "PI2_G" in found:
                    break
                ybit = 1 << y
                x = _single_clique_neighbor(g, t, smask)
                if (
                    x is not None
                    and g.rows[t] == 1 << x
                    and g.rows[z] == ybit
                    and g.rows[y] & (1 << z)
                    and g.rows[y] & smask
                    and not g.rows[y] >> x & 1
                ):
                    found["PI2_G"] = {"S": clique, "x": x, "y": y, "z": z, "t": t}
            for y, z, w in permutations(rem):
                if "PI2_H" in found:
                    break
                roles = _match_tail(g, smask, y, z, w, strict)
                if roles is not None:
                    found["PI2_H"] = {"S": clique, **roles}

        if len(rem) == 4:
            for y, z, w, t in permutations(rem):
                if "PI2_I" in found:
                    break
                x = _single_clique_neighbor(g, t, smask)
                if x is None or g.rows[t] != 1 << x:
                    continue
                roles = _match_tail(g, smask, y, z, w, strict, forced_x=x)
                if roles is not None:
                    found["PI2_I"] = {"S": clique, **roles, "t": t}

    return [FamilyMembership(tag, True, found[tag]) for tag in sorted(found)]


def _match_tail(g, smask, y, z, w, strict, forced_x=None):
    """Match the y-z-w tail shared by families H and I; return roles or None."""
    ybit, zbit, wbit = 1 << y, 1 << z, 1 << w
    if g.rows[z] != ybit | wbit:
        return None
    if strict:
        if g.rows[w] != zbit:
            return None
    else:
        if g.rows[w] & ~(ybit | zbit) or not g.rows[w]:
            return None
    if not g.rows[y] & smask:
        return None
    if forced_x is None:
        free = smask & ~g.rows[y]
        if not free:
            return None
        x = (free & -free).bit_length() - 1
    else:
        if g.rows[y] >> forced_x & 1:
            return None
        x = forced_x
    return {"x": x, "y": y, "z": z, "w": w}


def verify_theorem6(g):
    """Check equality rho_open = n - omega against family membership.

    Returns {"lhs", "rhs", "agree", "details"}: lhs is the equality truth,
    rhs the membership truth (clique-number-2 list for omega = 2, the
    (a)-(j) families otherwise) and details carries the numbers and tags.
    Disagreements come back as data; nothing raises on them.
    """
    if g.n < 3:
        raise ValueError("the equality characterization assumes at least 3 vertices")
    if not is_connected(g):
        raise ValueError("the equality characterization assumes a connected graph")
    omega, _ = clique_number(g)
    rho_open = open_packing_number_cached(g).value
    lhs = rho_open == g.n - omega
    if omega == 2:
        member = recognize_pi1(g).member
        tags = ["PI1"] if member else []
    else:
        memberships = recognize_pi2(g)
        member = bool(memberships)
        tags = [ms.tag for ms in memberships]
    return {
        "lhs": lhs,
        "rhs": member,
        "agree": lhs == member,
        "details": {
            "n": g.n,
            "omega": omega,
            "rho_open": rho_open,
            "target": g.n - omega,
            "tags": tags,
        },
    }


# =============================================================================
# Sharpness construction for the complement-pair packing bounds
# =============================================================================

def gen_ng_sharp(t, len_x, len_y):
    """Build the star-with-two-tails graph attaining the complement-pair bounds.

    A star center with ``t >= 3`` leaves; one tail of ``len_x`` extra edges
    (``len_x`` positive, divisible by 3 and >= ``len_y``) hangs off the
    first leaf and, when ``len_y >= 1``, a second tail of ``len_y`` extra
    edges hangs off the second leaf. The construction is verified on the
    spot: its packing number must equal n - ceil((2 diam + 3 maxdeg - 8)/3)
    and the complement's packing number must be 1.
    """
    if t < 3:
        raise ValueError("the star needs at least 3 leaves")
    if len_x < 3 or len_x % 3:
        raise ValueError("the long tail length must be a positive multiple of 3")
    if len_y < 0 or len_y > len_x:
        raise ValueError("the short tail length must lie in 0..len_x")
    edges = [(0, i) for i in range(1, t + 1)]
    tail = [t + 1 + i for i in range(len_x + 1)]
    edges.append((1, tail[0]))
    edges += [(a, b) for a, b in zip(tail, tail[1:])]
    n = t + 2 + len_x
    if len_y:
        tail2 = [n + i for i in range(len_y + 1)]
        edges.append((2, tail2[0]))
        edges += [(a, b) for a, b in zip(tail2, tail2[1:])]
        n += len_y + 1
    g = graph_from_edges(n, edges)

    diam = diameter(g)
    max_deg, _ = degree_extremes(g)
    target = n - -(-(2 * diam + 3 * max_deg - 8) // 3)
    rho = packing_number_cached(g).value
    rho_bar = packing_number_cached(complement(g)).value
    if rho != target or rho_bar != 1:
        raise RuntimeError(
            f"construction bug: rho={rho}, target={target}, complement rho={rho_bar}"
        )
    return g
