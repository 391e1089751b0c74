"""One checker per packing inequality, each returning a structured verdict.

Every checker computes its left and right side with the exact solvers,
decides ``holds`` (the inequality as recorded) and ``tight`` (equality),
and runs any side conditions the statement couples to tightness as named
``subchecks``. Irrational right sides are compared by squaring in integer
arithmetic, never through floats; the stored ``rhs`` float is display-only.

Graphs outside a checker's hypotheses raise ``NotApplicableError`` so a
sweep can count them as skips instead of failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import families
from .graph_core import (
    complement,
    degree_extremes,
    diameter,
    distances_from,
    is_balanced_biclique,
    is_connected,
    is_triangle_free,
)
from .solvers import (
    domination_number_cached,
    is_k_limited_packing,
    limited_packing_number_cached,
    open_packing_number_cached,
    packing_number_cached,
)

BOUND_IDS = (
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


class NotApplicableError(ValueError):
    """The graph falls outside the hypotheses of the requested checker."""


@dataclass(frozen=True)
class BoundCheck:
    """Verdict for one inequality on one graph.

    ``holds`` is exactly the recorded inequality (or stated equality);
    ``tight`` means lhs equals rhs and implies ``holds``. ``subchecks``
    carries named side conditions (tightness biconditionals, companion
    inequalities); a checker's overall verdict is ``passed``.
    """

    bound_id: str
    lhs: int | float
    rhs: int | float
    holds: bool
    tight: bool
    context: dict = field(default_factory=dict)
    witness: frozenset[int] | None = None
    subchecks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.holds and all(self.subchecks.values())


def _ceil_div(a, b):
    """Ceiling of a/b for integers, correct for negative numerators."""
    return -(-a // b)


def _require_connected(g, bound_id):
    if g.n == 0:
        raise NotApplicableError(f"{bound_id}: the empty graph is out of scope")
    if not is_connected(g):
        raise NotApplicableError(f"{bound_id}: graph is disconnected")


def check_mantel(g):
    """Edge count of a triangle-free graph is at most floor(n^2/4).

    Tight exactly for the balanced complete bipartite graph; the verdict
    includes that biconditional as a subcheck. Orders 0 and 1 are accepted
    with rhs 0, reading the degenerate balanced biclique as edgeless.
    """
    if not is_triangle_free(g):
        raise NotApplicableError("MANTEL: graph has a triangle")
    n, m = g.n, g.m
    rhs = n * n // 4
    tight = m == rhs
    return BoundCheck(
        bound_id="MANTEL",
        lhs=m,
        rhs=rhs,
        holds=m <= rhs,
        tight=tight,
        context={"n": n, "m": m},
        subchecks={"tight_iff_balanced_biclique": tight == is_balanced_biclique(g)},
    )


def _sqrt_bound_check(bound_id, lhs, slack, radicand):
    """Exact verdict for lhs <= base - sqrt(radicand) where slack = base - lhs.

    ``slack`` is a non-negative integer, so the comparison squares both
    sides: holds iff slack^2 >= radicand, tight iff equal.
    """
    if radicand < 0:
        raise RuntimeError(f"{bound_id}: negative radicand {radicand}; hypotheses violated")
    holds = slack >= 0 and slack * slack >= radicand
    tight = slack >= 0 and slack * slack == radicand
    return holds, tight


def check_thm2_open(g):
    """Open packing of a triangle-free graph is at most n+1-sqrt(4m-2n+1).

    Requires no isolated vertex. Tightness must coincide with membership
    in the K2-pendants family, recorded as a subcheck.
    """
    if not is_triangle_free(g):
        raise NotApplicableError("THM2_OPEN: graph has a triangle")
    if g.n == 0 or min(g.degree(v) for v in range(g.n)) == 0:
        raise NotApplicableError("THM2_OPEN: graph has an isolated vertex")
    n, m = g.n, g.m
    radicand = 4 * m - 2 * n + 1
    lhs = open_packing_number_cached(g).value
    holds, tight = _sqrt_bound_check("THM2_OPEN", lhs, n + 1 - lhs, radicand)
    member = families.recognize_omega(g).member
    return BoundCheck(
        bound_id="THM2_OPEN",
        lhs=lhs,
        rhs=n + 1 - math.sqrt(radicand),
        holds=holds,
        tight=tight,
        context={"n": n, "m": m, "radicand": radicand},
        witness=open_packing_number_cached(g).witness,
        subchecks={"tight_iff_family_member": tight == member},
    )


def check_thm2_pack(g):
    """Packing of a triangle-free graph is at most n+2-2*sqrt(1+m).

    Requires no isolated vertex. Tightness must coincide with membership
    in the single-vertex-pendants family, recorded as a subcheck.
    """
    if not is_triangle_free(g):
        raise NotApplicableError("THM2_PACK: graph has a triangle")
    if g.n == 0 or min(g.degree(v) for v in range(g.n)) == 0:
        raise NotApplicableError("THM2_PACK: graph has an isolated vertex")
    n, m = g.n, g.m
    radicand = 4 * (1 + m)
    lhs = packing_number_cached(g).value
    holds, tight = _sqrt_bound_check("THM2_PACK", lhs, n + 2 - lhs, radicand)
    member = families.recognize_omega_prime(g).member
    return BoundCheck(
        bound_id="THM2_PACK",
        lhs=lhs,
        rhs=n + 2 - 2 * math.sqrt(1 + m),
        holds=holds,
        tight=tight,
        context={"n": n, "m": m, "radicand": radicand},
        witness=packing_number_cached(g).witness,
        subchecks={"tight_iff_family_member": tight == member},
    )


def check_gamma_diameter(g):
    """Domination number of a connected graph is at least ceil((diam+1)/3)."""
    _require_connected(g, "EQ11_GAMMA")
    diam = diameter(g)
    rhs = _ceil_div(diam + 1, 3)
    result = domination_number_cached(g)
    return BoundCheck(
        bound_id="EQ11_GAMMA",
        lhs=result.value,
        rhs=rhs,
        holds=result.value >= rhs,
        tight=result.value == rhs,
        context={"n": g.n, "diam": diam},
        witness=result.witness,
    )


def _diametral_path(g):
    """Return the lexicographically least shortest path realizing the diameter."""
    diam = diameter(g)
    for u in range(g.n):
        dist = distances_from(g, u)
        for v in range(g.n):
            if dist[v] != diam:
                continue
            path = [v]
            while path[-1] != u:
                here = path[-1]
                prev = min(
                    w
                    for w in range(g.n)
                    if g.rows[here] >> w & 1 and dist[w] == dist[here] - 1
                )
                path.append(prev)
            return path[::-1]
    raise AssertionError("diameter endpoint scan cannot fail on a connected graph")


def check_prop3(g, k):
    """k-limited packing of a connected graph is at least ceil((k*diam+k)/3).

    Also rebuilds the textbook witness from a diametral path v1..v_{d+1}:
    every third vertex from v1 for k = 1, everything except every third
    vertex from v3 for k = 2. The witness must validate and have exactly
    the bound's size; both are recorded as subchecks.
    """
    if k not in (1, 2):
        raise ValueError("the limit k must be 1 or 2")
    _require_connected(g, "PROP3_LK")
    diam = diameter(g)
    bound = _ceil_div(k * diam + k, 3)
    value = limited_packing_number_cached(g, k).value
    path = _diametral_path(g)
    if k == 1:
        witness = frozenset(path[0::3])
    else:
        witness = frozenset(path) - frozenset(path[2::3])
    return BoundCheck(
        bound_id="PROP3_LK",
        lhs=bound,
        rhs=value,
        holds=bound <= value,
        tight=bound == value,
        context={"n": g.n, "diam": diam, "k": k, "path": tuple(path)},
        witness=witness,
        subchecks={
            "witness_validates": is_k_limited_packing(g, witness, k),
            "witness_has_bound_size": len(witness) == bound,
        },
    )


def check_obs_rho1(g):
    """Packing number of a connected graph is 1 exactly when diameter <= 2.

    ``holds`` records the biconditional truth; lhs/rhs expose the packing
    number and the diameter that entered it.
    """
    _require_connected(g, "OBS_RHO1")
    diam = diameter(g)
    result = packing_number_cached(g)
    agrees = (result.value == 1) == (diam <= 2)
    return BoundCheck(
        bound_id="OBS_RHO1",
        lhs=result.value,
        rhs=diam,
        holds=agrees,
        tight=agrees,
        context={"n": g.n, "diam": diam, "biconditional": True},
        witness=result.witness,
    )


def check_thm4(g):
    """Complement-pair packing bounds for connected graphs with connected complement.

    When both diameters are 3 the sum and product of the two packing
    numbers must equal 4 (sum recorded as the main verdict, product as a
    subcheck). Otherwise, with M = max diameter >= 3 and D' = smaller max
    degree, the sum is at most n - ceil((2M+3D'-11)/3) and the product at
    most n - ceil((2M+3D'-8)/3); the product bound and the diameters
    actually differing are subchecks. The single-graph intermediate bound
    n - ceil((2 diam + 3 maxdeg - 8)/3) for the larger-diameter side is
    exposed in context for inspection, not asserted.
    """
    _require_connected(g, "THM4_NG")
    gbar = complement(g)
    if not is_connected(gbar):
        raise NotApplicableError("THM4_NG: complement is disconnected")
    diam = diameter(g)
    diam_bar = diameter(gbar)
    big = max(diam, diam_bar)
    if big < 3:
        raise NotApplicableError("THM4_NG: both diameters at most 2; packing numbers are 1")
    rho = packing_number_cached(g).value
    rho_bar = packing_number_cached(gbar).value
    total = rho + rho_bar
    product = rho * rho_bar
    context = {
        "n": g.n,
        "diam": diam,
        "diam_complement": diam_bar,
        "rho": rho,
        "rho_complement": rho_bar,
        "product": product,
    }
    if diam == 3 and diam_bar == 3:
        return BoundCheck(
            bound_id="THM4_NG",
            lhs=total,
            rhs=4,
            holds=total == 4,
            tight=total == 4,
            context={**context, "clause": "both-diameters-3"},
            subchecks={"product_equals_four": product == 4},
        )
    delta_prime = min(degree_extremes(g)[0], degree_extremes(gbar)[0])
    sum_bound = g.n - _ceil_div(2 * big + 3 * delta_prime - 11, 3)
    product_bound = g.n - _ceil_div(2 * big + 3 * delta_prime - 8, 3)
    side, side_bar = (g, gbar) if diam >= diam_bar else (gbar, g)
    side_deg = degree_extremes(side)[0]
    context.update(
        {
            "clause": "diameters-differ",
            "max_diameter": big,
            "min_max_degree": delta_prime,
            "product_bound": product_bound,
            "one_sided_bound": side.n - _ceil_div(2 * big + 3 * side_deg - 8, 3),
            "one_sided_rho": packing_number_cached(side).value,
        }
    )
    return BoundCheck(
        bound_id="THM4_NG",
        lhs=total,
        rhs=sum_bound,
        holds=total <= sum_bound,
        tight=total == sum_bound,
        context=context,
        subchecks={
            "product_bound_holds": product <= product_bound,
            "diameters_differ": diam != diam_bar,
        },
    )


def check_lemma5(g):
    """Open packing of a connected graph is at most n - maxdeg + 1.

    Equality holds exactly when the graph has a dominating vertex and a
    degree-1 vertex; that biconditional is a subcheck.
    """
    _require_connected(g, "LEM5_OPEN")
    max_deg, min_deg = degree_extremes(g)
    result = open_packing_number_cached(g)
    rhs = g.n - max_deg + 1
    tight = result.value == rhs
    characterized = max_deg == g.n - 1 and min_deg == 1
    return BoundCheck(
        bound_id="LEM5_OPEN",
        lhs=result.value,
        rhs=rhs,
        holds=result.value <= rhs,
        tight=tight,
        context={"n": g.n, "max_degree": max_deg, "min_degree": min_deg},
        witness=result.witness,
        subchecks={"tight_iff_dominating_vertex_and_pendant": tight == characterized},
    )


def check_l2_ng(g):
    """2-limited packings of a graph and its complement sum to at most n + 2.

    No connectivity needed; connectivity of both sides is recorded in
    context for inspection.
    """
    if g.n == 0:
        raise NotApplicableError("L2_NG: the empty graph is out of scope")
    gbar = complement(g)
    own = limited_packing_number_cached(g, 2).value
    other = limited_packing_number_cached(gbar, 2).value
    total = own + other
    rhs = g.n + 2
    return BoundCheck(
        bound_id="L2_NG",
        lhs=total,
        rhs=rhs,
        holds=total <= rhs,
        tight=total == rhs,
        context={
            "n": g.n,
            "l2": own,
            "l2_complement": other,
            "connected": is_connected(g),
            "complement_connected": is_connected(gbar),
        },
    )
