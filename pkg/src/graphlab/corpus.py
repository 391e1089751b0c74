"""Graph serialization, small-graph enumeration, and the sweep harness.

graph6 support covers the short form (n < 63), which is all a desk-scale
laboratory needs. ``enumerate_connected`` yields one representative per
isomorphism class by augmenting the class list one vertex at a time and
deduplicating with canonical codes; direct iteration over labeled graphs
would already be hopeless at 8 vertices. ``run_sweep`` applies any set of
checkers to any corpus, tallies held / failed / tight / skipped, and turns
failures into structured findings rather than exceptions.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product

from . import bounds as bounds_mod
from . import families
from .graph_core import (
    Graph,
    add_vertex,
    canonical_code,
    disjoint_union,
    graph_from_edges,
    is_connected,
)

GRAPH6_MAX_N = 62
ENUMERATION_MAX_N = 8

ALL_CHECKS = bounds_mod.BOUND_IDS + ("THM6",)


# =============================================================================
# graph6 codec (short form)
# =============================================================================

def parse_graph6(text):
    """Decode one short-form graph6 string into a graph."""
    text = text.strip()
    if not text:
        raise ValueError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in text):
        raise ValueError(f"graph6 characters must be in chr(63)..chr(126): {text!r}")
    n = ord(text[0]) - 63
    if n > GRAPH6_MAX_N:
        raise ValueError("long-form graph6 (n >= 63) is not supported")
    pair_count = n * (n - 1) // 2
    body = text[1:]
    if len(body) != (pair_count + 5) // 6:
        raise ValueError(f"graph6 body for n={n} needs {(pair_count + 5) // 6} characters")
    bits = []
    for ch in body:
        value = ord(ch) - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[pair_count:]):
        raise ValueError("graph6 padding bits must be zero")
    edges = []
    idx = 0
    for column in range(1, n):
        for row in range(column):
            if bits[idx]:
                edges.append((row, column))
            idx += 1
    return graph_from_edges(n, edges)


def to_graph6(g):
    """Encode a graph (n < 63) as a short-form graph6 string."""
    if g.n > GRAPH6_MAX_N:
        raise ValueError("long-form graph6 (n >= 63) is not supported")
    bits = []
    for column in range(1, g.n):
        for row in range(column):
            bits.append(g.rows[row] >> column & 1)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        chunk = bits[i : i + 6]
        chunk += [0] * (6 - len(chunk))
        value = 0
        for b in chunk:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)


@dataclass(frozen=True)
class Graph6Record:
    """One corpus line: the graph6 text, where it came from, and the graph."""

    text: str
    source: str
    line: int
    graph: Graph


def load_corpus(path):
    """Read a corpus file: one graph6 per line, '#' comments and blanks skipped."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                g = parse_graph6(stripped)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            records.append(Graph6Record(stripped, str(path), lineno, g))
    return records


# =============================================================================
# Enumeration up to isomorphism
# =============================================================================

@lru_cache(maxsize=None)
def enumerate_connected(n):
    """Return one representative per connected isomorphism class on n vertices.

    Built by attaching a new vertex to every smaller-class representative in
    all ways and deduplicating by canonical code; every connected graph has
    a vertex whose removal leaves it connected, so nothing is missed.
    """
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"enumeration supports 1..{ENUMERATION_MAX_N} vertices")
    if n == 1:
        return (graph_from_edges(1, []),)
    seen = {}
    for parent in enumerate_connected(n - 1):
        for mask in range(1, 1 << (n - 1)):
            g = add_vertex(parent, mask)
            code = canonical_code(g)
            if code not in seen:
                seen[code] = g
    return tuple(seen.values())


def _partitions(n, cap):
    """Yield the partitions of n with parts at most cap, largest part first."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_all(n):
    """Return one representative per isomorphism class of ALL graphs on n vertices.

    Assembled as disjoint unions of connected classes over every partition
    of n; distinct component multisets give non-isomorphic graphs, so no
    dedup pass is needed.
    """
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"enumeration supports 1..{ENUMERATION_MAX_N} vertices")
    out = []
    for parts in _partitions(n, n):
        sizes = sorted(set(parts), reverse=True)
        pools = []
        for size in sizes:
            count = parts.count(size)
            pools.append(list(combinations_with_replacement(enumerate_connected(size), count)))
        for chosen in product(*pools):
            components = [g for group in chosen for g in group]
            out.append(disjoint_union(components))
    return tuple(out)


# =============================================================================
# Sweeps
# =============================================================================

@dataclass
class SweepReport:
    """Outcome of one sweep: per-check tallies, row log, and findings."""

    corpus_id: str
    checks: tuple[str, ...]
    tallies: dict
    rows: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    runtime: dict = field(default_factory=dict)

    @property
    def total_failed(self):
        return sum(t["failed"] for t in self.tallies.values())


def _jsonable(value):
    """Make a context/roles value JSON-serializable."""
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, (set, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return value


def _bound_row(check_id, g6, bc):
    verdict = "held" if bc.passed else "failed"
    row = {
        "check": check_id,
        "graph6": g6,
        "verdict": verdict,
        "lhs": bc.lhs,
        "rhs": bc.rhs,
        "tight": bc.tight,
    }
    finding = None
    if verdict == "failed":
        finding = {
            "graph6": g6,
            "check": check_id,
            "expected": "inequality holds and side conditions pass",
            "observed": {
                "lhs": bc.lhs,
                "rhs": bc.rhs,
                "holds": bc.holds,
                "tight": bc.tight,
                "subchecks": dict(bc.subchecks),
                "context": _jsonable(bc.context),
            },
        }
    return row, finding, bc.tight


def _prop3_row(g6, g):
    first = bounds_mod.check_prop3(g, 1)
    second = bounds_mod.check_prop3(g, 2)
    verdict = "held" if first.passed and second.passed else "failed"
    tight = first.tight and second.tight
    row = {
        "check": "PROP3_LK",
        "graph6": g6,
        "verdict": verdict,
        "lhs": [first.lhs, second.lhs],
        "rhs": [first.rhs, second.rhs],
        "tight": tight,
    }
    finding = None
    if verdict == "failed":
        finding = {
            "graph6": g6,
            "check": "PROP3_LK",
            "expected": "both limits beat the diametral bound with valid witnesses",
            "observed": {
                "lhs": [first.lhs, second.lhs],
                "rhs": [first.rhs, second.rhs],
                "subchecks": {"k1": dict(first.subchecks), "k2": dict(second.subchecks)},
            },
        }
    return row, finding, tight


def _theorem6_row(g6, g):
    if g.n < 3 or not is_connected(g):
        raise bounds_mod.NotApplicableError(
            "THM6: needs a connected graph on at least 3 vertices"
        )
    verdict_record = families.verify_theorem6(g)
    agree = verdict_record["agree"]
    details = verdict_record["details"]
    row = {
        "check": "THM6",
        "graph6": g6,
        "verdict": "held" if agree else "failed",
        "lhs": details["rho_open"],
        "rhs": details["target"],
        "tight": verdict_record["lhs"],
    }
    finding = None
    if not agree:
        roles = {}
        if details["omega"] >= 3:
            for ms in families.recognize_pi2(g):
                roles[ms.tag] = _jsonable(ms.roles)
        finding = {
            "graph6": g6,
            "check": "THM6",
            "expected": "equality exactly on family members",
            "observed": {
                "equality": verdict_record["lhs"],
                "member": verdict_record["rhs"],
                "details": _jsonable(details),
                "roles": roles,
            },
        }
    return row, finding, verdict_record["lhs"]


def run_sweep(corpus, checks, corpus_id="adhoc"):
    """Apply the listed checks to every corpus graph and aggregate verdicts.

    ``corpus`` may hold Graph or Graph6Record items. Unknown check ids
    raise before any work. Graphs outside a check's hypotheses produce a
    ``skip`` row with the reason; failures produce findings but never
    abort the sweep. Rows follow corpus order, then check order; findings
    are sorted by (graph6, check) at the end.
    """
    checks = tuple(checks)
    for check_id in checks:
        if check_id not in ALL_CHECKS:
            raise ValueError(f"unknown check id {check_id!r}; valid: {ALL_CHECKS}")
    started = time.monotonic()
    tallies = {
        check_id: {"applicable": 0, "held": 0, "failed": 0, "tight": 0, "skipped": 0}
        for check_id in checks
    }
    simple = {
        "MANTEL": bounds_mod.check_mantel,
        "THM2_OPEN": bounds_mod.check_thm2_open,
        "THM2_PACK": bounds_mod.check_thm2_pack,
        "EQ11_GAMMA": bounds_mod.check_gamma_diameter,
        "OBS_RHO1": bounds_mod.check_obs_rho1,
        "THM4_NG": bounds_mod.check_thm4,
        "LEM5_OPEN": bounds_mod.check_lemma5,
        "L2_NG": bounds_mod.check_l2_ng,
    }
    report = SweepReport(corpus_id=corpus_id, checks=checks, tallies=tallies)
    graphs = 0
    for item in corpus:
        g = item.graph if isinstance(item, Graph6Record) else item
        g6 = item.text if isinstance(item, Graph6Record) else to_graph6(g)
        graphs += 1
        for check_id in checks:
            tally = tallies[check_id]
            try:
                if check_id == "PROP3_LK":
                    row, finding, tight = _prop3_row(g6, g)
                elif check_id == "THM6":
                    row, finding, tight = _theorem6_row(g6, g)
                else:
                    row, finding, tight = _bound_row(check_id, g6, simple[check_id](g))
            except bounds_mod.NotApplicableError as exc:
                report.rows.append(
                    {
                        "check": check_id,
                        "graph6": g6,
                        "verdict": "skip",
                        "lhs": None,
                        "rhs": None,
                        "tight": None,
                        "reason": str(exc),
                    }
                )
                tally["skipped"] += 1
                continue
            report.rows.append(row)
            tally["applicable"] += 1
            tally[row["verdict"]] += 1
            if tight:
                tally["tight"] += 1
            if finding is not None:
                report.findings.append(finding)
    report.findings.sort(key=lambda f: (f["graph6"], f["check"]))
    report.runtime = {"seconds": time.monotonic() - started, "graphs": graphs}
    return report


def write_report(report, path):
    """Serialize a sweep to JSON-lines; findings go to ``<path>.findings``.

    Output is deterministic: sorted keys, LF endings, no runtime stats.
    """
    path = str(path)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        header = {
            "type": "header",
            "corpus": report.corpus_id,
            "checks": list(report.checks),
            "graphs": report.runtime.get("graphs", 0),
            "tallies": report.tallies,
            "findings": len(report.findings),
        }
        handle.write(json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n")
        for row in report.rows:
            handle.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
    with open(path + ".findings", "w", encoding="utf-8", newline="\n") as handle:
        for finding in report.findings:
            handle.write(json.dumps(finding, sort_keys=True, separators=(",", ":")) + "\n")
