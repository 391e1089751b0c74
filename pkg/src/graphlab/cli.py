"""Command-line surface for the exact graph-packing toolkit.

Five subcommands cover the library: ``compute`` prints the invariant
summary of a graph, ``bounds`` evaluates the named inequality checkers,
``family`` reports recognizer verdicts, ``verify`` sweeps a corpus and
writes a JSON-lines report, and ``gen`` emits generated family members
as graph6 text. Exit codes: 0 success and nothing failed, 1 at least
one check failed (a finding), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import bounds as bounds_mod
from .corpus import (
    ALL_CHECKS,
    ENUMERATION_MAX_N,
    enumerate_connected,
    load_corpus,
    parse_graph6,
    run_sweep,
    to_graph6,
    write_report,
)
from .families import (
    OmegaParams,
    gen_ng_sharp,
    gen_omega,
    gen_omega_prime,
    gen_pi1,
    gen_pi2,
    recognize_omega,
    recognize_omega_prime,
    recognize_pi1,
    recognize_pi2,
)
from .graph_core import graph_from_edges
from .solvers import invariant_report

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2

DEFAULT_REPORT_PATH = "sweep-report.jsonl"


class CliError(Exception):
    """Usage-level failure that should exit with code 2 and a message."""


# =============================================================================
# Shared input handling
# =============================================================================

def _add_graph_arguments(parser):
    """Attach the three mutually exclusive graph input options."""
    parser.add_argument("graph6", nargs="?", help="graph6 text of the input graph")
    parser.add_argument("--file", help="read graph6 lines (one graph per line) from this path")
    parser.add_argument(
        "--edges",
        help='build the graph from an edge list such as "0-1,1-2"',
    )


def _parse_edge_list(text):
    """Turn ``"0-1,1-2"`` into a graph on vertices 0..max endpoint."""
    edges = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split("-")
        if len(parts) != 2:
            raise CliError(f"bad edge {token!r}: expected the form a-b")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise CliError(f"bad edge {token!r}: endpoints must be integers") from None
        if u < 0 or v < 0:
            raise CliError(f"bad edge {token!r}: endpoints must be nonnegative")
        edges.append((u, v))
    if not edges:
        raise CliError("--edges needs at least one edge")
    n = max(max(u, v) for u, v in edges) + 1
    try:
        return graph_from_edges(n, edges)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load_graphs(args):
    """Return ``(label, graph)`` pairs from whichever input option was used."""
    chosen = [s for s in (args.graph6, args.file, args.edges) if s is not None]
    if len(chosen) != 1:
        raise CliError("supply exactly one of: positional graph6, --file, --edges")
    if args.graph6 is not None:
        try:
            return [(args.graph6, parse_graph6(args.graph6))]
        except ValueError as exc:
            raise CliError(str(exc)) from None
    if args.file is not None:
        try:
            records = load_corpus(args.file)
        except OSError as exc:
            raise CliError(str(exc)) from None
        if not records:
            raise CliError(f"{args.file}: no graphs found")
        return [(rec.text, rec.graph) for rec in records]
    g = _parse_edge_list(args.edges)
    return [(to_graph6(g), g)]


def _plain(value):
    """Convert sets, tuples and infinities into JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _print_json(payload):
    """Print one deterministic JSON document."""
    print(json.dumps(_plain(payload), indent=2, sort_keys=True))


# =============================================================================
# compute
# =============================================================================

def cmd_compute(args):
    """Print the invariant summary for each input graph."""
    payloads = []
    for label, g in _load_graphs(args):
        report = invariant_report(g, include_witnesses=args.witness)
        payloads.append({"graph6": label, **report})
    if args.json:
        _print_json(payloads[0] if len(payloads) == 1 else payloads)
        return EXIT_OK
    for payload in payloads:
        fields = " ".join(
            f"{key}={payload[key]}"
            for key in (
                "n",
                "m",
                "rho",
                "rho_open",
                "l1",
                "l2",
                "gamma",
                "omega",
                "max_degree",
                "min_degree",
                "diameter",
                "triangle_free",
                "connected",
            )
        )
        print(f"{payload['graph6']}: {fields}")
        if args.witness:
            parts = " ".join(
                f"{key}={value}" for key, value in sorted(payload["witnesses"].items())
            )
            print(f"  witnesses: {parts}")
    return EXIT_OK


# =============================================================================
# bounds
# =============================================================================

_BOUND_RUNNERS = {
    "MANTEL": lambda g: [("MANTEL", bounds_mod.check_mantel(g))],
    "THM2_OPEN": lambda g: [("THM2_OPEN", bounds_mod.check_thm2_open(g))],
    "THM2_PACK": lambda g: [("THM2_PACK", bounds_mod.check_thm2_pack(g))],
    "EQ11_GAMMA": lambda g: [("EQ11_GAMMA", bounds_mod.check_gamma_diameter(g))],
    "PROP3_LK": lambda g: [
        ("PROP3_LK[k=1]", bounds_mod.check_prop3(g, 1)),
        ("PROP3_LK[k=2]", bounds_mod.check_prop3(g, 2)),
    ],
    "OBS_RHO1": lambda g: [("OBS_RHO1", bounds_mod.check_obs_rho1(g))],
    "THM4_NG": lambda g: [("THM4_NG", bounds_mod.check_thm4(g))],
    "LEM5_OPEN": lambda g: [("LEM5_OPEN", bounds_mod.check_lemma5(g))],
    "L2_NG": lambda g: [("L2_NG", bounds_mod.check_l2_ng(g))],
}


def _parse_check_list(text, valid):
    """Expand a comma-separated check list, with ``all`` meaning every id."""
    if text == "all":
        return tuple(valid)
    ids = tuple(token.strip() for token in text.split(",") if token.strip())
    if not ids:
        raise CliError("--check needs at least one id")
    for check_id in ids:
        if check_id not in valid:
            raise CliError(f"unknown check id {check_id!r}; valid: {', '.join(valid)}")
    return ids


def _bound_payload(label, bc):
    """Flatten a ``BoundCheck`` into a JSON-safe dict."""
    return {
        "check": label,
        "applicable": True,
        "holds": bc.holds,
        "tight": bc.tight,
        "passed": bc.passed,
        "lhs": bc.lhs,
        "rhs": bc.rhs,
        "witness": sorted(bc.witness) if bc.witness is not None else None,
        "context": bc.context,
        "subchecks": bc.subchecks,
    }


def cmd_bounds(args):
    """Evaluate the selected inequality checkers on each input graph."""
    check_ids = _parse_check_list(args.check, bounds_mod.BOUND_IDS)
    payloads = []
    failed = False
    for label, g in _load_graphs(args):
        checks = []
        for check_id in check_ids:
            try:
                results = _BOUND_RUNNERS[check_id](g)
            except bounds_mod.NotApplicableError as exc:
                checks.append(
                    {"check": check_id, "applicable": False, "reason": str(exc)}
                )
                continue
            for name, bc in results:
                checks.append(_bound_payload(name, bc))
                if not bc.passed:
                    failed = True
        payloads.append({"graph6": label, "checks": checks})
    if args.json:
        _print_json(payloads[0] if len(payloads) == 1 else payloads)
    else:
        for payload in payloads:
            print(f"{payload['graph6']}:")
            for entry in payload["checks"]:
                print(f"  {_format_bound_line(entry)}")
    return EXIT_FINDINGS if failed else EXIT_OK


def _format_bound_line(entry):
    """Render one checker verdict as a single human-readable line."""
    if not entry["applicable"]:
        return f"{entry['check']}: not-applicable ({entry['reason']})"
    verdict = "pass" if entry["passed"] else "FAIL"
    line = f"{entry['check']}: {verdict} lhs={entry['lhs']} rhs={entry['rhs']}"
    if entry["tight"]:
        line += " tight"
    clause = entry["context"].get("clause")
    if clause is not None:
        line += f" clause={clause}"
    bad = sorted(name for name, ok in entry["subchecks"].items() if not ok)
    if bad:
        line += f" failed_subchecks={','.join(bad)}"
    return line


# =============================================================================
# family
# =============================================================================

def cmd_family(args):
    """Report family recognizer verdicts for each input graph."""
    payloads = []
    for label, g in _load_graphs(args):
        families = []
        notes = []
        for recognize in (recognize_pi1, recognize_omega, recognize_omega_prime):
            try:
                verdict = recognize(g)
            except ValueError as exc:
                notes.append(str(exc))
                continue
            if verdict.member:
                families.append(
                    {"tag": verdict.tag, "roles": verdict.roles or {}}
                )
        try:
            for verdict in recognize_pi2(g):
                families.append({"tag": verdict.tag, "roles": verdict.roles or {}})
        except ValueError as exc:
            notes.append(f"clique families skipped: {exc}")
        payloads.append({"graph6": label, "families": families, "notes": notes})
    if args.json:
        _print_json(payloads[0] if len(payloads) == 1 else payloads)
        return EXIT_OK
    for payload in payloads:
        if not payload["families"]:
            print(f"{payload['graph6']}: none")
        else:
            tags = []
            for entry in payload["families"]:
                roles = entry["roles"]
                if roles:
                    parts = ",".join(
                        f"{name}={sorted(v) if isinstance(v, frozenset) else v}"
                        for name, v in sorted(roles.items())
                    )
                    tags.append(f"{entry['tag']}({parts})")
                else:
                    tags.append(entry["tag"])
            print(f"{payload['graph6']}: {' '.join(tags)}")
        for note in payload["notes"]:
            print(f"  note: {note}")
    return EXIT_OK


# =============================================================================
# verify
# =============================================================================

def cmd_verify(args):
    """Sweep a corpus file or an enumerated order and write the report."""
    if (args.corpus is None) == (args.enumerate is None):
        raise CliError("supply exactly one of --corpus PATH or --enumerate N")
    check_ids = _parse_check_list(args.check, ALL_CHECKS)
    if args.corpus is not None:
        try:
            corpus = load_corpus(args.corpus)
        except OSError as exc:
            raise CliError(str(exc)) from None
        corpus_id = os.path.basename(args.corpus)
    else:
        n = args.enumerate
        if not 1 <= n <= ENUMERATION_MAX_N:
            raise CliError(f"--enumerate accepts 1..{ENUMERATION_MAX_N}, got {n}")
        corpus = enumerate_connected(n)
        corpus_id = f"connected-n{n}"
    report = run_sweep(corpus, check_ids, corpus_id=corpus_id)
    write_report(report, args.report)
    failed = report.total_failed
    if args.json:
        _print_json(
            {
                "corpus": report.corpus_id,
                "graphs": report.runtime.get("graphs", 0),
                "checks": list(report.checks),
                "tallies": report.tallies,
                "findings": len(report.findings),
                "report": args.report,
            }
        )
    else:
        print(
            f"corpus {report.corpus_id}: {report.runtime.get('graphs', 0)} graphs,"
            f" checks {','.join(report.checks)}"
        )
        for check_id in report.checks:
            tally = report.tallies[check_id]
            fields = " ".join(f"{key}={tally[key]}" for key in sorted(tally))
            print(f"  {check_id}: {fields}")
        print(f"findings: {len(report.findings)}")
        print(f"report: {args.report}")
    return EXIT_FINDINGS if failed else EXIT_OK


# =============================================================================
# gen
# =============================================================================

def _parse_attachment_map(text):
    """Turn ``"0:0,1:1"`` into a core-vertex to pendant-index dict."""
    mapping = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split(":")
        if len(parts) != 2:
            raise CliError(f"bad attachment {token!r}: expected core:target")
        try:
            core, target = int(parts[0]), int(parts[1])
        except ValueError:
            raise CliError(f"bad attachment {token!r}: both sides must be integers") from None
        if core in mapping:
            raise CliError(f"core vertex {core} attached twice")
        mapping[core] = target
    if not mapping:
        raise CliError("--attach needs at least one core:target pair")
    return mapping


def _parse_components(text):
    """Turn ``"1-1,2"`` into pendant component shapes for the clique family."""
    shapes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split("-")
        if len(parts) not in (1, 2):
            raise CliError(f"bad component {token!r}: expected j or j1-j2")
        try:
            shape = tuple(int(p) for p in parts)
        except ValueError:
            raise CliError(f"bad component {token!r}: edge counts must be integers") from None
        shapes.append(shape)
    if not shapes:
        raise CliError("--components needs at least one shape")
    return tuple(shapes)


def _require_option(args, name):
    """Fetch a family parameter, failing with a usage message when absent."""
    value = getattr(args, name.replace("-", "_"))
    if value is None:
        raise CliError(f"--family {args.family} requires --{name}")
    return value


def _gen_omega_members(args, matched):
    gen = gen_omega if matched else gen_omega_prime
    params = OmegaParams.from_map(
        _require_option(args, "t"),
        _require_option(args, "p"),
        _parse_attachment_map(_require_option(args, "attach")),
    )
    return [gen(params)]


def _gen_pi2_member(args):
    tag = _require_option(args, "tag")
    omega = _require_option(args, "omega")
    components = None
    attach = None
    if args.components is not None:
        components = _parse_components(args.components)
    if args.attach is not None:
        try:
            attach = int(args.attach)
        except ValueError:
            raise CliError("--attach for the clique families is a single integer") from None
    return [gen_pi2(tag, omega, attach=attach, components=components)]


_GEN_BUILDERS = {
    "omega": lambda args: _gen_omega_members(args, matched=True),
    "omega-prime": lambda args: _gen_omega_members(args, matched=False),
    "pi1": lambda args: gen_pi1(),
    "pi2": _gen_pi2_member,
    "ng-sharp": lambda args: [
        gen_ng_sharp(
            _require_option(args, "t"),
            _require_option(args, "len-x"),
            _require_option(args, "len-y"),
        )
    ],
}


def cmd_gen(args):
    """Build the requested family members and print their graph6 lines."""
    try:
        graphs = _GEN_BUILDERS[args.family](args)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    lines = [to_graph6(g) for g in graphs]
    if args.json:
        _print_json({"family": args.family, "graph6": lines})
    else:
        for line in lines:
            print(line)
    return EXIT_OK


# =============================================================================
# Parser assembly
# =============================================================================

def build_parser():
    """Assemble the argparse tree for all five subcommands."""
    parser = argparse.ArgumentParser(
        prog="graphlab",
        description="Exact packing, domination and bound checking for small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="print the invariant summary of a graph")
    _add_graph_arguments(p_compute)
    p_compute.add_argument("--witness", action="store_true", help="include optimal witness sets")
    p_compute.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_compute.set_defaults(func=cmd_compute)

    p_bounds = sub.add_parser("bounds", help="evaluate inequality checkers on a graph")
    _add_graph_arguments(p_bounds)
    p_bounds.add_argument(
        "--check",
        default="all",
        help=f"comma-separated ids or 'all'; valid: {', '.join(bounds_mod.BOUND_IDS)}",
    )
    p_bounds.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_bounds.set_defaults(func=cmd_bounds)

    p_family = sub.add_parser("family", help="report family recognizer verdicts")
    _add_graph_arguments(p_family)
    p_family.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_family.set_defaults(func=cmd_family)

    p_verify = sub.add_parser("verify", help="sweep a corpus and write a JSON-lines report")
    p_verify.add_argument("--corpus", help="path to a graph6 corpus file")
    p_verify.add_argument(
        "--enumerate",
        type=int,
        help=f"sweep every connected graph of this order (1..{ENUMERATION_MAX_N})",
    )
    p_verify.add_argument(
        "--check",
        default="all",
        help=f"comma-separated ids or 'all'; valid: {', '.join(ALL_CHECKS)}",
    )
    p_verify.add_argument(
        "--report",
        default=DEFAULT_REPORT_PATH,
        help=f"report path (default {DEFAULT_REPORT_PATH})",
    )
    p_verify.add_argument("--json", action="store_true", help="emit a JSON summary")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="emit generated family members as graph6")
    p_gen.add_argument(
        "--family",
        required=True,
        choices=sorted(_GEN_BUILDERS),
        help="which generator to run",
    )
    p_gen.add_argument("--t", type=int, help="core half-size (omega, omega-prime) or star degree (ng-sharp)")
    p_gen.add_argument("--p", type=int, help="pendant component count (omega, omega-prime)")
    p_gen.add_argument(
        "--attach",
        help='attachment map "core:target,..." (omega, omega-prime) or edge count (pi2)',
    )
    p_gen.add_argument("--tag", help="clique family tag such as PI2_C (pi2)")
    p_gen.add_argument("--omega", type=int, help="clique size (pi2)")
    p_gen.add_argument(
        "--components",
        help='pendant component shapes "j" or "j1-j2", comma-separated (pi2 tag PI2_B)',
    )
    p_gen.add_argument("--len-x", type=int, help="first tail length (ng-sharp)")
    p_gen.add_argument("--len-y", type=int, help="second tail length (ng-sharp)")
    p_gen.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_gen.set_defaults(func=cmd_gen)

    return parser


def main(argv=None):
    """Run one subcommand and translate failures into exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
