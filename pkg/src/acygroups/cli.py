"""Command-line driver.

Exit codes: 0 success / property holds; 1 property violated (witness
emitted); 2 resource cap; 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import serialize as ser
from .acyclicity import GammaFilter, find_coset_cycle, girth
from .constraint import find_i_coset_cycle, validate_i_coset_cycle
from .acyclicity import validate_coset_cycle
from .covering import (
    check_n_acyclic_hypergraph,
    graph_cover,
    hypergraph_cover,
    verify_cover,
)
from .egraph import biggs_tree
from .errors import AcygroupsError, ResourceCap, SchemaError
from .groupoid import construct_n_acyclic_groupoid, pattern_igraph
from .groups import cayley_graph, sym
from .synthesis import SynthesisConfig, construct_n_acyclic, construct_n_acyclic_over

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_CAP = 2
EXIT_INVALID = 3


def _read_json(path):
    data = sys.stdin.read() if path == "-" else open(path, "rb").read().decode()
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}", "/") from None


def _load(path, expected=None, inputs=None):
    doc = _read_json(path)
    obj = ser.load_document(doc)
    if expected and doc.get("format") not in expected:
        raise SchemaError(f"expected one of {expected}", "/format")
    if inputs is not None and path != "-":
        inputs[path] = ser.digest(doc)
    return obj, doc


def _emit(doc, out, outputs):
    data = ser.canonical_bytes(doc)
    if out in (None, "-"):
        sys.stdout.write(data.decode())
        outputs["stdout"] = ser.digest(doc)
    else:
        with open(out, "wb") as fh:
            fh.write(data)
        outputs[out] = ser.digest(doc)


def _write_manifest(args, command, config, inputs, outputs, reports=None, timings=None):
    if not getattr(args, "manifest", None):
        return
    doc = ser.manifest(command, config, inputs, outputs, reports=reports,
                       timings=timings if getattr(args, "timings", False) else None)
    with open(args.manifest, "wb") as fh:
        fh.write(ser.canonical_bytes(doc))


def cmd_biggs(args):
    graph = biggs_tree([c for c in args.colors.split(",") if c], args.depth)
    outputs = {}
    _emit(ser.egraph_to_json(graph), args.output, outputs)
    _write_manifest(args, ["biggs"], {"colors": args.colors, "depth": args.depth}, {}, outputs)
    return EXIT_OK


def cmd_symgroup(args):
    inputs = {}
    graph, _ = _load(args.graph, {"egraph"}, inputs)
    group = sym(graph, attach_hypercube=not args.no_hypercube)
    outputs = {}
    _emit(ser.egroup_to_json(group), args.output, outputs)
    _write_manifest(args, ["symgroup"], {"no_hypercube": args.no_hypercube}, inputs, outputs)
    return EXIT_OK


def cmd_cayley(args):
    inputs = {}
    group, _ = _load(args.group, {"egroup"}, inputs)
    outputs = {}
    _emit(ser.egraph_to_json(cayley_graph(group).graph), args.output, outputs)
    _write_manifest(args, ["cayley"], {}, inputs, outputs)
    return EXIT_OK


def cmd_girth(args):
    inputs = {}
    group, _ = _load(args.group, {"egroup"}, inputs)
    value = girth(cayley_graph(group))
    outputs = {}
    doc = {"format": "girth", "girth": "infinite" if value == float("inf") else value}
    _emit(doc, args.output, outputs)
    _write_manifest(args, ["girth"], {}, inputs, outputs)
    return EXIT_OK


def cmd_check_acyclic(args):
    inputs = {}
    group, _ = _load(args.group, {"egroup"}, inputs)
    gamma = GammaFilter.size(args.gamma) if args.gamma else None
    outputs = {}
    t0 = time.monotonic()
    if args.over:
        template, _ = _load(args.over, {"egraph"}, inputs)
        witness = find_i_coset_cycle(group, template, args.n)
        entries = witness
    else:
        cyc = find_coset_cycle(group, args.n, gamma=gamma)
        entries = cyc.entries if cyc else None
    timings = {"search": time.monotonic() - t0}
    config = {"N": args.n, "gamma": args.gamma, "over": bool(args.over)}
    if entries is None:
        _emit({"format": "check", "holds": True, "N": args.n}, args.output, outputs)
        _write_manifest(args, ["check-acyclic"], config, inputs, outputs, timings=timings)
        return EXIT_OK
    _emit(ser.cycle_to_json(group, entries), args.output, outputs)
    _write_manifest(args, ["check-acyclic"], config, inputs, outputs, timings=timings)
    return EXIT_VIOLATED


def cmd_verify_witness(args):
    group, _ = _load(args.group, {"egroup"})
    doc = _read_json(args.witness)
    entries = ser.cycle_from_json(doc, group)
    if args.over:
        template, _ = _load(args.over, {"egraph"})
        ok = validate_i_coset_cycle(group, template, entries)
    else:
        ok = validate_coset_cycle(group, [(a, g) for a, g in entries])
    _emit({"format": "check", "witness_valid": ok}, args.output, {})
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_construct(args):
    inputs = {}
    group, _ = _load(args.group, {"egroup"}, inputs)
    config = SynthesisConfig(
        n_acyclic=args.n,
        element_cap=args.cap,
        early_exit=args.early_exit,
    )
    t0 = time.monotonic()
    if args.over:
        template, _ = _load(args.over, {"egraph"}, inputs)
        result, reports = construct_n_acyclic_over(group, template, config)
    else:
        result, reports = construct_n_acyclic(group, config)
    timings = {"construct": time.monotonic() - t0}
    outputs = {}
    _emit(ser.egroup_to_json(result), args.output, outputs)
    if args.reports:
        with open(args.reports, "wb") as fh:
            fh.write(ser.canonical_bytes(ser.reports_to_json(reports)))
        outputs[args.reports] = ser.digest(ser.reports_to_json(reports))
    else:
        for rep in reports:
            sys.stderr.write(json.dumps(rep.to_json(), sort_keys=True) + "\n")
    cfg_doc = {"N": args.n, "cap": args.cap, "early_exit": args.early_exit, "over": bool(args.over)}
    _write_manifest(args, ["construct"], cfg_doc, inputs, outputs,
                    reports=[r.to_json() for r in reports], timings=timings)
    final = reports[-1].final_checks if reports else None
    if final is not None and not all(final.values()):
        sys.stderr.write(f"final verification failed: {final}\n")
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_groupoid_construct(args):
    inputs = {}
    pattern, _ = _load(args.pattern, {"pattern"}, inputs)
    if args.target:
        target, _ = _load(args.target, {"igraph"}, inputs)
    else:
        target = pattern_igraph(pattern)
    config = SynthesisConfig(n_acyclic=args.n, element_cap=args.cap, early_exit=args.early_exit)
    t0 = time.monotonic()
    res = construct_n_acyclic_groupoid(pattern, target, args.n, config)
    timings = {"construct": time.monotonic() - t0}
    outputs = {}
    _emit(ser.igroupoid_to_json(res.groupoid), args.output, outputs)
    if args.group_output:
        with open(args.group_output, "wb") as fh:
            fh.write(ser.canonical_bytes(ser.egroup_to_json(res.group)))
    cfg_doc = {"N": args.n, "cap": args.cap, "early_exit": args.early_exit}
    _write_manifest(args, ["groupoid-construct"], cfg_doc, inputs, outputs,
                    reports=[r.to_json() for r in res.stage_reports], timings=timings)
    if not all(res.checks.values()):
        sys.stderr.write(f"verification failed: {res.checks}\n")
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_cover_graph(args):
    inputs = {}
    edges, _ = _load(args.graph, {"graph"}, inputs)
    group, _ = _load(args.group, {"egroup"}, inputs)
    cov = graph_cover(edges, group)
    report = verify_cover(cov)
    outputs = {}
    _emit(ser.covering_to_json(cov), args.output, outputs)
    _write_manifest(args, ["cover-graph"], {}, inputs, outputs)
    return EXIT_OK if report.ok else EXIT_VIOLATED


def cmd_cover_hypergraph(args):
    inputs = {}
    hg, _ = _load(args.hypergraph, {"hypergraph"}, inputs)
    group, _ = _load(args.group, {"egroup"}, inputs)
    cov = hypergraph_cover(hg, group)
    report = verify_cover(cov)
    outputs = {}
    _emit(ser.covering_to_json(cov), args.output, outputs)
    _write_manifest(args, ["cover-hypergraph"], {}, inputs, outputs)
    return EXIT_OK if report.ok else EXIT_VIOLATED


def cmd_verify_cover(args):
    doc = _read_json(args.cover)
    if doc.get("format") != "covering":
        raise SchemaError("expected a covering", "/format")
    if doc.get("kind") == "hypergraph":
        cover = ser.hypergraph_from_json(doc["cover"], "/cover")
        ok, witness = check_n_acyclic_hypergraph(cover, args.n)
        out = {"format": "check", "N": args.n, "holds": ok}
        if witness:
            out["witness"] = {"kind": witness.kind, "vertices": list(witness.vertices)}
        _emit(out, args.output, {})
        return EXIT_OK if ok else EXIT_VIOLATED
    cover = ser.egraph_from_json(doc["cover"], "/cover")
    value = girth(cover)
    ok = value > args.n
    _emit({"format": "check", "N": args.n, "holds": ok,
           "girth": "infinite" if value == float("inf") else value}, args.output, {})
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_export_dot(args):
    doc = _read_json(args.input)
    fmt = doc.get("format")
    if fmt == "covering":
        inner = doc["cover"]
        obj = (ser.hypergraph_from_json(inner, "/cover") if doc.get("kind") == "hypergraph"
               else ser.egraph_from_json(inner, "/cover"))
    elif fmt == "graph":
        from .covering import graph_template

        obj = graph_template(ser.graph_from_json(doc))
    else:
        obj = ser.load_document(doc)
    text = ser.object_to_dot(obj)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acygroups",
        description="Finite groups and groupoids with coset-acyclic Cayley "
        "graphs, and coverings built from them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--manifest", help="write a run manifest here")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings in the manifest")

    p = sub.add_parser("biggs", help="tree of reduced words over a colour set")
    p.add_argument("-E", "--colors", required=True, help="comma-separated colours")
    p.add_argument("-n", "--depth", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_biggs)

    p = sub.add_parser("symgroup", help="group generated by a graph's matchings")
    p.add_argument("graph", help="egraph JSON ('-' for stdin)")
    p.add_argument("--no-hypercube", action="store_true")
    common(p)
    p.set_defaults(func=cmd_symgroup)

    p = sub.add_parser("cayley", help="Cayley graph of a group")
    p.add_argument("group")
    common(p)
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("girth", help="girth of a group's Cayley graph")
    p.add_argument("group")
    common(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("check-acyclic", help="search for coset cycles up to N")
    p.add_argument("group")
    p.add_argument("-N", dest="n", type=int, required=True)
    p.add_argument("--gamma", type=int, help="restrict subsets to size < gamma")
    p.add_argument("--over", help="template egraph JSON")
    common(p)
    p.set_defaults(func=cmd_check_acyclic)

    p = sub.add_parser("verify-witness", help="revalidate a cycle witness")
    p.add_argument("witness")
    p.add_argument("group")
    p.add_argument("--over")
    common(p)
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("construct", help="grow an N-acyclic extension")
    p.add_argument("group")
    p.add_argument("-N", dest="n", type=int, required=True)
    p.add_argument("--over", help="template egraph JSON")
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--early-exit", action="store_true")
    p.add_argument("--reports", help="write stage reports here")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("groupoid-construct", help="N-acyclic groupoid pipeline")
    p.add_argument("pattern")
    p.add_argument("--target", help="complete pattern-graph JSON")
    p.add_argument("-N", dest="n", type=int, required=True)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--early-exit", action="store_true")
    p.add_argument("--group-output", help="also write the backing group")
    common(p)
    p.set_defaults(func=cmd_groupoid_construct)

    p = sub.add_parser("cover-graph", help="unbranched covering of a simple graph")
    p.add_argument("graph")
    p.add_argument("group")
    common(p)
    p.set_defaults(func=cmd_cover_graph)

    p = sub.add_parser("cover-hypergraph", help="branched covering of a hypergraph")
    p.add_argument("hypergraph")
    p.add_argument("group")
    common(p)
    p.set_defaults(func=cmd_cover_hypergraph)

    p = sub.add_parser("verify-cover", help="acyclicity check of a covering")
    p.add_argument("cover")
    p.add_argument("-N", dest="n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_verify_cover)

    p = sub.add_parser("export-dot", help="DOT rendering of a JSON object")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK
    except ResourceCap as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except SchemaError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except FileNotFoundError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except AcygroupsError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
