"""JSON and DOT forms for every public object, plus digests and manifests.

All JSON output is canonical: sorted keys, compact separators, a trailing
newline.  Digests are SHA-256 of those bytes, so equal objects serialise to
equal files bit for bit.
"""

from __future__ import annotations

import hashlib
import json

from .covering import Covering, Hypergraph
from .egraph import EGraph, new_egraph
from .errors import SchemaError
from .groupoid import ConstraintPattern, IGraph, IGroupoid
from .groups import EGroup
TOOL_VERSION = "0.1.0"
COMPOSITION_DUMP_LIMIT = 200


def canonical_bytes(doc):
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def digest(doc):
    return hashlib.sha256(canonical_bytes(doc)).hexdigest()


def _need(doc, key, types, pointer):
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", pointer)
    if key not in doc:
        raise SchemaError(f"missing key {key!r}", f"{pointer}/{key}")
    val = doc[key]
    if types is not None and not isinstance(val, types):
        raise SchemaError(f"wrong type for {key!r}", f"{pointer}/{key}")
    return val


def egraph_to_json(g, role=None):
    doc = {
        "format": "egraph",
        "vertices": [str(v) for v in g.vertex_names],
        "colors": list(g.colors),
        "edges": [[g.colors[c], str(g.vertex_names[u]), str(g.vertex_names[v])]
                  for c, u, v in g.all_edges()],
    }
    if role:
        doc["role"] = role
    return doc


def egraph_from_json(doc, pointer=""):
    vertices = _need(doc, "vertices", list, pointer)
    colors = _need(doc, "colors", list, pointer)
    edges = _need(doc, "edges", list, pointer)
    known_v = set(vertices)
    known_c = set(colors)
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 3):
            raise SchemaError("edge must be [color,u,v]", f"{pointer}/edges/{i}")
        if e[0] not in known_c:
            raise SchemaError(f"unknown colour {e[0]!r}", f"{pointer}/edges/{i}/0")
        if e[1] not in known_v:
            raise SchemaError(f"unknown vertex {e[1]!r}", f"{pointer}/edges/{i}/u")
        if e[2] not in known_v:
            raise SchemaError(f"unknown vertex {e[2]!r}", f"{pointer}/edges/{i}/v")
    return new_egraph(vertices, colors, [tuple(e) for e in edges])


def egroup_to_json(group):
    return {
        "format": "egroup",
        "colors": list(group.colors),
        "order": group.order,
        "action": {group.colors[c]: list(row) for c, row in enumerate(group.gen_action)},
    }


def egroup_from_json(doc, pointer=""):
    colors = _need(doc, "colors", list, pointer)
    order = _need(doc, "order", int, pointer)
    action_doc = _need(doc, "action", dict, pointer)
    action = []
    for c in colors:
        if c not in action_doc:
            raise SchemaError(f"missing action for colour {c!r}", f"{pointer}/action/{c}")
        row = action_doc[c]
        if not isinstance(row, list) or len(row) != order or sorted(row) != list(range(order)):
            raise SchemaError("action row is not a permutation", f"{pointer}/action/{c}")
        action.append(row)
    # rebuild witness links by breadth-first closure from the identity
    parents = [None] * order
    seen = {0}
    queue = [0]
    pos = 0
    while pos < len(queue):
        g = queue[pos]
        pos += 1
        for ci in range(len(colors)):
            h = action[ci][g]
            if h not in seen:
                seen.add(h)
                parents[h] = (g, ci)
                queue.append(h)
    if len(seen) != order:
        raise SchemaError("action tables do not generate all elements", f"{pointer}/action")
    return EGroup(colors, action, parents)


def pattern_to_json(pattern):
    return {
        "format": "pattern",
        "sites": list(pattern.sites),
        "edges": [
            {
                "id": pattern.edge_ids[e],
                "src": pattern.sites[pattern.src[e]],
                "tgt": pattern.sites[pattern.tgt[e]],
                "inv": pattern.edge_ids[pattern.inv[e]],
            }
            for e in range(pattern.n_edges)
        ],
    }


def pattern_from_json(doc, pointer=""):
    sites = _need(doc, "sites", list, pointer)
    edges_doc = _need(doc, "edges", list, pointer)
    edges = []
    for i, e in enumerate(edges_doc):
        p = f"{pointer}/edges/{i}"
        edges.append((_need(e, "id", str, p), _need(e, "src", None, p),
                      _need(e, "tgt", None, p), _need(e, "inv", str, p)))
    return ConstraintPattern(sites, edges)


def igraph_to_json(ig):
    return {
        "format": "igraph",
        "pattern": pattern_to_json(ig.pattern),
        "vertices": [str(v) for v in ig.vertex_names],
        "site_of": [ig.pattern.sites[s] for s in ig.site_of],
        "edges": {
            ig.pattern.edge_ids[e]: [[str(ig.vertex_names[u]), str(ig.vertex_names[v])]
                                     for u, v in ig.edges[e]]
            for e in range(ig.pattern.n_edges)
        },
    }


def igraph_from_json(doc, pointer=""):
    pattern = pattern_from_json(_need(doc, "pattern", dict, pointer), f"{pointer}/pattern")
    vertices = _need(doc, "vertices", list, pointer)
    site_names = _need(doc, "site_of", list, pointer)
    vidx = {v: i for i, v in enumerate(vertices)}
    try:
        site_of = [pattern.sites.index(s) for s in site_names]
    except ValueError:
        raise SchemaError("unknown site name", f"{pointer}/site_of") from None
    edges_doc = _need(doc, "edges", dict, pointer)
    edges = []
    for e in range(pattern.n_edges):
        eid = pattern.edge_ids[e]
        rows = edges_doc.get(eid, [])
        pairs = []
        for i, pair in enumerate(rows):
            if pair[0] not in vidx or pair[1] not in vidx:
                raise SchemaError("unknown vertex in edge", f"{pointer}/edges/{eid}/{i}")
            pairs.append((vidx[pair[0]], vidx[pair[1]]))
        edges.append(pairs)
    return IGraph(pattern, vertices, site_of, edges)


def igroupoid_to_json(gpd):
    doc = {
        "format": "igroupoid",
        "pattern": pattern_to_json(gpd.pattern),
        "order": gpd.order,
        "sorts": [[gpd.pattern.sites[s], gpd.pattern.sites[t]] for s, t in gpd.sorts],
        "neutrals": list(gpd.neutral),
        "generators": {gpd.pattern.edge_ids[e]: gpd.gen_elem[e]
                       for e in range(gpd.pattern.n_edges)},
        "rmul": {gpd.pattern.edge_ids[e]: list(gpd.rmul[e])
                 for e in range(gpd.pattern.n_edges)},
    }
    if gpd.order <= COMPOSITION_DUMP_LIMIT:
        table = []
        for a in range(gpd.order):
            for b in range(gpd.order):
                if gpd.target(a) == gpd.source(b):
                    table.append([a, b, gpd.compose(a, b)])
        doc["composition"] = table
    return doc


def igroupoid_from_json(doc, pointer=""):
    pattern = pattern_from_json(_need(doc, "pattern", dict, pointer), f"{pointer}/pattern")
    order = _need(doc, "order", int, pointer)
    sorts_doc = _need(doc, "sorts", list, pointer)
    try:
        sorts = [(pattern.sites.index(s), pattern.sites.index(t)) for s, t in sorts_doc]
    except ValueError:
        raise SchemaError("unknown site in sorts", f"{pointer}/sorts") from None
    neutral = _need(doc, "neutrals", list, pointer)
    gen_doc = _need(doc, "generators", dict, pointer)
    rmul_doc = _need(doc, "rmul", dict, pointer)
    rmul = []
    gen_elem = []
    for e in range(pattern.n_edges):
        eid = pattern.edge_ids[e]
        if eid not in rmul_doc:
            raise SchemaError(f"missing rmul for {eid!r}", f"{pointer}/rmul/{eid}")
        row = rmul_doc[eid]
        if len(row) != order:
            raise SchemaError("rmul row has wrong length", f"{pointer}/rmul/{eid}")
        rmul.append(row)
        gen_elem.append(gen_doc[eid])
    parents = [None] * order
    seen = set(neutral)
    queue = list(neutral)
    pos = 0
    while pos < len(queue):
        g = queue[pos]
        pos += 1
        for e in range(pattern.n_edges):
            h = rmul[e][g]
            if h != -1 and h not in seen:
                seen.add(h)
                parents[h] = (g, e)
                queue.append(h)
    if len(seen) != order:
        raise SchemaError("tables do not generate all elements", f"{pointer}/rmul")
    return IGroupoid(pattern, sorts, neutral, gen_elem, rmul, parents)


def hypergraph_to_json(hg):
    return {
        "format": "hypergraph",
        "vertices": [str(v) for v in hg.vertex_names],
        "hyperedges": [sorted(str(hg.vertex_names[v]) for v in he) for he in hg.hyperedges],
    }


def hypergraph_from_json(doc, pointer=""):
    vertices = _need(doc, "vertices", list, pointer)
    hyperedges = _need(doc, "hyperedges", list, pointer)
    known = set(vertices)
    for i, he in enumerate(hyperedges):
        for j, v in enumerate(he):
            if v not in known:
                raise SchemaError(f"unknown vertex {v!r}", f"{pointer}/hyperedges/{i}/{j}")
    return Hypergraph(vertices, hyperedges)


def graph_to_json(edges):
    vertices = sorted({str(x) for e in edges for x in e})
    return {
        "format": "graph",
        "vertices": vertices,
        "edges": [sorted([str(u), str(v)]) for u, v in sorted(map(sorted, edges))],
    }


def graph_from_json(doc, pointer=""):
    vertices = _need(doc, "vertices", list, pointer)
    edges = _need(doc, "edges", list, pointer)
    known = set(vertices)
    out = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2):
            raise SchemaError("edge must be [u,v]", f"{pointer}/edges/{i}")
        if e[0] not in known:
            raise SchemaError(f"unknown vertex {e[0]!r}", f"{pointer}/edges/{i}/u")
        if e[1] not in known:
            raise SchemaError(f"unknown vertex {e[1]!r}", f"{pointer}/edges/{i}/v")
        out.append((e[0], e[1]))
    return out


def covering_to_json(cov):
    doc = {
        "format": "covering",
        "kind": cov.kind,
        "projection": list(cov.projection),
        "group_digest": digest(egroup_to_json(cov.group)),
    }
    if cov.kind == "graph":
        doc["base"] = egraph_to_json(cov.base)
        doc["cover"] = egraph_to_json(cov.cover)
        doc["provenance"] = {"anchor": list(cov.provenance["anchor"])}
    else:
        doc["base"] = hypergraph_to_json(cov.base)
        doc["cover"] = hypergraph_to_json(cov.cover)
        doc["provenance"] = {
            "classes": [[list(t) for t in m] for m in cov.provenance["classes"]],
            "copy_tags": [list(t) for t in cov.provenance["copy_tags"]],
        }
    return doc


def cycle_to_json(group, entries):
    out = []
    for entry in entries:
        if len(entry) == 2:
            a, g = entry
            out.append({"alpha": sorted(group.colors[c] for c in a), "g": g})
        else:
            a, s, g = entry
            out.append({"alpha": sorted(group.colors[c] for c in a), "site": s, "g": g})
    return {"format": "coset_cycle", "entries": out}


def cycle_from_json(doc, group, pointer=""):
    entries = _need(doc, "entries", list, pointer)
    out = []
    for i, e in enumerate(entries):
        alpha = frozenset(group.color_index(c) for c in _need(e, "alpha", list, f"{pointer}/entries/{i}"))
        g = _need(e, "g", int, f"{pointer}/entries/{i}")
        if "site" in e:
            out.append((alpha, e["site"], g))
        else:
            out.append((alpha, g))
    return out


def reports_to_json(reports):
    return {"format": "stage_reports", "stages": [r.to_json() for r in reports]}


def manifest(command, config, inputs, outputs, reports=None, timings=None):
    """Reproducible run record; timings are only attached when asked for,
    keeping default manifests byte-identical across runs."""
    doc = {
        "format": "manifest",
        "tool": "acygroups",
        "version": TOOL_VERSION,
        "command": list(command),
        "config": config,
        "inputs": {k: v for k, v in sorted(inputs.items())},
        "outputs": {k: v for k, v in sorted(outputs.items())},
    }
    if reports is not None:
        doc["reports"] = reports
    if timings is not None:
        doc["timings"] = timings
    return doc


FORMATS = {
    "egraph": egraph_from_json,
    "egroup": egroup_from_json,
    "pattern": pattern_from_json,
    "igraph": igraph_from_json,
    "igroupoid": igroupoid_from_json,
    "hypergraph": hypergraph_from_json,
    "graph": graph_from_json,
}


def load_document(doc):
    fmt = _need(doc, "format", str, "")
    if fmt not in FORMATS:
        raise SchemaError(f"unknown format {fmt!r}", "/format")
    return FORMATS[fmt](doc)


_DOT_STYLES = ["solid", "dashed", "dotted", "bold"]
_DOT_COLORS = ["black", "red", "blue", "forestgreen", "orange", "purple", "brown", "cyan4"]


def _style(c):
    return (
        f'color="{_DOT_COLORS[c % len(_DOT_COLORS)]}",'
        f'style="{_DOT_STYLES[(c // len(_DOT_COLORS)) % len(_DOT_STYLES)]}"'
    )


def egraph_to_dot(g, tooltips=None):
    lines = ["graph {"]
    for v, name in enumerate(g.vertex_names):
        tip = f',tooltip="{tooltips[v]}"' if tooltips else ""
        lines.append(f'  v{v} [label="{name}"{tip}];')
    for c, u, v in g.all_edges():
        lines.append(f'  v{u} -- v{v} [label="{g.colors[c]}",{_style(c)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def amalgam_to_dot(am):
    tips = [";".join(f"{i}:{x}" for i, x in sorted(prov)) for prov in am.provenance]
    return egraph_to_dot(am.graph, tooltips=tips)


def igraph_to_dot(ig):
    lines = ["digraph {"]
    for v, name in enumerate(ig.vertex_names):
        site = ig.pattern.sites[ig.site_of[v]]
        lines.append(f'  v{v} [label="{name}@{site}"];')
    for e, einv in ig.pattern.pairs():
        for u, v in ig.edges[e]:
            lines.append(
                f'  v{u} -> v{v} [label="{ig.pattern.edge_ids[e]}",{_style(e)},dir=both,arrowtail=none];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def hypergraph_to_dot(hg):
    # Gaifman view with hyperedges as labelled cliques
    lines = ["graph {"]
    for v, name in enumerate(hg.vertex_names):
        lines.append(f'  v{v} [label="{name}"];')
    for i, he in enumerate(hg.hyperedges):
        members = sorted(he)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                lines.append(f'  v{members[a]} -- v{members[b]} [label="h{i}",{_style(i)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def object_to_dot(obj):
    if isinstance(obj, EGraph):
        return egraph_to_dot(obj)
    if isinstance(obj, Hypergraph):
        return hypergraph_to_dot(obj)
    if isinstance(obj, IGraph):
        return igraph_to_dot(obj)
    if isinstance(obj, Covering):
        return object_to_dot(obj.cover)
    raise SchemaError("object has no DOT form", "/")
