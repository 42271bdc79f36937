"""Canonical labelling and isomorphism for edge-coloured matching graphs.

Because every colour class has degree <= 1, a breadth-first traversal from a
fixed start vertex visits a connected graph deterministically: each (vertex,
colour) pair has at most one continuation.  The canonical code of a component
is therefore the minimum traversal code over all start vertices, which is
cheap at the component sizes this library works with.
"""

from __future__ import annotations

from .egraph import NO_EDGE


def connected_components(g):
    """Vertex lists of the connected components, in first-vertex order."""
    seen = [False] * g.n
    comps = []
    for v0 in range(g.n):
        if seen[v0]:
            continue
        comp = [v0]
        seen[v0] = True
        pos = 0
        while pos < len(comp):
            u = comp[pos]
            pos += 1
            for row in g.partner:
                w = row[u]
                if w != NO_EDGE and not seen[w]:
                    seen[w] = True
                    comp.append(w)
        comps.append(comp)
    return comps


def _traversal_code(g, start, members):
    """Deterministic BFS code from start; also returns the discovery order."""
    disc = {start: 0}
    order = [start]
    code = []
    pos = 0
    while pos < len(order):
        u = order[pos]
        pos += 1
        for row in g.partner:
            w = row[u]
            if w == NO_EDGE:
                code.append(-2)
            elif w == u:
                code.append(-1)
            else:
                if w not in disc:
                    disc[w] = len(order)
                    order.append(w)
                code.append(disc[w])
    # isolated-from-start vertices of the same "component" cannot occur:
    # members is a connected component and start is in it.
    assert len(order) == len(members)
    return tuple(code), order


def canonical_component(g, members):
    """(code, labelling) for one connected component; labelling maps old->canonical."""
    best = None
    best_order = None
    for start in members:
        code, order = _traversal_code(g, start, members)
        if best is None or code < best:
            best = code
            best_order = order
    labelling = {v: i for i, v in enumerate(best_order)}
    return (len(members),) + best, labelling


def canonical_form(g):
    """Hashable canonical form; equal iff the graphs are colour-isomorphic.

    Assumes the two graphs share a colour registry (colour names are part of
    the form).
    """
    comps = connected_components(g)
    codes = sorted(canonical_component(g, comp)[0] for comp in comps)
    return (g.colors, g.n, tuple(codes))


def find_isomorphism(g1, g2):
    """A colour-preserving isomorphism g1 -> g2 as a vertex map, or None."""
    if g1.colors != g2.colors or g1.n != g2.n:
        return None
    comps1 = connected_components(g1)
    comps2 = connected_components(g2)
    if sorted(map(len, comps1)) != sorted(map(len, comps2)):
        return None
    coded1 = sorted((canonical_component(g1, c) for c in comps1), key=lambda t: t[0])
    coded2 = sorted((canonical_component(g2, c) for c in comps2), key=lambda t: t[0])
    mapping = [None] * g1.n
    for (code1, lab1), (code2, lab2) in zip(coded1, coded2):
        if code1 != code2:
            return None
        inv2 = {i: v for v, i in lab2.items()}
        for v, i in lab1.items():
            mapping[v] = inv2[i]
    return mapping


def isomorphic(g1, g2):
    return find_isomorphism(g1, g2) is not None


def brute_force_isomorphic(g1, g2):
    """Backtracking isomorphism search; test oracle for small graphs."""
    if g1.colors != g2.colors or g1.n != g2.n:
        return False
    profiles2 = {}
    for v in range(g2.n):
        profiles2.setdefault(g2.degree_profile(v), []).append(v)
    mapping = {}
    used = set()

    def edges_ok(u, mu):
        for c in range(len(g1.colors)):
            w = g1.partner[c][u]
            mw = g2.partner[c][mu]
            if w == NO_EDGE:
                if mw != NO_EDGE:
                    return False
            elif w == u:
                if mw != mu:
                    return False
            elif w in mapping:
                if mw != mapping[w]:
                    return False
            elif mw == NO_EDGE or mw == mu or mw in used:
                return False
        return True

    def extend(u):
        if u == g1.n:
            return True
        for mu in profiles2.get(g1.degree_profile(u), []):
            if mu in used or not edges_ok(u, mu):
                continue
            mapping[u] = mu
            used.add(mu)
            if extend(u + 1):
                return True
            del mapping[u]
            used.remove(mu)
        return False

    return extend(0)


def verify_isomorphism(g1, g2, mapping):
    """Check that mapping is a colour-preserving isomorphism g1 -> g2."""
    if mapping is None or len(mapping) != g1.n or set(mapping) != set(range(g2.n)):
        return False
    for c in range(len(g1.colors)):
        for v in range(g1.n):
            w = g1.partner[c][v]
            mw = g2.partner[c][mapping[v]]
            if w == NO_EDGE:
                if mw != NO_EDGE:
                    return False
            elif mw != mapping[w]:
                return False
    return True
