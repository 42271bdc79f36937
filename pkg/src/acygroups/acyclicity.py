"""Coset cycles, graded acyclicity, girth, minimal supports, cluster property.

A coset cycle of length n is a cyclic sequence of pointed cosets
(g_i * G[alpha_i], g_i) such that consecutive cosets share their link element
(connectivity) and the two intersection cosets pivoting at each point are
disjoint (separation).  A group is N-acyclic when no such cycle of length
2..N exists.  The searcher anchors g_0 at the identity, which loses no
generality because left translation preserves both conditions.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import PreconditionFailed, ResourceCap

DEFAULT_SEARCH_BUDGET = 2_000_000


class GammaFilter:
    """Family of admissible generator subsets for coset cycles.

    Either all subsets of size < k, or an explicit family.  Proper subsets
    only, unless full sets are explicitly allowed at call time.
    """

    def __init__(self, size_bound=None, family=None):
        if (size_bound is None) == (family is None):
            raise ValueError("give exactly one of size_bound / family")
        self.size_bound = size_bound
        self.family = None if family is None else [frozenset(a) for a in family]

    @classmethod
    def size(cls, k):
        return cls(size_bound=k)

    @classmethod
    def explicit(cls, family):
        return cls(family=family)

    def subsets(self, n_colors, allow_full=False):
        full = frozenset(range(n_colors))
        if self.family is not None:
            cands = self.family
        else:
            cands = all_subsets(n_colors, max_size=self.size_bound - 1)
        out = [a for a in cands if allow_full or a != full]
        return sorted(set(out), key=lambda a: (len(a), sorted(a)))


def all_subsets(n_colors, max_size=None):
    if max_size is None:
        max_size = n_colors
    out = []
    for mask in range(1 << n_colors):
        a = frozenset(i for i in range(n_colors) if mask >> i & 1)
        if len(a) <= max_size:
            out.append(a)
    return sorted(out, key=lambda a: (len(a), sorted(a)))


def proper_subsets(n_colors):
    return all_subsets(n_colors, max_size=max(n_colors - 1, 0))


class CosetCycle(NamedTuple):
    """Witness: cyclic (alpha, g) entries in rotation/reflection canonical form."""

    entries: tuple

    def __len__(self):
        return len(self.entries)

    def alphas(self):
        return [a for a, _ in self.entries]


def girth(cg):
    """Length of the shortest graph cycle of a Cayley graph, or math.inf.

    Cayley graphs are vertex transitive, so one breadth-first sweep from the
    identity vertex realises the girth.
    """
    graph = cg.graph if hasattr(cg, "graph") else cg
    n = graph.n
    if n == 0:
        return math.inf
    dist = [-1] * n
    par = [-1] * n
    dist[0] = 0
    queue = [0]
    pos = 0
    best = math.inf
    while pos < len(queue):
        u = queue[pos]
        pos += 1
        for row in graph.partner:
            w = row[u]
            if w == -1:
                continue
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                par[w] = u
                queue.append(w)
            elif w != par[u] and u != par[w]:
                best = min(best, dist[u] + dist[w] + 1)
    return best


def _separated(group, g, alpha_g, h, alpha_h):
    """True when g*G[alpha_g] and h*G[alpha_h] are disjoint."""
    ids_h, _ = group.coset_table(alpha_h)
    hid = ids_h[h]
    return all(ids_h[x] != hid for x in group.coset(g, alpha_g))


def validate_coset_cycle(group, entries):
    """Independent recheck of connectivity and separation from raw cosets."""
    n = len(entries)
    if n < 2:
        return False
    for i in range(n):
        a_i, g_i = entries[i]
        a_next, g_next = entries[(i + 1) % n]
        a_prev = entries[(i - 1) % n][0]
        if not group.same_coset(g_i, g_next, a_i):
            return False
        if not _separated(group, g_i, a_i & a_prev, g_next, a_i & a_next):
            return False
    return True


def canonical_cycle(group, entries):
    """Rotation/reflection canonical form, re-anchored at the identity."""
    n = len(entries)
    reversed_entries = [(entries[(-i - 1) % n][0], entries[(-i) % n][1]) for i in range(n)]
    best = None
    for seq in (list(entries), reversed_entries):
        for r in range(n):
            rot = seq[r:] + seq[:r]
            t = group.inverse(rot[0][1])
            ent = tuple((a, group.product(t, g)) for a, g in rot)
            key = tuple((tuple(sorted(a)), g) for a, g in ent)
            if best is None or key < best[0]:
                best = (key, ent)
    return CosetCycle(best[1])


def find_coset_cycle(group, n_max, gamma=None, allow_full=False, budget=None):
    """Shortest coset cycle of length <= n_max with subsets from the filter.

    Returns a canonical CosetCycle or None.  g_0 is fixed at the identity;
    chains extend depth first and every separation condition determined on
    the prefix prunes immediately.
    """
    budget = budget or DEFAULT_SEARCH_BUDGET
    n_colors = len(group.colors)
    if gamma is None:
        alphas = proper_subsets(n_colors)
    else:
        alphas = gamma.subsets(n_colors, allow_full=allow_full)
    nodes = 0

    def sep(g, ai, a_prev, g_next, a_next):
        return _separated(group, g, ai & a_prev, g_next, ai & a_next)

    def extend(a_seq, g_seq, target):
        nonlocal nodes
        m = len(a_seq) - 1
        if m == target - 1:
            if not group.same_coset(g_seq[m], 0, a_seq[m]):
                return None
            if not sep(g_seq[m], a_seq[m], a_seq[m - 1], 0, a_seq[0]):
                return None
            if not sep(0, a_seq[0], a_seq[m], g_seq[1], a_seq[1]):
                return None
            return list(zip(a_seq, g_seq))
        g = g_seq[m]
        for g_next in group.coset(g, a_seq[m]):
            if g_next == g:
                continue
            if m >= 1 and group.same_coset(g_next, g, a_seq[m] & a_seq[m - 1]):
                continue  # separation at m is then impossible for any next subset
            for a_next in alphas:
                nodes += 1
                if nodes > budget:
                    raise ResourceCap(f"coset-cycle search budget {budget} exceeded")
                if m >= 1 and not sep(g, a_seq[m], a_seq[m - 1], g_next, a_next):
                    continue
                res = extend(a_seq + [a_next], g_seq + [g_next], target)
                if res is not None:
                    return res
        return None

    for target in range(2, n_max + 1):
        for a0 in alphas:
            res = extend([a0], [0], target)
            if res is not None:
                cyc = canonical_cycle(group, res)
                assert validate_coset_cycle(group, cyc.entries)
                return cyc
    return None


def is_n_acyclic(group, n_max, gamma=None, allow_full=False, budget=None):
    """No coset cycles of lengths 2..n_max with subsets from the filter."""
    return find_coset_cycle(group, n_max, gamma=gamma, allow_full=allow_full, budget=budget) is None


def is_two_acyclic(group):
    """Intersection criterion: G[a] meet G[b] = G[a & b] for proper a, b."""
    n_colors = len(group.colors)
    subs = {a: set(group.subgroup_elements(a)) for a in proper_subsets(n_colors)}
    for a1 in subs:
        for a2 in subs:
            if subs[a1] & subs[a2] != set(group.subgroup_elements(a1 & a2)):
                return False
    return True


class Support(NamedTuple):
    support: frozenset
    verified: bool


def minimal_support(group, g, assume_two_acyclic=False):
    """The unique minimal generator set whose subgroup contains g.

    Needs 2-acyclicity; when assumed rather than verified the result is
    flagged unverified.
    """
    verified = True
    if not assume_two_acyclic:
        if not is_two_acyclic(group):
            raise PreconditionFailed("group is not 2-acyclic")
    else:
        verified = False
    n_colors = len(group.colors)
    inter = frozenset(range(n_colors))
    for a in all_subsets(n_colors):
        if g in group.subgroup_elements(a):
            inter &= a
    return Support(inter, verified)


def coset_support(group, alpha, g, assume_three_acyclic=False):
    """Minimal generator set whose subgroup meets the alpha-coset of g."""
    verified = True
    if not assume_three_acyclic:
        if not is_n_acyclic(group, 3):
            raise PreconditionFailed("group is not 3-acyclic")
    else:
        verified = False
    inter = frozenset(range(len(group.colors)))
    for h in group.coset(g, alpha):
        inter &= minimal_support(group, h, assume_two_acyclic=True).support
    return Support(inter, verified)


def has_cluster_property(group, max_constituents=3):
    """Bounded check of the cluster property over amalgamation clusters.

    For every cluster of up to max_constituents nonempty proper generator
    subsets and every proper beta, each beta-connected component must contain
    an element realising the component's minimal support, and must be
    isomorphic to the cluster of the beta-reducts of its contributing
    constituents.  Requires (and checks) 2-acyclicity of all proper
    subgroups.
    """
    from itertools import combinations

    from . import amalgam as am
    from .canon import canonical_form
    from .groups import subgroup

    n_colors = len(group.colors)
    for a in proper_subsets(n_colors):
        if not is_two_acyclic(subgroup(group, a)):
            raise PreconditionFailed(
                f"subgroup for {sorted(group.colors[i] for i in a)} is not 2-acyclic"
            )
    family = [a for a in proper_subsets(n_colors) if a]
    for size in range(1, max_constituents + 1):
        for alphas in combinations(family, size):
            cluster = am.amalgam_cluster(group, list(alphas))
            for beta in proper_subsets(n_colors):
                if not _cluster_components_ok(group, cluster, beta, am, canonical_form):
                    return False
    return True


def _cluster_components_ok(group, cluster, beta, am, canonical_form):
    for comp in am.component_vertex_sets(cluster.graph, beta):
        elems = {v: min(cluster.provenance[v])[1] for v in comp}
        supports = {
            v: minimal_support(group, elems[v], assume_two_acyclic=True).support
            for v in comp
        }
        alpha_b = frozenset.intersection(*supports.values())
        if not any(s == alpha_b for s in supports.values()):
            return False
        touching = {ci for v in comp for ci, _ in cluster.provenance[v]}
        m_b = [ci for ci in sorted(touching) if beta & cluster.constituents[ci][0]]
        if not m_b:
            if len(comp) != 1:
                return False
            continue
        predicted = am.amalgam_cluster(
            group, [beta & cluster.constituents[ci][0] for ci in m_b]
        )
        actual = am.induced_subgraph(cluster.graph, sorted(comp), beta)
        if canonical_form(predicted.graph) != canonical_form(actual):
            return False
    return True
