"""Inductive construction of groups with graded coset acyclicity.

The tower runs one stage per generator-count level k.  Each stage takes the
disjoint union of the current Cayley graph with every free amalgamation
chain over the subsets of size at most k (and, when a reachability template
is in play, every amalgamation cluster and every small coset amalgam of an
embedded skeleton), deduplicated up to colour isomorphism, and passes to
the group generated by that union's matchings.  Nothing the tower claims is
assumed: conservation, acyclicity and freeness are re-verified per stage
and the final group is re-checked by the independent searchers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product

from .acyclicity import GammaFilter, all_subsets, find_coset_cycle
from .amalgam import amalgam_chain, amalgam_cluster
from .canon import canonical_form
from .constraint import IContext, find_i_coset_cycle, is_free_over, small_coset_amalgam
from .errors import CompatibilityRequired, ResourceCap
from .groups import DEFAULT_ELEMENT_CAP, cayley_graph, homomorphism, is_compatible, sym_components


@dataclass(frozen=True)
class SynthesisConfig:
    n_acyclic: int = 2
    element_cap: int = DEFAULT_ELEMENT_CAP
    chain_length: int | None = None  # defaults to max(1, N - 2)
    dedupe: bool = True
    max_components: int = 20_000
    stage_timeout: float | None = None
    search_budget: int = 2_000_000
    early_exit: bool = False

    def __post_init__(self):
        if self.n_acyclic < 2:
            raise ValueError("target acyclicity must be at least 2")
        if self.element_cap <= 0 or self.max_components <= 0:
            raise ValueError("caps must be positive")

    @property
    def chains_up_to(self):
        if self.chain_length is not None:
            return self.chain_length
        return max(1, self.n_acyclic - 2)


@dataclass
class StageReport:
    stage: int
    inventory: dict
    order: int
    conservation: dict
    conservation_ok: bool
    acyclic_checked_to: int
    acyclic_ok: bool
    free_ok: bool | None = None
    final_checks: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "stage": self.stage,
            "inventory": {k: v for k, v in sorted(self.inventory.items())},
            "order": self.order,
            "conservation": {k: list(v) for k, v in sorted(self.conservation.items())},
            "conservation_ok": self.conservation_ok,
            "acyclic_checked_to": self.acyclic_checked_to,
            "acyclic_ok": self.acyclic_ok,
            "free_ok": self.free_ok,
            "final_checks": self.final_checks,
            "notes": list(self.notes),
        }


class _Deduper:
    """Canonical-form keyed store of stage components with an inventory."""

    def __init__(self, enabled, max_components):
        self.enabled = enabled
        self.max_components = max_components
        self.seen = set()
        self.components = []
        self.inventory = {}

    def add(self, kind, graph, keyed=True):
        # the Cayley-graph component is unique and vertex transitive; keying
        # it would cost a quadratic canonical labelling for nothing
        key = canonical_form(graph) if self.enabled and keyed else None
        label = f"{kind}[{graph.n}v]"
        self.inventory[label] = self.inventory.get(label, 0) + 1
        if key is not None and key in self.seen:
            return
        if key is not None:
            self.seen.add(key)
        self.components.append(graph)
        if len(self.components) > self.max_components:
            raise ResourceCap(f"component cap {self.max_components} exceeded")


def _enumerate_chains(group, subsets, max_len, dedupe):
    """Deduplicated free amalgamation chains with constituents from subsets."""
    store = []
    seen = set()
    for length in range(1, max_len + 1):
        for alphas in product(subsets, repeat=length):
            pointings = []
            for i, a in enumerate(alphas):
                if i < length - 1:
                    pointings.append(group.subgroup_elements(a))
                else:
                    pointings.append((0,))
            for gs in product(*pointings):
                am = amalgam_chain(group, list(zip(alphas, gs)))
                if am is None:
                    continue
                key = canonical_form(am.graph)
                if dedupe and key in seen:
                    continue
                seen.add(key)
                store.append(am.graph)
    return store


def stage_graph(group, k, mode="plain", igraph=None, config=None, ctx=None):
    """Components of the stage graph for level k, with an inventory.

    Always contains the Cayley graph; chains (and clusters plus skeleton
    extensions in template mode) over the subsets of size <= k join it,
    deduplicated up to colour isomorphism.
    """
    config = config or SynthesisConfig()
    dedupe = _Deduper(config.dedupe, config.max_components)
    dedupe.add("cayley", cayley_graph(group).graph, keyed=False)
    gamma = [a for a in all_subsets(len(group.colors), max_size=k) if a]
    for graph in _enumerate_chains(group, gamma, config.chains_up_to, config.dedupe):
        dedupe.add("chain", graph)
    if mode == "over":
        for size in range(2, len(gamma) + 1):
            for alphas in combinations(gamma, size):
                cluster = amalgam_cluster(group, list(alphas))
                dedupe.add("cluster", cluster.graph)
        ctx = ctx or IContext(group, igraph)
        for a in gamma:
            for s in range(igraph.n):
                skel = ctx.skeleton(a, s)
                ce = small_coset_amalgam(
                    skel, group, a, igraph, ctx=ctx, verify_preconditions=False
                )
                dedupe.add("extension", ce.graph)
    return dedupe.components, dedupe.inventory


def _combined_group(group, extra_components, colors, cap):
    """sym of (Cayley graph of group) + extras, with the regular part keyed
    by group elements rather than permutations."""
    parts = [("tables", group.gen_action)]
    for comp in extra_components:
        from .egraph import trivial_completion

        bar = trivial_completion(comp)
        gens = [tuple(row) for row in bar.partner]
        parts.append(("perms", gens))
    return sym_components(colors, parts, cap=cap)


def _conservation(prev, new, k):
    """Subgroup order tables for |alpha| <= k plus injectivity of the
    restriction of the canonical homomorphism."""
    hom = homomorphism(new, prev)
    table = {}
    ok = hom is not None
    for a in all_subsets(len(prev.colors), max_size=k):
        before = len(prev.subgroup_elements(a))
        after = len(new.subgroup_elements(a))
        iso = False
        if hom is not None:
            image = {hom[x] for x in new.subgroup_elements(a)}
            iso = len(image) == after == before
        key = ",".join(prev.colors[i] for i in sorted(a)) or "-"
        table[key] = (before, after, iso)
        ok = ok and iso
    return table, ok


def _stage_verify(new, k, config, mode, igraph, ctx):
    gamma = GammaFilter.size(k + 1)
    cyc = find_coset_cycle(new, config.n_acyclic, gamma=gamma, budget=config.search_budget)
    acyclic_ok = cyc is None
    free_ok = None
    if mode == "over":
        alphas = [a for a in all_subsets(len(new.colors), max_size=k) ]
        free_ok = is_free_over(new, igraph, alphas=alphas, ctx=ctx)
    return acyclic_ok, free_ok


def _final_verify(group, config, mode, igraph):
    checks = {}
    checks["n_acyclic"] = (
        find_coset_cycle(group, config.n_acyclic, budget=config.search_budget) is None
    )
    if mode == "over":
        ctx = IContext(group, igraph)
        checks["free_over"] = is_free_over(group, igraph, ctx=ctx)
        checks["n_acyclic_over"] = (
            find_i_coset_cycle(group, igraph, config.n_acyclic, ctx=ctx, budget=config.search_budget)
            is None
        )
    return checks


def _construct(group0, config, mode, igraph):
    reports = []
    current = group0
    n_colors = len(group0.colors)
    deadline = None
    for k in range(n_colors):
        if config.stage_timeout is not None:
            deadline = time.monotonic() + config.stage_timeout
        ctx = IContext(current, igraph) if mode == "over" else None
        components, inventory = stage_graph(
            current, k, mode=mode, igraph=igraph, config=config, ctx=ctx
        )
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceCap(
                f"stage {k} timed out", partial=current, stage_reports=reports
            )
        try:
            new = _combined_group(current, components[1:], current.colors, config.element_cap)
        except ResourceCap as exc:
            exc.partial = current
            exc.stage_reports = reports
            raise
        table, cons_ok = _conservation(current, new, k)
        ctx_new = IContext(new, igraph) if mode == "over" else None
        acyclic_ok, free_ok = _stage_verify(new, k, config, mode, igraph, ctx_new)
        report = StageReport(
            stage=k,
            inventory=inventory,
            order=new.order,
            conservation=table,
            conservation_ok=cons_ok,
            acyclic_checked_to=config.n_acyclic,
            acyclic_ok=acyclic_ok,
            free_ok=free_ok,
        )
        reports.append(report)
        current = new
        if config.early_exit:
            final = _final_verify(current, config, mode, igraph)
            if all(final.values()):
                report.notes.append("early exit: final properties already verified")
                break
    final = _final_verify(current, config, mode, igraph)
    if reports:
        reports[-1].final_checks = dict(final)
        if not all(final.values()):
            reports[-1].notes.append("final verification FAILED")
    return current, reports, final


def construct_n_acyclic(group0, config=None):
    """Tower of stage groups ending in a verified N-acyclic extension.

    Returns (group, stage reports).  The result is never declared acyclic: it
    is re-verified by the exhaustive searcher, and the reports carry the
    verified conservation data per stage.
    """
    config = config or SynthesisConfig()
    group, reports, final = _construct(group0, config, "plain", None)
    return group, reports


def construct_n_acyclic_over(group0, igraph, config=None):
    """Template variant: the tower also maintains freeness over the template.

    The starting group must be compatible with the template.  The final group
    is re-verified to be free over the template and without template coset
    cycles up to the target length.
    """
    config = config or SynthesisConfig()
    if tuple(igraph.colors) != group0.colors:
        raise CompatibilityRequired("template and group must share a colour registry")
    if not is_compatible(group0, igraph):
        raise CompatibilityRequired("starting group is not compatible with the template")
    group, reports, final = _construct(group0, config, "over", igraph)
    return group, reports
