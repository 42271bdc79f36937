import pytest

from acygroups.acyclicity import girth, is_n_acyclic
from acygroups.canon import canonical_form
from acygroups.constraint import is_free_over, is_n_acyclic_over
from acygroups.egraph import disjoint_union, hypercube, new_egraph
from acygroups.errors import CompatibilityRequired, ResourceCap
from acygroups.groups import cayley_graph, homomorphism, is_group_symmetry, sym
from acygroups.synthesis import (
    SynthesisConfig,
    construct_n_acyclic,
    construct_n_acyclic_over,
    stage_graph,
)

from conftest import hypercube_group


def path_igraph(colors_seq, all_colors):
    n = len(colors_seq) + 1
    return new_egraph(
        [f"s{i}" for i in range(n)],
        sorted(all_colors),
        [(c, f"s{i}", f"s{i+1}") for i, c in enumerate(colors_seq)],
    )


def test_single_color_is_vacuously_acyclic():
    z2 = hypercube_group(["a"])
    result, reports = construct_n_acyclic(z2, SynthesisConfig(n_acyclic=4))
    assert result.order == 2
    assert is_n_acyclic(result, 4)


def test_stage_zero_graph_is_cayley_only():
    h2 = hypercube_group(["a", "b"])
    comps, inventory = stage_graph(h2, 0)
    assert len(comps) == 1
    assert list(inventory) == ["cayley[4v]"]


def test_stage_one_chain_inventory():
    h2 = hypercube_group(["a", "b"])
    comps, inventory = stage_graph(h2, 1, config=SynthesisConfig(n_acyclic=4))
    # chains over singletons of length <= 2 dedupe to: single a-edge, single
    # b-edge, and the two-edge alternating path (plus the Cayley graph)
    keys = {canonical_form(c) for c in comps}
    assert len(comps) == len(keys)
    shapes = sorted(c.n for c in comps)
    assert shapes == [2, 2, 3, 4]


def test_dedupe_soundness():
    h2 = hypercube_group(["a", "b"])
    comps, _ = stage_graph(h2, 1, config=SynthesisConfig(n_acyclic=4, dedupe=True))
    dup, _ = stage_graph(h2, 1, config=SynthesisConfig(n_acyclic=4, dedupe=False))
    g1 = sym(disjoint_union(comps), attach_hypercube=False)
    g2 = sym(disjoint_union(dup), attach_hypercube=False)
    assert g1.order == g2.order


def test_full_plain_synthesis_two_colors():
    h2 = hypercube_group(["a", "b"])
    cfg = SynthesisConfig(n_acyclic=4)
    result, reports = construct_n_acyclic(h2, cfg)
    assert len(reports) == 2
    for rep in reports:
        assert rep.conservation_ok
        assert rep.acyclic_ok
    assert is_n_acyclic(result, 4)
    assert girth(cayley_graph(result)) > 4
    assert is_group_symmetry(result, {"a": "b", "b": "a"})
    # monotone tower: every stage admits a homomorphism to its predecessor
    assert homomorphism(result, h2) is not None


def test_plain_synthesis_strictly_unfolds():
    # the four-group has a 4-cycle; its 4-acyclic extension must be bigger
    h2 = hypercube_group(["a", "b"])
    assert not is_n_acyclic(h2, 4)
    result, _ = construct_n_acyclic(h2, SynthesisConfig(n_acyclic=4))
    assert result.order > h2.order


def test_resource_cap_propagates_partial():
    h2 = hypercube_group(["a", "b"])
    with pytest.raises(ResourceCap) as info:
        construct_n_acyclic(h2, SynthesisConfig(n_acyclic=6, element_cap=5))
    assert info.value.partial is not None


def test_over_template_requires_compatibility():
    ig = path_igraph("ab", "ab")
    h2 = hypercube_group(["a", "b"])
    with pytest.raises(CompatibilityRequired):
        construct_n_acyclic_over(h2, ig, SynthesisConfig(n_acyclic=2))


def test_over_template_synthesis_path():
    ig = path_igraph("ab", "ab")
    g0 = sym(disjoint_union([ig, hypercube(ig.colors)]), attach_hypercube=False)
    cfg = SynthesisConfig(n_acyclic=2)
    result, reports = construct_n_acyclic_over(g0, ig, cfg)
    assert all(rep.conservation_ok for rep in reports)
    assert is_free_over(result, ig)
    assert is_n_acyclic_over(result, ig, 2)
    assert homomorphism(result, g0) is not None


def test_over_trivial_template_matches_plain():
    from acygroups.constraint import trivial_constraint_graph

    h2 = hypercube_group(["a", "b"])
    trivial = trivial_constraint_graph(h2.colors)
    cfg = SynthesisConfig(n_acyclic=3)
    over, _ = construct_n_acyclic_over(h2, trivial, cfg)
    plain, _ = construct_n_acyclic(h2, cfg)
    assert is_n_acyclic(over, 3) and is_n_acyclic(plain, 3)


def test_symmetry_preserved_over_template():
    # the two-edge path template is symmetric under swapping its colours
    # composed with reversing the path, which fixes the graph up to iso
    ig = path_igraph("ab", "ab")
    from acygroups.egraph import is_symmetry

    rho = {"a": "b", "b": "a"}
    assert is_symmetry(ig, rho)
    g0 = sym(disjoint_union([ig, hypercube(ig.colors)]), attach_hypercube=False)
    assert is_group_symmetry(g0, rho)
    result, _ = construct_n_acyclic_over(g0, ig, SynthesisConfig(n_acyclic=2))
    assert is_group_symmetry(result, rho)


def test_longer_chain_synthesis_two_colors():
    # N = 6 exercises chains of length up to 4; with two colours the result
    # is a long-girth dihedral group (observed order 120, pinned as derived)
    h2 = hypercube_group(["a", "b"])
    result, _ = construct_n_acyclic(h2, SynthesisConfig(n_acyclic=6))
    assert is_n_acyclic(result, 6)
    assert girth(cayley_graph(result)) > 6
    assert result.order == 120


def test_three_color_tower_from_non_acyclic_seed():
    # the three-transposition triangle group is not even 2-acyclic; the
    # tower unfolds it through all three stages (observed 6 -> 24 -> 648)
    from acygroups.acyclicity import is_two_acyclic

    seed = sym(new_egraph([0, 1, 2], ["a", "b", "c"],
                          [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)]),
               attach_hypercube=False)
    assert not is_two_acyclic(seed)
    result, reports = construct_n_acyclic(seed, SynthesisConfig(n_acyclic=3))
    assert [r.order for r in reports] == [6, 24, 648]
    assert all(r.conservation_ok for r in reports)
    assert is_n_acyclic(result, 3)


def test_already_acyclic_seed_is_conserved():
    h3 = hypercube_group(["a", "b", "c"])
    result, reports = construct_n_acyclic(h3, SynthesisConfig(n_acyclic=3))
    assert result.order == 8
    assert is_n_acyclic(result, 3)
    assert is_group_symmetry(result, {"a": "b", "b": "c", "c": "a"})


def test_final_checks_recorded_on_last_report():
    h2 = hypercube_group(["a", "b"])
    _, reports = construct_n_acyclic(h2, SynthesisConfig(n_acyclic=4))
    assert reports[-1].final_checks == {"n_acyclic": True}
    ig = path_igraph("ab", "ab")
    from acygroups.egraph import disjoint_union, hypercube as cube

    g0 = sym(disjoint_union([ig, cube(ig.colors)]), attach_hypercube=False)
    _, over_reports = construct_n_acyclic_over(g0, ig, SynthesisConfig(n_acyclic=2))
    assert over_reports[-1].final_checks == {
        "n_acyclic": True, "free_over": True, "n_acyclic_over": True,
    }
