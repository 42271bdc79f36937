import pytest

from acygroups.amalgam import (
    FailureWitness,
    amalgam_chain,
    amalgam_cluster,
    beta_components,
    embed_into_cayley,
    free_amalgam,
    rebuild_renamed,
)
from acygroups.canon import canonical_form
from acygroups.egraph import rename
from acygroups.errors import PreconditionFailed
from acygroups.groups import evaluate_word

from conftest import biggs_group, hypercube_group, s3_three_generators


def test_free_amalgam_disjoint_overlap_glues_identity():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0], [1])
    assert am.graph.n == 3  # two edges wedged at the identity
    assert len(am.graph.all_edges()) == 2


def test_free_amalgam_full_overlap_is_single_copy():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [0, 1])
    assert am.graph.n == 4 and len(am.graph.all_edges()) == 4


def test_free_amalgam_two_squares_share_an_edge():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [1, 2])
    assert am.graph.n == 6
    assert len(am.graph.all_edges()) == 7
    assert am.graph.strict


def test_amalgam_embedding_injective_on_two_acyclic():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [1, 2])
    images = embed_into_cayley(am, h3)
    assert not isinstance(images, FailureWitness)
    assert len(set(images)) == am.graph.n


def test_amalgam_embedding_fails_on_triangle_group():
    g = s3_three_generators()
    am = free_amalgam(g, [0, 1], [0, 2])
    assert am.graph.n == 10  # 6 + 6 - |G[{a}]|
    witness = embed_into_cayley(am, g)
    assert isinstance(witness, FailureWitness)


def test_chain_single_item_is_subgroup_cayley_graph():
    s3 = biggs_group(["a", "b"], 1)
    am = amalgam_chain(s3, [([0, 1], 0)])
    assert am.graph.n == 6


def test_chain_alternating_path():
    s3 = biggs_group(["a", "b"], 1)
    pa = evaluate_word(s3, ["a"])
    pb = evaluate_word(s3, ["b"])
    am = amalgam_chain(s3, [([0], pa), ([1], pb), ([0], pa), ([1], pb)])
    assert am is not None
    assert am.graph.n == 5
    assert len(am.graph.all_edges()) == 4


def test_chain_undefined_on_interfering_overlaps():
    s3 = biggs_group(["a", "b"], 1)
    pa = evaluate_word(s3, ["a"])
    # equal consecutive singleton colours make the middle overlap total
    assert amalgam_chain(s3, [([0], pa), ([0], pa), ([1], 0)]) is None
    # alternating colours with an identity interior point also interfere
    assert amalgam_chain(s3, [([0], pa), ([1], 0), ([0], pa)]) is None
    # with a non-identity interior point the chain is defined
    pb = evaluate_word(s3, ["b"])
    assert amalgam_chain(s3, [([0], pa), ([1], pb), ([0], pa)]) is not None


def test_chain_point_outside_subgroup_rejected():
    s3 = biggs_group(["a", "b"], 1)
    pb = evaluate_word(s3, ["b"])
    with pytest.raises(PreconditionFailed):
        amalgam_chain(s3, [([0], pb), ([1], 0)])


def test_chain_embedding_injective_within_acyclicity_bound():
    s3 = biggs_group(["a", "b"], 1)
    pa = evaluate_word(s3, ["a"])
    pb = evaluate_word(s3, ["b"])
    am = amalgam_chain(s3, [([0], pa), ([1], pb), ([0], pa), ([1], pb)])
    images = embed_into_cayley(am, s3)
    assert not isinstance(images, FailureWitness)


def test_chain_separators():
    # removing an overlap coset disconnects the two sides of the chain
    s3 = biggs_group(["a", "b"], 1)
    pa = evaluate_word(s3, ["a"])
    pb = evaluate_word(s3, ["b"])
    am = amalgam_chain(s3, [([0], pa), ([1], pb), ([0], pa)])
    overlap = {v for v, prov in enumerate(am.provenance) if len(prov) > 1}
    # the middle constituent's two overlap vertices separate the chain
    mid = sorted(overlap)[0]
    reach = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for row in am.graph.partner:
            w = row[u]
            if w >= 0 and w != mid and w not in reach:
                reach.add(w)
                frontier.append(w)
    assert len(reach) < am.graph.n - 1


def test_cluster_single_constituent():
    h3 = hypercube_group(["a", "b", "c"])
    am = amalgam_cluster(h3, [[0, 1]])
    assert am.graph.n == 4


def test_cluster_three_squares():
    h3 = hypercube_group(["a", "b", "c"])
    am = amalgam_cluster(h3, [[0, 1], [1, 2], [0, 2]])
    assert am.graph.n == 7
    assert len(am.graph.all_edges()) == 9
    images = embed_into_cayley(am, h3)
    assert not isinstance(images, FailureWitness)


def test_cluster_disjoint_constituents_wedge():
    h3 = hypercube_group(["a", "b", "c"])
    am = amalgam_cluster(h3, [[0], [1], [2]])
    assert am.graph.n == 4  # wedge of three edges at the identity


def test_cluster_requires_two_acyclic_constituents():
    from acygroups.egraph import new_egraph
    from acygroups.groups import sym

    g = sym(
        new_egraph([0, 1, 2, 3, 4], ["a", "b", "c", "d"],
                   [("a", 0, 1), ("b", 1, 2), ("c", 0, 2), ("d", 3, 4)]),
        attach_hypercube=False,
    )
    with pytest.raises(PreconditionFailed):
        amalgam_cluster(g, [[0, 1, 2], [3]])


def test_isomorphism_invariance_under_renaming():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [1, 2])
    renamed = rebuild_renamed(am, {"a": "b", "b": "c", "c": "a"})
    assert canonical_form(rename(am.graph, {"a": "b", "b": "c", "c": "a"})) == canonical_form(
        renamed.graph
    )


def test_beta_components_binary():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [1, 2])
    # beta = {b}: single b-edges
    comps = beta_components(am, [1])
    assert all(cls.ok for cls in comps)
    # beta = alpha_1 reproduces the first constituent
    comps_ab = beta_components(am, [0, 1])
    assert all(cls.ok for cls in comps_ab)
    kinds = {cls.kind for cls in comps_ab}
    assert "single" in kinds or "amalgam" in kinds


def test_beta_components_disjoint_beta_gives_singletons():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0], [1])
    comps = beta_components(am, [2])
    assert all(cls.ok and cls.kind in ("single", "amalgam") for cls in comps)


def test_beta_components_chain():
    s3 = biggs_group(["a", "b"], 1)
    pa = evaluate_word(s3, ["a"])
    pb = evaluate_word(s3, ["b"])
    am = amalgam_chain(s3, [([0], pa), ([1], pb), ([0], pa)])
    for beta in ([0], [1]):
        comps = beta_components(am, beta)
        assert all(cls.ok for cls in comps)


def test_beta_components_cluster():
    h3 = hypercube_group(["a", "b", "c"])
    am = amalgam_cluster(h3, [[0, 1], [1, 2], [0, 2]])
    for beta in ([0], [0, 1]):
        comps = beta_components(am, beta)
        assert all(cls.ok for cls in comps)


def test_beta_components_of_two_squares_are_b_edges():
    h3 = hypercube_group(["a", "b", "c"])
    am = free_amalgam(h3, [0, 1], [1, 2])
    comps = beta_components(am, [1])
    assert len(comps) == 3  # 6 vertices in single b-edges
    for cls in comps:
        assert cls.ok
        assert cls.kind in ("single", "amalgam")
