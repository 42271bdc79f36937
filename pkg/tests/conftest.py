import pytest

from acygroups.egraph import biggs_tree, hypercube, new_egraph
from acygroups.groups import sym


def biggs_group(colors, depth):
    return sym(biggs_tree(colors, depth), attach_hypercube=False)


def hypercube_group(colors):
    return sym(hypercube(colors), attach_hypercube=False)


def s3_three_generators():
    # three transpositions of a triangle, one colour each
    g = new_egraph([0, 1, 2], ["a", "b", "c"], [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)])
    return sym(g, attach_hypercube=False)


def cycle_graph(n, colors=("a", "b")):
    # n-cycle with alternating colours; n must be even
    edges = [(colors[i % 2], i, (i + 1) % n) for i in range(n)]
    return new_egraph(list(range(n)), list(colors), edges)


def path_graph(color_seq):
    # path with the given colour sequence along its edges
    n = len(color_seq) + 1
    colors = sorted(set(color_seq))
    edges = [(c, i, i + 1) for i, c in enumerate(color_seq)]
    return new_egraph(list(range(n)), colors, edges)


def corpus():
    """Named small groups (orders <= 48) used across the test suite."""
    groups = {
        "biggs_2_1": biggs_group(["a", "b"], 1),  # order 6
        "biggs_2_2": biggs_group(["a", "b"], 2),  # order 10
        "biggs_3_1": biggs_group(["a", "b", "c"], 1),  # order 24
        "cube_1": hypercube_group(["a"]),  # order 2
        "cube_2": hypercube_group(["a", "b"]),  # order 4
        "cube_3": hypercube_group(["a", "b", "c"]),  # order 8
        "s3_three_gen": s3_three_generators(),  # order 6, not 2-acyclic
        "six_cycle": sym(cycle_graph(6), attach_hypercube=False),  # order 6
        "eight_cycle": sym(cycle_graph(8), attach_hypercube=False),  # order 8
        "path_aba": sym(path_graph("aba"), attach_hypercube=False),  # order 8
        "path_abab": sym(path_graph("abab"), attach_hypercube=False),
        "tree_plus_cube": sym(biggs_tree(["a", "b"], 1)),  # with hypercube
    }
    return groups


@pytest.fixture(scope="session")
def small_groups():
    return corpus()
