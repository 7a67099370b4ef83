"""Tree network construction, the first-failure witness, and tree drawing."""

import pytest

from conftest import (
    RECT42,
    l1_points,
    path_metric,
    random_tree_metric,
    star_metric,
)
from rectiplane.metric import validate_metric, verify_isometric
from rectiplane.tightspan import tight_span4
from rectiplane.treenet import (
    FirstFailure,
    TooManyLeaves,
    TreeNetwork,
    build_tree_network,
    count_leaves,
    embed_tree,
)


def test_path_is_a_tree_network():
    ms = path_metric([3, 4, 5])
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    assert count_leaves(tree) == 2
    pts = embed_tree(tree)
    ok, _ = verify_isometric(pts, ms)
    assert ok
    assert all(p.y == 0 for p in pts)


def test_single_point_and_pair():
    one = validate_metric([[0]])
    tree = build_tree_network(one)
    assert count_leaves(tree) == 1
    pair = path_metric([7])
    tree = build_tree_network(pair)
    assert count_leaves(tree) == 2
    assert embed_tree(tree)[1].x - embed_tree(tree)[0].x in (7, -7)


def test_terminal_landing_on_the_path():
    # Third point inserted strictly between the first two.
    ms, _ = l1_points([(0, 0), (5, 0), (2, 0)])
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    assert count_leaves(tree) == 2
    ok, _ = verify_isometric(embed_tree(tree), ms)
    assert ok


def test_star4_embeds():
    ms = star_metric(4)
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    assert count_leaves(tree) == 4
    ok, _ = verify_isometric(embed_tree(tree), ms)
    assert ok


def test_star5_rejected_by_leaf_count():
    ms = star_metric(5)
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    assert count_leaves(tree) == 5
    with pytest.raises(TooManyLeaves):
        embed_tree(tree)


def test_two_ramification_nodes():
    # An H shape: two degree-3 Steiner nodes joined by a spine of length 3,
    # legs 1 and 2 on one side, 4 and 1 on the other, plus a terminal sitting
    # on the spine itself.
    rows = [[0, 3, 8, 5, 2],
            [3, 0, 9, 6, 3],
            [8, 9, 0, 5, 6],
            [5, 6, 5, 0, 3],
            [2, 3, 6, 3, 0]]
    ms = validate_metric(rows)
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    assert count_leaves(tree) == 4
    ok, _ = verify_isometric(embed_tree(tree), ms)
    assert ok


def test_rect42_first_failure():
    ms, _ = l1_points(RECT42)
    ff = build_tree_network(ms)
    assert ff == FirstFailure(a=0, b=1, xi=3, xj=2)
    assert ff.quadruplet == (0, 1, 3, 2)
    ts = tight_span4(ms, *ff.quadruplet)
    assert not ts.degenerate
    assert {ts.side01, ts.side12} == {2, 4}


def test_first_failure_witness_follows_traversal_order():
    # The failing terminal must be the first one in breadth-first order from
    # the inserted terminal; taking the smallest failing index instead yields
    # the degenerate quadruplet {1, 2, 4, 0} here.
    rows = [[0, 11, 10, 5, 7],
            [11, 0, 6, 6, 5],
            [10, 6, 0, 5, 4],
            [5, 6, 5, 0, 7],
            [7, 5, 4, 7, 0]]
    ms = validate_metric(rows)
    ff = build_tree_network(ms)
    assert ff == FirstFailure(a=1, b=2, xi=4, xj=3)
    ts = tight_span4(ms, *ff.quadruplet)
    assert not ts.degenerate
    degenerate_pick = tight_span4(ms, 1, 2, 4, 0)
    assert degenerate_pick.degenerate


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("n", [4, 6, 8])
def test_tree_metrics_build_exactly(n, seed):
    ms = random_tree_metric(n, seed)
    tree = build_tree_network(ms)
    assert isinstance(tree, TreeNetwork)
    for i in range(ms.n):
        dist = tree.distances_from(tree.terminal_node[i])
        for j in range(ms.n):
            assert dist[tree.terminal_node[j]] == ms.d(i, j)


def test_first_failures_are_never_degenerate():
    from conftest import random_matrix_instance

    hits = 0
    for seed in range(300):
        n = 4 + seed % 3
        ms = random_matrix_instance(n, seed, lo=8, hi=20)
        built = build_tree_network(ms)
        if isinstance(built, FirstFailure):
            hits += 1
            assert not tight_span4(ms, *built.quadruplet).degenerate
    assert hits > 50
