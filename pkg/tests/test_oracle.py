"""Self-checks for the exhaustive oracles.

The oracles are the ground truth for the rest of the suite, so they get
their own validation: closed-form instances, internal consistency between
the different enumerations, and the size guards.
"""
import math
import random

import pytest

from ghcut import (
    ORACLE_MAX_N,
    ORACLE_MAX_N_ISOLATING,
    Graph,
    SteinerTree,
    brute_isolating_cuts,
    brute_leaf_respecting_min_cut,
    brute_min_cut,
    brute_respecting_min_cut,
    brute_steiner_min_cut,
    cut_value,
    generate,
    max_flow,
    random_steiner_tree,
)


def test_path_min_cut():
    g = Graph(3, [(0, 1, 3), (1, 2, 5)])
    ans = brute_min_cut(g, 0, 2)
    assert ans.value == 3
    assert [sorted(w.side) for w in ans.witnesses] == [[1, 2]]


def test_min_cut_sides_contain_sink_only():
    g = generate("erdos-renyi-weighted", 7, seed=9)
    ans = brute_min_cut(g, 2, 6)
    for w in ans.witnesses:
        assert 6 in w.side
        assert 2 not in w.side
        assert cut_value(g, w.side) == ans.value


def test_min_cut_symmetric_value():
    g = generate("clique", 6, seed=1)
    for s, t in [(0, 3), (1, 5), (2, 4)]:
        assert brute_min_cut(g, s, t).value == brute_min_cut(g, t, s).value


def test_min_cut_extremal_sides_always_exist():
    # optimal sink sides of a plain min cut form a lattice, so both
    # extremes are well defined on every instance
    rng = random.Random("lattice")
    for inst in range(20):
        g = generate("erdos-renyi-weighted", rng.randint(4, 9), seed=100 + inst)
        s, t = rng.sample(range(g.n), 2)
        ans = brute_min_cut(g, s, t)
        lo = ans.minimal_side()
        hi = ans.maximal_side()
        assert lo <= hi
        assert t in lo and s not in hi


def test_disconnected_pair_value_zero():
    g = Graph(4, [(0, 1, 5), (2, 3, 5)])
    ans = brute_min_cut(g, 0, 2)
    assert ans.value == 0


def test_respecting_zero_budget_infeasible():
    g = Graph(3, [(0, 1, 3), (1, 2, 5)])
    tr = SteinerTree((0, 1, 2), ((0, 1), (1, 2)), 0)
    ans = brute_respecting_min_cut(g, tr, 0, 2, 0)
    assert ans.value == math.inf
    assert ans.witnesses == ()


def test_respecting_large_budget_is_vacuous():
    rng = random.Random("vac")
    for inst in range(10):
        g = generate("erdos-renyi-weighted", 8, seed=200 + inst)
        verts = rng.sample(range(8), 5)
        tr = random_steiner_tree(verts, verts[0], rng)
        t = verts[1]
        full = brute_respecting_min_cut(g, tr, verts[0], t, len(tr.edges))
        assert full.value == brute_min_cut(g, verts[0], t).value


def test_respecting_monotone_in_budget():
    g = generate("erdos-renyi-weighted", 8, seed=3)
    tr = SteinerTree((0, 2, 4, 5, 7), ((0, 2), (2, 4), (4, 5), (5, 7)), 0)
    prev = math.inf
    for k in range(5):
        cur = brute_respecting_min_cut(g, tr, 0, 7, k).value
        assert cur <= prev
        prev = cur


def test_respecting_frozen_anchor():
    # generate("erdos-renyi-weighted", 8, seed=3) with the path tree
    # 0-2-4-5-7: budget 0 admits nothing, budget 1 already meets lambda
    g = generate("erdos-renyi-weighted", 8, seed=3)
    tr = SteinerTree((0, 2, 4, 5, 7), ((0, 2), (2, 4), (4, 5), (5, 7)), 0)
    assert brute_min_cut(g, 0, 7).value == 5
    assert brute_respecting_min_cut(g, tr, 0, 7, 0).value == math.inf
    assert brute_respecting_min_cut(g, tr, 0, 7, 1).value == 5
    assert brute_respecting_min_cut(g, tr, 0, 7, 2).value == 5


def test_respecting_witness_crossings_within_budget():
    g = generate("erdos-renyi-weighted", 8, seed=3)
    tr = SteinerTree((0, 2, 4, 5, 7), ((0, 2), (2, 4), (4, 5), (5, 7)), 0)
    ans = brute_respecting_min_cut(g, tr, 0, 5, 2)
    assert ans.witnesses
    for w in ans.witnesses:
        crossings = sum(1 for u, v in tr.edges if (u in w.side) != (v in w.side))
        assert crossings <= 2
        assert 5 in w.side and 0 not in w.side


def test_leaf_respecting_dominates_respecting():
    # forcing the cut across the source leaf edge can only cost more
    rng = random.Random("eta")
    for inst in range(12):
        g = generate("erdos-renyi-weighted", 8, seed=300 + inst)
        verts = rng.sample(range(8), 5)
        s = verts[0]
        spine = random_steiner_tree(verts[1:], verts[1], rng)
        tr = SteinerTree(verts, list(spine.edges) + [(s, rng.choice(verts[1:]))], s)
        for t in verts[1:]:
            for k in (1, 2, 3):
                eta = brute_leaf_respecting_min_cut(g, tr, s, t, k).value
                lam = brute_respecting_min_cut(g, tr, s, t, k).value
                assert eta >= lam


def test_leaf_respecting_witnesses_cross_leaf_edge():
    g = generate("erdos-renyi-weighted", 8, seed=3)
    tr = SteinerTree((0, 2, 4, 5, 7), ((0, 2), (2, 4), (4, 5), (5, 7)), 0)
    assert brute_leaf_respecting_min_cut(g, tr, 0, 5, 1).value == 5
    ans = brute_leaf_respecting_min_cut(g, tr, 0, 5, 2)
    assert ans.value == 5
    for w in ans.witnesses:
        # leaf neighbour 2 must sit on the cut side opposite the source
        assert 2 in w.side


def test_leaf_respecting_requires_source_leaf():
    g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    star = SteinerTree((0, 1, 2, 3), ((1, 0), (1, 2), (1, 3)), 1)
    with pytest.raises(ValueError):
        brute_leaf_respecting_min_cut(g, star, 1, 2, 2)


def test_isolating_matches_pairwise_contraction():
    # isolating a group is the same as a max flow against everything else
    # merged, which gives an independent cross-check
    from ghcut import contract

    rng = random.Random("isoref")
    for inst in range(15):
        n = rng.randint(5, 9)
        g = generate("erdos-renyi-weighted", n, seed=400 + inst)
        verts = rng.sample(range(n), rng.randint(3, min(5, n)))
        k = rng.randint(2, min(3, len(verts)))
        groups = [sorted(verts[i::k]) for i in range(k)]
        groups = [grp for grp in groups if grp]
        answers = brute_isolating_cuts(g, groups)
        for i, (grp, ans) in enumerate(zip(groups, answers)):
            rest = [v for j, grp2 in enumerate(groups) if j != i for v in grp2]
            q, cm = contract(g, [grp, rest])
            ref = max_flow(q, cm.forward[rest[0]], cm.forward[grp[0]])
            assert ans.value == ref.value


def test_isolating_unit_k4():
    k4 = Graph(4, [(i, j, 1) for i in range(4) for j in range(i + 1, 4)])
    answers = brute_isolating_cuts(k4, [[0], [1], [2], [3]])
    assert [a.value for a in answers] == [3, 3, 3, 3]
    assert [sorted(a.minimal_side()) for a in answers] == [[0], [1], [2], [3]]


def test_isolating_frozen_anchor():
    g = generate("erdos-renyi-weighted", 8, seed=3)
    answers = brute_isolating_cuts(g, [[0], [3], [6]])
    assert [a.value for a in answers] == [5, 23, 18]
    assert sorted(answers[0].minimal_side()) == [0]
    assert sorted(answers[1].minimal_side()) == [1, 2, 3, 4, 5, 7]
    assert sorted(answers[2].minimal_side()) == [6]


def test_isolating_rejects_bad_groups():
    g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    with pytest.raises(ValueError):
        brute_isolating_cuts(g, [[0]])
    with pytest.raises(ValueError):
        brute_isolating_cuts(g, [[0], []])
    with pytest.raises(ValueError):
        brute_isolating_cuts(g, [[0, 1], [1, 2]])


def test_steiner_unit_k4():
    k4 = Graph(4, [(i, j, 1) for i in range(4) for j in range(i + 1, 4)])
    ans = brute_steiner_min_cut(k4, range(4))
    assert ans.value == 3


def test_steiner_equals_pairwise_minimum():
    rng = random.Random("steiner")
    for inst in range(12):
        n = rng.randint(4, 9)
        g = generate("erdos-renyi-weighted", n, seed=500 + inst)
        terms = rng.sample(range(n), rng.randint(2, n))
        ans = brute_steiner_min_cut(g, terms)
        best = min(
            brute_min_cut(g, a, b).value
            for i, a in enumerate(terms)
            for b in terms[i + 1 :]
        )
        assert ans.value == best
        for w in ans.witnesses:
            inside = [t for t in terms if t in w.side]
            assert inside and len(inside) < len(terms)


def test_steiner_requires_two_terminals():
    g = Graph(3, [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(ValueError):
        brute_steiner_min_cut(g, [1])


def test_size_guards():
    big = Graph(ORACLE_MAX_N + 1, [(i, i + 1, 1) for i in range(ORACLE_MAX_N)])
    with pytest.raises(ValueError):
        brute_min_cut(big, 0, 1)
    med = Graph(
        ORACLE_MAX_N_ISOLATING + 1,
        [(i, i + 1, 1) for i in range(ORACLE_MAX_N_ISOLATING)],
    )
    with pytest.raises(ValueError):
        brute_isolating_cuts(med, [[0], [1]])


def test_respecting_requires_tree_vertices():
    g = Graph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)])
    tr = SteinerTree((0, 2, 4), ((0, 2), (2, 4)), 0)
    with pytest.raises(ValueError):
        brute_respecting_min_cut(g, tr, 0, 3, 2)
