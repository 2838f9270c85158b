import itertools

import pytest

import oracles
from pcmfix import (
    ConeVector,
    MetricRecipe,
    build_space,
    delta,
    generate_random_space,
    hausdorff,
    point_set_dist,
    select,
)
from pcmfix.numerics import cone_leq
from pcmfix.setdist import lemma_h_floor


def V(*c):
    return ConeVector(c)


def subsets(points):
    pts = list(points)
    for r in range(1, len(pts) + 1):
        yield from itertools.combinations(pts, r)


@pytest.fixture(scope="module")
def gap_space():
    table = {
        ("a", "a"): (0, 0),
        ("b1", "b1"): (0, 0),
        ("b2", "b2"): (0, 0),
        ("a", "b1"): (1, 10),
        ("a", "b2"): (10, 1),
        ("b1", "b2"): (9, 9),
    }
    return build_space(["a", "b1", "b2"], 2, MetricRecipe.from_table(table))


def test_point_set_examples(kannan_space, chatterjea_space):
    assert point_set_dist(kannan_space, 4, [0, 1]).value == V("3/4", 2)
    assert point_set_dist(chatterjea_space, 2, [0, 1]).value == V("1/2", 0)
    assert point_set_dist(kannan_space, 1, [4]).value == kannan_space.p(1, 4)


def test_delta_examples(kannan_space, chatterjea_space):
    assert delta(kannan_space, [0, 1], [0]).value == V("1/4", "1/2")
    assert delta(chatterjea_space, [0, 1], [0]).value == V("1/6", 0)
    zero_diag = build_space([0, 1], 1, MetricRecipe.from_table({(0, 0): (0,), (1, 1): (0,), (0, 1): (3,)}))
    assert delta(zero_diag, [0, 1], [0, 1]).value == V(0)


def test_hausdorff_examples(kannan_space):
    assert hausdorff(kannan_space, [0], [0, 1]).value == V("1/4", "1/2")
    assert hausdorff(kannan_space, [0, 1], [0, 1]).value == V(0, "1/2")
    for x in kannan_space:
        assert hausdorff(kannan_space, [x], [x]).value == kannan_space.p(x, x)


def test_attained_witness(gap_space):
    r = point_set_dist(gap_space, "a", ["b1", "b2"])
    assert r.value == V(1, 1) and r.attained_by is None
    assert point_set_dist(gap_space, "a", ["a", "b1"]).attained_by == "a"


def test_empty_subset_rejected(kannan_space):
    with pytest.raises(ValueError):
        point_set_dist(kannan_space, 0, [])
    with pytest.raises(ValueError):
        hausdorff(kannan_space, [0], [])


def test_select_examples(kannan_space, gap_space):
    r = select(kannan_space, 1, [0, 1], [0], "3/2")
    assert (r.chosen, r.satisfied) == ("0", True)
    assert r.achieved == V("1/4", "1/2") and r.bound == V("3/8", "3/4")
    zd = build_space([0, 1], 1, MetricRecipe.from_table({(0, 0): (0,), (1, 1): (0,), (0, 1): (3,)}))
    r = select(zd, 0, [0, 1], [1, 0], "11/10")
    assert (r.chosen, r.satisfied) == ("0", True)
    r = select(gap_space, "a", ["a", "b1", "b2"], ["b1", "b2"], "11/10")
    assert not r.satisfied
    assert r.chosen == "b1"
    assert r.bound == V("11/10", "11/10")


def test_select_rejects_bad_input(kannan_space):
    with pytest.raises(ValueError):
        select(kannan_space, 1, [0, 1], [0], 1)
    with pytest.raises(ValueError):
        select(kannan_space, 4, [0, 1], [0], 2)


def test_lemma_h_floor(gap_space, kannan_space):
    assert lemma_h_floor(gap_space, "a", ["a", "b1", "b2"], ["b1", "b2"]) == 10
    assert select(gap_space, "a", ["a", "b1", "b2"], ["b1", "b2"], 10).satisfied
    assert not select(gap_space, "a", ["a", "b1", "b2"], ["b1", "b2"], "99/10").satisfied
    assert lemma_h_floor(kannan_space, 1, [0, 1], [0]) == 1


def _table(space):
    return {k: v.coords for k, v in space.p_table.items()}


@pytest.mark.parametrize("seed", range(40))
def test_set_distances_match_brute_force(seed):
    space = generate_random_space(seed, 1 + seed % 4, 1 + seed % 3)
    p = _table(space)
    for A in subsets(space):
        for x in space:
            assert point_set_dist(space, x, A).value.coords == oracles.dist_to_set(p, x, A)
        for B in subsets(space):
            assert hausdorff(space, A, B).value.coords == oracles.hausdorff(p, A, B)


@pytest.mark.parametrize("seed", range(60))
def test_set_distance_properties(seed):
    space = generate_random_space(seed, 1 + seed % 5, 1 + seed % 3)
    subs = list(subsets(space))
    dist = {(x, A): point_set_dist(space, x, A).value for x in space for A in subs}
    for A in subs:
        for x, y in itertools.product(space, repeat=2):
            assert cone_leq(dist[x, A], space.p(x, y) + dist[y, A] - space.p(y, y))
        for x in space:
            for B in subs:
                if set(A) <= set(B):
                    assert cone_leq(dist[x, B], dist[x, A])
    for A, B in itertools.product(subs[:12], repeat=2):
        h = hausdorff(space, A, B).value
        assert h == hausdorff(space, B, A).value
        assert cone_leq(delta(space, A, B).value, h) and cone_leq(delta(space, B, A).value, h)
    for x, y in itertools.product(space, repeat=2):
        assert hausdorff(space, [x], [y]).value == space.p(x, y)


@pytest.mark.parametrize("seed", range(30))
def test_select_satisfied_means_bound_holds(seed):
    space = generate_random_space(seed, 2 + seed % 4, 1 + seed % 3)
    subs = list(subsets(space))[:10]
    for A, B in itertools.product(subs, repeat=2):
        for a in A:
            r = select(space, a, A, B, "5/4")
            assert r.satisfied == cone_leq(r.achieved, r.bound)
            brute = [b for b in B if cone_leq(space.p(a, b), r.bound)]
            assert r.satisfied == bool(brute)
