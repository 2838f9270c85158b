from fractions import Fraction as F

import pytest

import oracles
from pcmfix import (
    ConeVector,
    ContractionParams,
    MetricRecipe,
    MultiValuedMap,
    build_space,
    check_cauchy_transfer,
    check_condition,
    decay_ratio,
    default_h,
    enumerate_fixed_points,
    generate_random_map,
    generate_random_space,
    induce_cone_metric,
    iterate,
    min_constant,
)
from pcmfix.numerics import cone_leq, max_norm
from pcmfix.solver import IterationTrace


def V(*c):
    return ConeVector(c)


KANNAN = ContractionParams.kannan(F(1, 3))


def test_fixed_point_oracle(kannan_map, chatterjea_map, kannan_space):
    assert enumerate_fixed_points(kannan_map) == {"0"}
    assert enumerate_fixed_points(chatterjea_map) == {"0"}
    everything = MultiValuedMap.on(kannan_space, {x: list(kannan_space) for x in kannan_space})
    assert enumerate_fixed_points(everything) == {"0", "1", "4"}


def test_fixed_points_invariant_under_relabeling():
    for seed in range(30):
        space = generate_random_space(seed, 1 + seed % 5, 2)
        tmap = generate_random_map(seed, space)
        rename = {x: f"r{len(space) - i}" for i, x in enumerate(space)}
        relabeled = MultiValuedMap({rename[x]: [rename[y] for y in tmap.image(x)] for x in space})
        assert enumerate_fixed_points(relabeled) == {rename[x] for x in enumerate_fixed_points(tmap)}


@pytest.mark.parametrize(
    "params, h, k",
    [
        (ContractionParams.kannan(F(1, 3)), F(5, 4), F(5, 7)),
        (ContractionParams.kannan(F(1, 4)), F(3, 2), F(3, 5)),
        (ContractionParams.chatterjea(F(1, 4)), F(3, 2), F(3, 5)),
        (ContractionParams.reich(F(1, 4), F(1, 4), 0), F(3, 2), F(3, 5)),
    ],
)
def test_default_h_and_ratio(params, h, k):
    assert default_h(params) == h
    assert decay_ratio(params, h) == k


def test_literal_proof_constant_gives_ratio_one():
    assert decay_ratio(KANNAN, F(3, 2)) == 1
    reich = ContractionParams.reich(F(1, 5), F(1, 5), F(1, 5))
    assert decay_ratio(reich, 1 / (F(3, 5))) == 1
    with pytest.raises(ValueError):
        default_h(ContractionParams.reich(0, 0, 0))


def test_default_h_in_open_interval():
    for num in range(1, 50):
        lam = F(num, 100)
        h = default_h(ContractionParams.kannan(lam))
        assert 1 < h < 1 / (2 * lam)
        assert decay_ratio(ContractionParams.kannan(lam), h) < 1


def test_iterate_kannan_from_every_start(kannan_space, kannan_map):
    for x0 in kannan_space:
        trace, diag = iterate(kannan_space, kannan_map, x0, KANNAN)
        assert trace.terminated == "fixed-point" and trace.fixed_point == "0"
        assert len(trace.points) <= 4
        assert trace.all_decay_ok and trace.all_selections_satisfied
        assert diag.geometric_bound_ok and diag.limit_ok and diag.d_cauchy_ok
    trace, _ = iterate(kannan_space, kannan_map, 0, KANNAN)
    assert trace.points == ("0",) and trace.steps == ()


def test_iterate_forced_first_step(kannan_space, kannan_map):
    trace, diag = iterate(kannan_space, kannan_map, 4, KANNAN, first=1)
    assert trace.points == ("4", "1", "0")
    assert trace.steps[1].distance == V("1/4", "1/2")
    assert cone_leq(trace.steps[1].distance, F(5, 7) * kannan_space.p(1, 4))
    assert F(5, 7) * kannan_space.p(1, 4) == V("15/28", "10/7")
    assert diag.geometric_bound_ok
    with pytest.raises(ValueError):
        iterate(kannan_space, kannan_map, 4, KANNAN, first=4)


def test_iterate_chatterjea(chatterjea_space, chatterjea_map):
    params = ContractionParams.chatterjea(F(1, 4))
    for x0 in chatterjea_space:
        trace, _ = iterate(chatterjea_space, chatterjea_map, x0, params)
        assert trace.fixed_point == "0"


def test_every_possible_kannan_trace_decays(kannan_space, kannan_map):
    """All Picard sequences, not only the ones the selection rule picks."""
    T = {x: kannan_map.image(x) for x in kannan_space}
    k = F(5, 7)
    for x0 in kannan_space:
        for seq in oracles.all_traces(T, x0, 6):
            assert seq[-1] == "0"
            for n in range(1, len(seq) - 1):
                assert cone_leq(kannan_space.p(seq[n + 1], seq[n]), k * kannan_space.p(seq[n], seq[n - 1]))
            if len(seq) > 1:
                first = max_norm(kannan_space.p(seq[1], seq[0]))
                for n in range(len(seq)):
                    for m in range(n + 1, len(seq)):
                        assert max_norm(kannan_space.p(seq[m], seq[n])) <= k**n / (1 - k) * first


def test_two_cycle_is_not_cauchy():
    space = build_space(["a", "b"], 1, MetricRecipe.from_table({("a", "a"): (0,), ("b", "b"): (0,), ("a", "b"): (1,)}))
    swap = MultiValuedMap.on(space, {"a": ["b"], "b": ["a"]})
    trace, diag = iterate(space, swap, "a", KANNAN)
    assert trace.terminated == "cycle-detected"
    assert trace.points == ("a", "b", "a", "b")
    assert not check_cauchy_transfer(space, trace)
    assert not diag.d_cauchy_ok and not diag.limit_ok
    assert not trace.all_decay_ok
    assert induce_cone_metric(space).d("a", "b") == V(2)


def test_budget_exhaustion():
    space = build_space(["a", "b"], 1, MetricRecipe.from_table({("a", "a"): (0,), ("b", "b"): (0,), ("a", "b"): (1,)}))
    swap = MultiValuedMap.on(space, {"a": ["b"], "b": ["a"]})
    trace, _ = iterate(space, swap, "a", KANNAN, budget=1)
    assert trace.terminated == "budget-exhausted" and trace.points == ("a", "b")
    with pytest.raises(ValueError):
        iterate(space, swap, "a", KANNAN, budget=0)
    with pytest.raises(ValueError):
        iterate(space, swap, "a", KANNAN, h=1)


def test_cauchy_transfer_on_hand_trace(kannan_space):
    trace = IterationTrace(("4", "1", "0"), F(5, 4), F(5, 7), (), "fixed-point", "0")
    assert check_cauchy_transfer(kannan_space, trace)
    d = induce_cone_metric(kannan_space)
    assert [d.d("4", "1"), d.d("1", "0"), d.d("0", "0")] == [V("3/2", "3/2"), V("1/2", "1/2"), V(0, 0)]


def test_literal_h_reproduces_k_one(kannan_space, kannan_map):
    trace, diag = iterate(kannan_space, kannan_map, 4, KANNAN, h=F(3, 2))
    assert trace.k == 1
    assert not diag.geometric_bound_ok


@pytest.mark.parametrize("seed", range(300))
def test_random_traces_chain_bound(seed):
    space = generate_random_space(seed, 1 + seed % 6, 1 + seed % 3, weight_scale=seed % 3)
    tmap = generate_random_map(seed, space)
    mc = min_constant(space, tmap, "kannan")
    params = ContractionParams.kannan(mc.value or F(1, 4)) if mc.below_threshold and mc.value else KANNAN
    contractive = check_condition(space, tmap, params).passed
    for x0 in space:
        trace, diag = iterate(space, tmap, x0, params)
        assert all(y in tmap.image(x) for x, y in zip(trace.points, trace.points[1:]))
        if contractive and trace.all_selections_satisfied and len(trace.points) > 1:
            assert trace.all_decay_ok
            first = space.p(trace.points[1], trace.points[0])
            for n, step in enumerate(trace.steps):
                assert cone_leq(step.distance, trace.k**n * first)
            assert diag.geometric_bound_ok
        if diag.geometric_bound_ok and len(trace.points) > 1:
            first = max_norm(space.p(trace.points[1], trace.points[0]))
            pts = trace.points
            for n in range(len(pts)):
                for m in range(n + 1, len(pts)):
                    assert max_norm(space.p(pts[m], pts[n])) <= trace.k**n / (1 - trace.k) * first
