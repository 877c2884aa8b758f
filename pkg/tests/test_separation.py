from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from approachnorm import (
    INF,
    CodomainTag,
    FnOverSpace,
    NoWitness,
    Scale,
    classify,
    contraction_to_scale,
    frame_condition2,
    frame_condition3,
    is_gamma_separated,
    is_normal,
    prop_inequal_check,
    scale_to_contraction,
    separation_degree,
    urysohn,
    verify_normal_scale,
)
from approachnorm.catalog import get, random_quasimetric
from approachnorm.errors import EmptySet, InvalidScale, NotContractive, NotSeparated
from approachnorm.separation import (
    closure_gap,
    frame_condition2_search,
    gamma_separated_direct,
    scale_violation,
)
from approachnorm.space import closure

from conftest import spaces


def test_e3_degree_and_gap(e3):
    assert separation_degree(e3, ["x"], ["y"]) == 4
    assert closure_gap(e3, ["x"], ["y"]) == 3
    assert is_gamma_separated(e3, ["x"], ["y"], 4)
    assert not is_gamma_separated(e3, ["x"], ["y"], Fraction(9, 2))
    assert prop_inequal_check(e3, ["x"], ["y"], 4) == (True, True, True)
    assert prop_inequal_check(e3, ["x"], ["y"], 5) == (False, False, False)


def test_e3_urysohn(e3):
    assert urysohn(e3, ["x"], ["y"], 4) == NoWitness(3)
    f = urysohn(e3, ["x"], ["y"], 3)
    assert f.values == (3, 0, 2)
    assert classify(f, CodomainTag.EUCLID)
    with pytest.raises(NotSeparated):
        urysohn(e3, ["x"], ["y"], 5)


def test_e3_not_normal(e3):
    v = is_normal(e3)
    assert not v and not v.sampled
    w = v.witness
    assert (w.A, w.B, w.gamma, w.shortfall) == ({"x"}, {"y"}, 4, 3)


def test_e3_frame_conditions(e3):
    assert frame_condition2(e3).holds
    assert frame_condition2_search(e3).holds
    assert frame_condition3(e3).holds
    assert frame_condition3(e3, brute=True).holds


def test_e4_degrees(e4):
    assert separation_degree(e4, ["x"], ["y", "z", "w"]) == 1
    assert separation_degree(e4, ["x"], ["y"]) == 4


def test_e4_frame_conditions(e4):
    v = frame_condition2(e4)
    assert not v.holds
    assert v.witness == ({"x"}, {"y"}, 4)
    assert frame_condition2_search(e4).witness == v.witness
    assert frame_condition3(e4).holds and frame_condition3(e4, brute=True).holds
    assert is_normal(e4).witness.shortfall == 2


def test_empty_sets_rejected(e3):
    with pytest.raises(EmptySet):
        separation_degree(e3, [], ["x"])
    with pytest.raises(ValueError):
        urysohn(e3, ["x"], ["y"], INF)


def test_metric_line_is_normal(line):
    v = is_normal(line, certify=[(["a"], ["c"])])
    assert v.normal
    (c,) = v.certificates
    assert c.gamma == 10 and c.function.values == (10, 5, 0)
    assert verify_normal_scale(line, c.scale, ["a"], ["c"], 10)


def test_certificate_needs_separation():
    with pytest.raises(NotSeparated):
        is_normal(get("pplus-grid").space, certify=[(["0"], ["1"])])


def test_sorgenfrey_grid_is_normal():
    assert is_normal(get("sorgenfrey-grid").space).normal


# -- scales --------------------------------------------------------------------------------


def test_scale_evaluation():
    F = Scale(((0, ["a"]), (2, ["a", "b"])))
    assert F(-0) == {"a"} and F(1) == {"a"} and F(5) == {"a", "b"}
    assert F.below(2) == {"a"} and F.below(0) == frozenset()
    with pytest.raises(InvalidScale):
        Scale(((1, ["a", "b"]), (2, ["a"])))
    with pytest.raises(InvalidScale):
        Scale(((1, ["a"]), (1, ["a"])))


def test_scale_round_trip_e3(e3):
    f = FnOverSpace(e3, (3, 0, 2))
    F = contraction_to_scale(e3, f)
    assert F.breakpoints == ((0, {"y"}), (2, {"y", "z"}), (3, {"x", "y", "z"}))
    assert scale_to_contraction(e3, F).values == f.values


def test_scale_rejections(e3):
    with pytest.raises(NotContractive):
        contraction_to_scale(e3, FnOverSpace(e3, (4, 0, 2)))
    bad = Scale(((0, ["y"]), (4, ["x", "y", "z"])))
    assert scale_violation(e3, bad) is not None
    with pytest.raises(InvalidScale):
        scale_to_contraction(e3, bad)
    with pytest.raises(InvalidScale):
        scale_to_contraction(e3, Scale(((0, ["y"]),)))


# -- properties ------------------------------------------------------------------------------


def pair(s):
    pts = st.sampled_from(s.points)
    return st.tuples(st.sets(pts, min_size=1), st.sets(pts, min_size=1))


@given(spaces(), st.data())
def test_direct_gamma_check_matches_closed_form(s, data):
    A, B = data.draw(pair(s))
    sep = separation_degree(s, A, B)
    for g in [v for v in s.realized_values if v is not INF and v > 0] + [Fraction(1, 3)]:
        assert gamma_separated_direct(s, A, B, g) == (g <= sep)
        assert len(set(prop_inequal_check(s, A, B, g))) == 1


@given(spaces(), st.data())
def test_urysohn_function_is_valid(s, data):
    A, B = data.draw(pair(s))
    sep = separation_degree(s, A, B)
    if sep == 0:
        return
    g = sep if sep is not INF else 1
    f = urysohn(s, A, B, g)
    if isinstance(f, NoWitness):
        assert f.shortfall < g
        return
    assert classify(f, CodomainTag.EUCLID)
    for p in closure(s, A):
        assert f[p] == g
    for p in closure(s, B):
        assert f[p] == 0


def brute_normal(s):
    """Every pair checked through the public per-pair functions."""
    n = len(s.points)
    subsets = [[p for i, p in enumerate(s.points) if m >> i & 1] for m in range(1, 1 << n)]
    for A in subsets:
        for B in subsets:
            if closure(s, A) & closure(s, B):
                continue
            sep = separation_degree(s, A, B)
            if sep == 0:
                continue
            if closure_gap(s, A, B) < sep:
                return False
    return True


@given(spaces(max_size=5))
def test_is_normal_matches_pairwise_route(s):
    assert is_normal(s).normal == brute_normal(s)


@given(spaces(max_size=4))
def test_frame_routes_agree(s):
    assert frame_condition2(s) == frame_condition2_search(s)
    assert frame_condition3(s) == frame_condition3(s, brute=True)


@given(spaces(max_size=5))
def test_normal_implies_condition2(s):
    if is_normal(s).normal:
        assert frame_condition2(s).holds


@given(spaces(), st.data())
def test_scale_round_trip(s, data):
    i = data.draw(st.integers(0, len(s.points) - 1))
    top = data.draw(st.sampled_from([1, Fraction(5, 2), 4]))
    f = FnOverSpace(s, tuple(min(v, top) for v in s.dstar[i]))
    F = contraction_to_scale(s, f)
    assert scale_to_contraction(s, F).values == f.values


def test_jobs_do_not_change_verdict():
    for seed in range(3):
        s = random_quasimetric(7, seed)
        assert is_normal(s, jobs=1) == is_normal(s, jobs=2)


def test_sampling_above_limit():
    s = get("sorgenfrey-grid", {"n": 12}).space
    v = is_normal(s, samples=500)
    assert v.sampled and v.normal
    assert is_normal(s, samples=500) == v
