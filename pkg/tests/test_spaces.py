import json
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealtop import naive
from idealtop.errors import CapacityExceeded, NotATopology, ParseError, PointOutOfRange
from idealtop.spaces import (
    SetFamily,
    build_space,
    canonical_form,
    closure,
    count_spaces,
    enumerate_spaces,
    generate_from_subbasis,
    interior,
    is_regular,
    minimal_nbhd,
    relabel,
    space_from_json,
    submasks,
)


def test_build_space_accepts_s2(s2):
    assert s2.opens.members == (0, 1, 3)
    assert s2.nbhd == (0b01, 0b11)


@pytest.mark.parametrize("opens, reason", [
    ([0b01, 0b11], "missing-empty"),
    ([0b00, 0b01], "missing-full"),
    ([0b000, 0b001, 0b010, 0b111], "union"),
    ([0b000, 0b011, 0b110, 0b111], "intersection"),
    ([0b000, 0b1000, 0b111], "out-of-range"),
])
def test_build_space_rejects(opens, reason):
    with pytest.raises(NotATopology) as info:
        build_space(3, None, opens)
    assert info.value.reason == reason


def test_union_defect_names_the_pair():
    with pytest.raises(NotATopology) as info:
        build_space(3, None, [0, 0b001, 0b010, 0b111])
    assert set(info.value.pair) == {0b001, 0b010}


def test_capacity():
    with pytest.raises(CapacityExceeded):
        build_space(0, None, [0])
    with pytest.raises(CapacityExceeded):
        build_space(65, None, [0])


def _naive_generated(n, subbasis):
    # smallest family containing the subbasis and closed under both operations
    family = {0, (1 << n) - 1, *subbasis}
    while True:
        grown = family | {a | b for a in family for b in family} | {a & b for a in family for b in family}
        if grown == family:
            return tuple(sorted(family))
        family = grown


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=5))))
def test_subbasis_matches_fixed_point(case):
    n, subbasis = case
    assert generate_from_subbasis(n, None, subbasis).opens.members == _naive_generated(n, subbasis)


def test_minimal_nbhd_and_range(s2):
    assert minimal_nbhd(s2, 0) == 0b01
    assert minimal_nbhd(s2, 1) == 0b11
    with pytest.raises(PointOutOfRange):
        minimal_nbhd(s2, 2)


def test_closure_interior_s2(s2):
    assert closure(s2, 0b01) == 0b11
    assert closure(s2, 0b10) == 0b10
    assert interior(s2, 0b10) == 0
    assert interior(s2, 0b01) == 0b01


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closure_interior_match_naive(n):
    for s in enumerate_spaces(n):
        for a in range(1 << n):
            assert s.closure(a) == naive.closure(n, s.opens.members, a)
            assert s.interior(a) == naive.interior(n, s.opens.members, a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.sampled_from(list(enumerate_spaces(n))),
    st.integers(0, (1 << n) - 1),
    st.integers(0, (1 << n) - 1))))
def test_kuratowski_axioms(case):
    s, a, b = case
    assert s.closure(0) == 0
    assert a & ~s.closure(a) == 0
    assert s.closure(s.closure(a)) == s.closure(a)
    assert s.closure(a | b) == s.closure(a) | s.closure(b)
    assert s.interior(a) == s.full & ~s.closure(s.full & ~a)


def test_minimal_neighbourhoods_form_a_base():
    for s in enumerate_spaces(3):
        for u in s.opens:
            union = 0
            for x in range(s.n):
                if u >> x & 1:
                    union |= s.nbhd[x]
            assert union == u


def test_is_regular():
    assert is_regular(build_space(2, None, [0, 3]))
    assert is_regular(build_space(2, None, [0, 1, 2, 3]))
    assert not is_regular(build_space(2, None, [0, 1, 3]))
    # partition topology is regular
    assert is_regular(build_space(3, None, [0, 0b001, 0b110, 0b111]))


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_enumeration_matches_naive_filter(n, expected):
    spaces = [s.opens.members for s in enumerate_spaces(n)]
    assert len(spaces) == len(set(spaces)) == count_spaces(n) == expected
    assert set(spaces) == set(naive.topologies(n))


def test_enumeration_order_is_stable():
    first = [s.opens.members for s in enumerate_spaces(3)]
    assert first == [s.opens.members for s in enumerate_spaces(3)]


def test_canonical_form_is_relabelling_invariant():
    for s in enumerate_spaces(3):
        canon = canonical_form(s)
        for perm in permutations(range(3)):
            assert canonical_form(relabel(s, perm)).opens == canon.opens


def test_setfamily_ops():
    f, g = SetFamily([3, 0, 1, 1]), SetFamily([0, 1, 2, 3])
    assert f.members == (0, 1, 3)
    assert f <= g and not g <= f
    assert g.difference(f) == [2]


def test_submasks():
    assert list(submasks(0b101)) == [0, 1, 4, 5]


def test_json_roundtrip(s2):
    assert space_from_json(json.loads(json.dumps(s2.to_json()))) == s2


def test_json_subbasis():
    s = space_from_json({"points": ["a", "b", "c"], "subbasis": [[0, 1], [1, 2]]})
    assert s.opens.members == (0, 0b010, 0b011, 0b110, 0b111)


def test_json_errors_carry_paths():
    with pytest.raises(ParseError) as info:
        space_from_json({"points": ["a", "b"], "opens": [[], [0, "x"]]})
    assert info.value.path == "$.opens[1][1]"
    with pytest.raises(ParseError) as info:
        space_from_json({"points": ["a", "b"], "opens": [[], [5]]})
    assert info.value.path == "$.opens[1][0]"
    with pytest.raises(NotATopology) as info:
        space_from_json({"points": ["a", "b", "c"], "opens": [[], [0], [1], [0, 1, 2]]})
    assert info.value.path == "$.opens[1], $.opens[2]"
    with pytest.raises(ParseError):
        space_from_json({"points": ["a"]})
