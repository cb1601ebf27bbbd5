import dataclasses
import json

import pytest

from idealtop import laws
from idealtop.errors import OracleMismatch
from idealtop.ideals import all_principal_ideals, downward, semi_ideals
from idealtop.laws import (
    LAWS,
    LawId,
    Skipped,
    Violation,
    check_all,
    check_inclusion_theorems,
    check_law,
    check_star_laws,
    replay,
)
from idealtop.operators import Context
from idealtop.spaces import enumerate_spaces


def test_every_law_is_registered():
    assert set(LAWS) == set(LawId)
    assert {law.group for law in LAWS.values()} == set(laws.GROUPS)


def test_s2_is_clean(s2, s2_ideal):
    assert check_all(Context(s2, s2_ideal)) == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_principal_sweep_is_clean(n):
    for space in enumerate_spaces(n):
        for ideal in all_principal_ideals(n):
            assert check_all(Context(space, ideal)) == []


def test_star4_fails_on_indiscrete_semi_ideal(indiscrete2):
    ctx = Context(indiscrete2, downward(2, [0b01, 0b10]))
    found = check_law(LawId.STAR4, ctx)
    assert found
    v = found[0]
    assert v.sets == (0b01, 0b10)
    assert v.lhs == 0b11 and v.rhs == 0
    assert replay(v)


def test_semi_ideals_keep_monotone_laws():
    for n in (1, 2):
        for space in enumerate_spaces(n):
            for ideal in semi_ideals(n):
                ctx = Context(space, ideal)
                assert check_law(LawId.STAR1, ctx) == []
                assert check_law(LawId.GAMMA1, ctx) == []


def test_inclusion_group_skipped_for_semi_ideal(indiscrete2):
    result = check_inclusion_theorems(Context(indiscrete2, downward(2, [1, 2])))
    assert isinstance(result, Skipped) and result == []
    assert "union-closed" in result.reason


def test_violation_json_roundtrip_replays(indiscrete2):
    ctx = Context(indiscrete2, downward(2, [1, 2]))
    for v in check_star_laws(ctx):
        again = Violation.from_json(json.loads(json.dumps(v.to_json())))
        assert again == v
        assert replay(again)


def test_tampered_violation_does_not_replay(indiscrete2):
    v = check_law(LawId.STAR4, Context(indiscrete2, downward(2, [1, 2])))[0]
    assert not replay(dataclasses.replace(v, rhs=0b01))
    assert not replay(dataclasses.replace(v, ideal=all_principal_ideals(2).__next__()))


def test_scan_flagging_a_true_instance_is_reported(s2, s2_ideal, monkeypatch):
    law = LAWS[LawId.STAR1]
    monkeypatch.setitem(LAWS, LawId.STAR1, dataclasses.replace(law, scan=lambda ctx: iter([(0, 1)])))
    with pytest.raises(OracleMismatch):
        check_law(LawId.STAR1, Context(s2, s2_ideal))


def test_topology_axiom_law_reports_slot():
    from idealtop.spaces import build_space
    space = build_space(3, None, [0, 0b001, 0b010, 0b011, 0b111])
    found = check_law(LawId.TOPOLOGY_AXIOMS, Context(space, downward(3, [1, 2])))
    assert {v.detail for v in found} == {"sigma", "tau_star", "tau_omega"}
    assert all(replay(v) for v in found)


def test_describe_mentions_law(indiscrete2):
    v = check_law(LawId.STAR4, Context(indiscrete2, downward(2, [1, 2])))[0]
    assert v.describe().startswith("STAR4")
