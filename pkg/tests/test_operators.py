import pytest

from idealtop import naive
from idealtop.errors import GroundSetMismatch, NotATopology
from idealtop.ideals import all_principal_ideals, downward, principal
from idealtop.operators import SLOTS, Context, derive_all
from idealtop.selftest import S2_FIXTURE
from idealtop.spaces import build_space, enumerate_spaces


def test_s2_fixture(s2, s2_ideal):
    bundle = derive_all(s2, s2_ideal)
    for slot in SLOTS:
        assert bundle[slot].opens.members == S2_FIXTURE[slot]


def test_s2_trivial_ideal(s2):
    fams = derive_all(s2, principal(2, 0)).families()
    assert fams["sigma"].members == fams["sigma0"].members == (0, 3)
    assert fams["tau_star"] == fams["tau"]


def test_indiscrete_full_ideal(indiscrete2):
    fams = derive_all(indiscrete2, principal(2, 3)).families()
    for slot in ("sigma", "sigma0", "tau_star"):
        assert fams[slot].members == (0, 1, 2, 3)


def test_operator_values_s2(s2, s2_ideal):
    ctx = Context(s2, s2_ideal)
    assert ctx.local_star(0b01) == 0
    assert ctx.local_star(0b10) == 0b10
    assert ctx.gamma(0b10) == 0b11
    assert ctx.theta_closure(0b01) == 0b11
    assert ctx.psi_gamma(0b01) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_debug_mode_agrees_with_oracle(n):
    for space in enumerate_spaces(n):
        for ideal in all_principal_ideals(n):
            ctx = Context(space, ideal, debug=True)
            for a in range(1 << n):
                ctx.local_star(a)
                ctx.gamma(a)
                ctx.theta_closure(a)
                ctx.theta_omega_closure(a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_families_match_naive_bundle(n):
    for space in enumerate_spaces(n):
        for ideal in all_principal_ideals(n):
            ctx = Context(space, ideal)
            slow = naive.bundle(n, space.opens.members, ideal.contains)
            for slot in SLOTS:
                assert list(ctx.family(slot).members) == sorted(slow[slot]), slot


def test_tables_match_pointwise():
    for space in enumerate_spaces(3):
        ctx = Context(space, principal(3, 0b010))
        t = ctx.tables
        for a in range(8):
            assert t.star[a] == ctx.local_star(a)
            assert t.gamma[a] == ctx.gamma(a)
            assert t.theta_closure[a] == ctx.theta_closure(a)
            assert t.theta_omega_closure[a] == ctx.theta_omega_closure(a)
            assert t.psi[a] == ctx.psi_gamma(a)


def test_sigma_definitions_agree():
    for space in enumerate_spaces(3):
        for ideal in all_principal_ideals(3):
            ctx = Context(space, ideal)
            assert ctx.sigma_family == ctx.sigma_family_by_gamma


def test_semi_ideal_families_can_fail_axioms():
    space = build_space(3, None, [0, 0b001, 0b010, 0b011, 0b111])
    ctx = Context(space, downward(3, [0b001, 0b010]))
    report = ctx.topology_report()
    assert report["tau"] is None
    assert report["tau_star"] == ("intersection", 0b101, 0b110)
    with pytest.raises(NotATopology):
        ctx.derive_all()


def test_ground_set_mismatch(s2):
    with pytest.raises(GroundSetMismatch):
        Context(s2, principal(3, 0))


def test_known_theta_interior_is_pointwise():
    # chain a < b < c: Int_θ of {a,b}
    chain = build_space(3, None, [0, 0b001, 0b011, 0b111])
    ctx = Context(chain, principal(3, 0))
    assert ctx.theta_interior(0b011) == 0
    assert ctx.theta_interior(0b111) == 0b111
    # pointwise Int_θ can exceed the union of θ-open subsets
    vee = build_space(3, None, [0, 0b001, 0b010, 0b011, 0b111])
    ctx = Context(vee, principal(3, 0))
    assert ctx.theta_interior(0b101) == 0b001
    assert not any(u and not u & ~0b101 for u in ctx.tau_theta_family)


def test_theta_operators_s2_and_discrete(s2, s2_ideal):
    assert Context(s2, s2_ideal).theta_interior(0b01) == 0
    discrete = build_space(2, None, [0, 1, 2, 3])
    ctx = Context(discrete, principal(2, 0))
    for a in range(4):
        assert ctx.theta_interior(a) == ctx.theta_closure(a) == a
