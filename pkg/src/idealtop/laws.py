"""Exhaustive law checking for one (space, ideal) context.

Every law has two halves:

* ``scan`` walks all relevant tuples of sets using the whole-subset operator
  tables (and the bitmask kernels for the pairwise laws), yielding the
  tuples on which the law fails;
* ``evaluate`` re-evaluates the law on one tuple with the per-set operators
  and returns ``(lhs, rhs, holds)``.

A :class:`Violation` is only emitted after ``evaluate`` confirms the failure,
so a stored violation can be replayed on a fresh context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator

from . import kernels
from .errors import OracleMismatch
from .ideals import Ideal, ideal_from_json
from .operators import SLOTS, Context
from .spaces import Space, indices_of, is_regular, mask_of, space_from_json


class LawId(str, Enum):
    STAR1 = "STAR1"
    STAR2 = "STAR2"
    STAR3 = "STAR3"
    STAR4 = "STAR4"
    STAR5 = "STAR5"
    GAMMA1 = "GAMMA1"
    GAMMA2 = "GAMMA2"
    GAMMA3 = "GAMMA3"
    GAMMA4 = "GAMMA4"
    PSI1 = "PSI1"
    PSI2 = "PSI2"
    PSI3 = "PSI3"
    PSI4 = "PSI4"
    SIGMA_CHAR = "SIGMA_CHAR"
    THETA_OMEGA_CHAR = "THETA_OMEGA_CHAR"
    INCL_SIGMA_OMEGA = "INCL_SIGMA_OMEGA"
    EQ_OMEGA_STAR = "EQ_OMEGA_STAR"
    CL_OMEGA_STAR = "CL_OMEGA_STAR"
    CHAIN_THETA_SIGMA_SIGMA0 = "CHAIN_THETA_SIGMA_SIGMA0"
    CHAIN_CL = "CHAIN_CL"
    IDEAL_OPEN_THETA_OMEGA = "IDEAL_OPEN_THETA_OMEGA"
    REGULAR_COLLAPSE = "REGULAR_COLLAPSE"
    TAU_IN_STAR = "TAU_IN_STAR"
    THETA_OMEGA_IN_TAU = "THETA_OMEGA_IN_TAU"
    TOPOLOGY_AXIOMS = "TOPOLOGY_AXIOMS"

    def __str__(self) -> str:
        return self.value


LAW_ORDER = {law: i for i, law in enumerate(LawId)}


@dataclass(frozen=True)
class Violation:
    law: LawId
    space: Space
    ideal: Ideal
    sets: tuple[int, ...]
    lhs: object
    rhs: object
    detail: str = ""
    instance: tuple[int, int, int] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        doc = {
            "law": self.law.value,
            "space": self.space.to_json(),
            "ideal": self.ideal.to_json(),
            "sets": [indices_of(s) for s in self.sets],
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "detail": self.detail,
        }
        if self.instance is not None:
            doc["instance"] = list(self.instance)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Violation":
        space = space_from_json(doc["space"])
        inst = doc.get("instance")
        return cls(
            law=LawId(doc["law"]),
            space=space,
            ideal=ideal_from_json(doc["ideal"], space.n),
            sets=tuple(mask_of(s) for s in doc["sets"]),
            lhs=_native(doc["lhs"]),
            rhs=_native(doc["rhs"]),
            detail=doc.get("detail", ""),
            instance=tuple(inst) if inst is not None else None,
        )

    def describe(self) -> str:
        names = self.space.names
        sets = ", ".join(self.space.fmt(s) for s in self.sets)
        extra = f" [{self.detail}]" if self.detail else ""
        return (
            f"{self.law}: {self.space!r} with {self.ideal.fmt(names)} at ({sets}): "
            f"lhs={_jsonable(self.lhs)} rhs={_jsonable(self.rhs)}{extra}"
        )


def _jsonable(value: object) -> object:
    # masks become index lists, booleans stay, tuples become lists
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return indices_of(value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    raise TypeError(f"cannot serialise {value!r}")


def _native(value: object) -> object:
    if isinstance(value, bool):
        return value
    if isinstance(value, list):
        if all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            return mask_of(value)
        return tuple(_native(v) for v in value)
    raise TypeError(f"cannot read {value!r}")


class Skipped(list):
    """Empty violation list marking a law group that does not apply to the context."""

    def __init__(self, reason: str):
        super().__init__()
        self.reason = reason


# -- evaluation on a single witness -----------------------------------------

Evaluation = tuple[object, object, bool]


def _sub(a: int, b: int) -> bool:
    return not a & ~b


def _in_sigma(ctx: Context, a: int) -> bool:
    return _sub(a, ctx.psi_gamma(a))


def _in_tau_star(ctx: Context, a: int) -> bool:
    comp = ctx.full & ~a
    return ctx.cl_star(comp) == comp


def _in_tau_theta_omega(ctx: Context, a: int) -> bool:
    comp = ctx.full & ~a
    return ctx.theta_omega_closure(comp) == comp


def _in_sigma0(ctx: Context, a: int) -> bool:
    s = ctx.space
    return _sub(a, s.interior(s.closure(ctx.psi_gamma(a))))


def _ev_star1(ctx, sets, _):
    a, b = sets
    lhs, rhs = ctx.local_star(a), ctx.local_star(b)
    return lhs, rhs, not _sub(a, b) or _sub(lhs, rhs)


def _ev_star2(ctx, sets, _):
    (a,) = sets
    st = ctx.local_star(a)
    cl_st, cl_a = ctx.space.closure(st), ctx.space.closure(a)
    return (st, st), (cl_st, cl_a), st == cl_st and _sub(st, cl_a)


def _ev_star3(ctx, sets, _):
    (a,) = sets
    st = ctx.local_star(a)
    lhs = ctx.local_star(st)
    return lhs, st, _sub(lhs, st)


def _ev_star4(ctx, sets, _):
    a, b = sets
    lhs = ctx.local_star(a | b)
    rhs = ctx.local_star(a) | ctx.local_star(b)
    return lhs, rhs, lhs == rhs


def _invariance(op: Callable[[int], int]):
    def evaluate(ctx, sets, _):
        a, i = sets
        base = op(ctx)(a)
        moved = (op(ctx)(a | i), op(ctx)(a & ~i))
        return base, moved, ctx.ideal.contains(i) is False or moved == (base, base)

    return evaluate


def _ev_gamma1(ctx, sets, _):
    (a,) = sets
    lhs, rhs = ctx.local_star(a), ctx.gamma(a)
    return lhs, rhs, _sub(lhs, rhs)


def _ev_gamma2(ctx, sets, _):
    (a,) = sets
    g = ctx.gamma(a)
    cl_g, clt = ctx.space.closure(g), ctx.theta_closure(a)
    return (g, g), (cl_g, clt), g == cl_g and _sub(g, clt)


def _ev_gamma3(ctx, sets, _):
    a, b = sets
    lhs = ctx.gamma(a | b)
    rhs = ctx.gamma(a) | ctx.gamma(b)
    return lhs, rhs, lhs == rhs


def _ev_psi1(ctx, sets, _):
    (a,) = sets
    p = ctx.psi_gamma(a)
    rhs = ctx.space.interior(p)
    return p, rhs, p == rhs


def _ev_psi2(ctx, sets, _):
    a, b = sets
    lhs = ctx.psi_gamma(a & b)
    rhs = ctx.psi_gamma(a) & ctx.psi_gamma(b)
    return lhs, rhs, lhs == rhs


def _ev_psi4(ctx, sets, _):
    (u,) = sets
    theta_open = ctx.is_theta_open(u)
    p = ctx.psi_gamma(u)
    return u, p, not theta_open or _sub(u, p)


def _ev_sigma_char(ctx, sets, _):
    (a,) = sets
    by_psi = _in_sigma(ctx, a)
    by_gamma = _sub(ctx.gamma(ctx.full & ~a), ctx.full & ~a)
    char = all(ctx.ideal.contains(ctx.closed_nbhd[x] & ~a) for x in indices_of(a))
    return (by_psi, by_gamma), (char, char), by_psi == by_gamma == char


def _ev_theta_omega_char(ctx, sets, _):
    (a,) = sets
    member = _in_tau_theta_omega(ctx, a)
    char = all(_sub(ctx.omega_closure(ctx.nbhd[x]), a) for x in indices_of(a))
    return member, char, member == char


def _ev_incl_sigma_omega(ctx, sets, _):
    (a,) = sets
    lhs, rhs = _in_sigma(ctx, a), ctx.is_omega_open(a)
    return lhs, rhs, not lhs or rhs


def _ev_eq_omega_star(ctx, sets, _):
    (a,) = sets
    lhs, rhs = ctx.is_omega_open(a), _in_tau_star(ctx, a)
    return lhs, rhs, lhs == rhs


def _star_closure(ctx: Context, a: int) -> int:
    # closure in tau*: points all of whose tau*-open neighbourhoods meet a
    out = 0
    for x in range(ctx.n):
        if all(u & a for u in ctx.tau_star_family if u >> x & 1):
            out |= 1 << x
    return out


def _ev_cl_omega_star(ctx, sets, _):
    (a,) = sets
    lhs, rhs = ctx.omega_closure(a), _star_closure(ctx, a)
    return lhs, rhs, lhs == rhs


def _ev_chain_theta_sigma(ctx, sets, _):
    (a,) = sets
    in_theta = ctx.is_theta_open(a)
    in_sigma = _in_sigma(ctx, a)
    in_sigma0 = _in_sigma0(ctx, a)
    ok = (not in_theta or in_sigma) and (not in_sigma or in_sigma0)
    return (in_theta, in_sigma), (in_sigma, in_sigma0), ok


def _ev_chain_cl(ctx, sets, _):
    (a,) = sets
    cl, clto, clt = ctx.space.closure(a), ctx.theta_omega_closure(a), ctx.theta_closure(a)
    return (cl, clto), (clto, clt), _sub(cl, clto) and _sub(clto, clt)


def _ev_ideal_open(ctx, sets, _):
    (u,) = sets
    premise = ctx.space.is_open(u) and ctx.ideal.contains(u)
    member = _in_tau_theta_omega(ctx, u)
    return premise, member, not premise or member


def _ev_regular(ctx, sets, _):
    (u,) = sets
    regular = is_regular(ctx.space)
    lhs, rhs = ctx.space.is_open(u), ctx.is_theta_open(u)
    return (regular, lhs), (regular, rhs), not regular or lhs == rhs


def _ev_tau_in_star(ctx, sets, _):
    (u,) = sets
    lhs, rhs = ctx.space.is_open(u), _in_tau_star(ctx, u)
    return lhs, rhs, not lhs or rhs


def _ev_theta_omega_in_tau(ctx, sets, _):
    (c,) = sets
    u = ctx.full & ~c
    th, tho, op = ctx.is_theta_open(u), _in_tau_theta_omega(ctx, u), ctx.space.is_open(u)
    return (th, tho), (tho, op), (not th or tho) and (not tho or op)


def _ev_topology(ctx, sets, detail):
    defect = kernels.topology_defect(ctx.n, ctx.family(detail).members)
    found = tuple(defect[1:]) if defect else ()
    return found, tuple(sets), defect is None


# -- table-driven scans ------------------------------------------------------

def _singles(pred: Callable[[int], bool]) -> Callable[[Context], Iterator[tuple]]:
    def scan(ctx: Context) -> Iterator[tuple]:
        for a in range(1 << ctx.n):
            if not pred(ctx, a):
                yield (a,)

    return scan


def _table(name: str) -> Callable[[Context], list[int]]:
    return lambda ctx: getattr(ctx.tables, name)


def _scan_monotone(name):
    return lambda ctx: kernels.monotone_failures(_table(name)(ctx))


def _scan_union(name):
    return lambda ctx: kernels.union_failures(_table(name)(ctx))


def _scan_intersection(name):
    return lambda ctx: kernels.intersection_failures(_table(name)(ctx))


def _scan_invariance(name):
    return lambda ctx: kernels.invariance_failures(_table(name)(ctx), ctx.ideal.members)


def _t(ctx):
    return ctx.tables


def _pred_star2(ctx, a):
    t = _t(ctx)
    st = t.star[a]
    return t.closure[st] == st and _sub(st, t.closure[a])


def _pred_gamma2(ctx, a):
    t = _t(ctx)
    g = t.gamma[a]
    return t.closure[g] == g and _sub(g, t.theta_closure[a])


def _pred_sigma_char(ctx, a):
    in_psi = a in ctx.sigma_family
    in_gamma = a in ctx.sigma_family_by_gamma
    flags = ctx.ideal.flags
    char = all(flags[ctx.closed_nbhd[x] & ~a] for x in indices_of(a))
    return in_psi == in_gamma == char


def _pred_theta_omega_char(ctx, a):
    oc = ctx.tables.omega_closure
    char = all(_sub(oc[ctx.nbhd[x]], a) for x in indices_of(a))
    return (a in ctx.tau_theta_omega_family) == char


def _pred_chain_cl(ctx, a):
    t = _t(ctx)
    return _sub(t.closure[a], t.theta_omega_closure[a]) and _sub(
        t.theta_omega_closure[a], t.theta_closure[a]
    )


def _family_inclusion(small: str, big: str):
    def pred(ctx, a):
        return a not in ctx.family(small) or a in ctx.family(big)

    return pred


def _pred_eq_omega_star(ctx, a):
    return (a in ctx.tau_omega_family) == (a in ctx.tau_star_family)


def _pred_cl_omega_star(ctx, a):
    return ctx.tables.omega_closure[a] == ctx.tau_star_closure[a]


def _pred_chain_theta_sigma(ctx, a):
    return _family_inclusion("tau_theta", "sigma")(ctx, a) and _family_inclusion(
        "sigma", "sigma0"
    )(ctx, a)


def _pred_ideal_open(ctx, a):
    return not (a in ctx.space.opens and ctx.ideal.flags[a]) or a in ctx.tau_theta_omega_family


def _scan_regular(ctx):
    if not is_regular(ctx.space):
        return
    for a in range(1 << ctx.n):
        if (a in ctx.space.opens) != (a in ctx.tau_theta_family):
            yield (a,)


def _pred_theta_omega_in_tau(ctx, c):
    u = ctx.full ^ c
    return _family_inclusion("tau_theta", "tau_theta_omega")(ctx, u) and _family_inclusion(
        "tau_theta_omega", "tau"
    )(ctx, u)


def _scan_topology(ctx):
    for slot in SLOTS:
        defect = kernels.topology_defect(ctx.n, ctx.family(slot).members)
        if defect is not None:
            yield (defect[1], defect[2]), slot


@dataclass(frozen=True)
class Law:
    code: LawId
    group: str
    statement: str
    evaluate: Callable[[Context, tuple, str], Evaluation]
    scan: Callable[[Context], Iterable]
    needs_union_closure: bool


def _law(code, group, statement, evaluate, scan, needs_union_closure=False):
    return Law(LawId(code), group, statement, evaluate, scan, needs_union_closure)


LAWS: dict[LawId, Law] = {
    law.code: law
    for law in [
        _law("STAR1", "star", "A ⊆ B ⇒ A* ⊆ B*", _ev_star1, _scan_monotone("star")),
        _law("STAR2", "star", "A* = Cl(A*) ⊆ Cl(A)", _ev_star2, _singles(_pred_star2)),
        _law("STAR3", "star", "(A*)* ⊆ A*", _ev_star3,
             _singles(lambda c, a: _sub(_t(c).star[_t(c).star[a]], _t(c).star[a]))),
        _law("STAR4", "star", "(A ∪ B)* = A* ∪ B*", _ev_star4, _scan_union("star"), True),
        _law("STAR5", "star", "(A ∪ I)* = A* = (A − I)* for I in the ideal",
             _invariance(lambda c: c.local_star), _scan_invariance("star"), True),
        _law("GAMMA1", "gamma_psi", "A* ⊆ Γ(A)", _ev_gamma1,
             _singles(lambda c, a: _sub(_t(c).star[a], _t(c).gamma[a]))),
        _law("GAMMA2", "gamma_psi", "Γ(A) = Cl(Γ(A)) ⊆ Cl_θ(A)", _ev_gamma2,
             _singles(_pred_gamma2)),
        _law("GAMMA3", "gamma_psi", "Γ(A ∪ B) = Γ(A) ∪ Γ(B)", _ev_gamma3,
             _scan_union("gamma"), True),
        _law("GAMMA4", "gamma_psi", "Γ(A ∪ I) = Γ(A) = Γ(A − I) for I in the ideal",
             _invariance(lambda c: c.gamma), _scan_invariance("gamma"), True),
        _law("PSI1", "gamma_psi", "ψ(A) = Int(ψ(A))", _ev_psi1,
             _singles(lambda c, a: _t(c).interior[_t(c).psi[a]] == _t(c).psi[a])),
        _law("PSI2", "gamma_psi", "ψ(A ∩ B) = ψ(A) ∩ ψ(B)", _ev_psi2,
             _scan_intersection("psi"), True),
        _law("PSI3", "gamma_psi", "ψ(A ∪ I) = ψ(A) = ψ(A − I) for I in the ideal",
             _invariance(lambda c: c.psi_gamma), _scan_invariance("psi"), True),
        _law("PSI4", "gamma_psi", "U θ-open ⇒ U ⊆ ψ(U)", _ev_psi4,
             _singles(lambda c, u: _t(c).theta_interior[u] != u or _sub(u, _t(c).psi[u]))),
        _law("SIGMA_CHAR", "characterization",
             "A ∈ σ ⇔ Γ(X−A) ⊆ X−A ⇔ ∀x∈A: Cl(N(x)) − A ∈ I",
             _ev_sigma_char, _singles(_pred_sigma_char)),
        _law("THETA_OMEGA_CHAR", "characterization",
             "A ∈ τ_θω ⇔ ∀x∈A: Cl_ω(N(x)) ⊆ A",
             _ev_theta_omega_char, _singles(_pred_theta_omega_char)),
        _law("INCL_SIGMA_OMEGA", "inclusion", "σ ⊆ τ_ω", _ev_incl_sigma_omega,
             _singles(_family_inclusion("sigma", "tau_omega")), True),
        _law("EQ_OMEGA_STAR", "inclusion", "τ_ω = τ*", _ev_eq_omega_star,
             _singles(_pred_eq_omega_star), True),
        _law("CL_OMEGA_STAR", "inclusion", "closure in τ_ω = closure in τ*",
             _ev_cl_omega_star, _singles(_pred_cl_omega_star), True),
        _law("CHAIN_THETA_SIGMA_SIGMA0", "inclusion", "τ_θ ⊆ σ ⊆ σ₀",
             _ev_chain_theta_sigma, _singles(_pred_chain_theta_sigma), True),
        _law("CHAIN_CL", "inclusion", "Cl(A) ⊆ Cl_θω(A) ⊆ Cl_θ(A)", _ev_chain_cl,
             _singles(_pred_chain_cl), True),
        _law("IDEAL_OPEN_THETA_OMEGA", "inclusion", "U open and U ∈ I ⇒ U ∈ τ_θω",
             _ev_ideal_open, _singles(_pred_ideal_open), True),
        _law("REGULAR_COLLAPSE", "inclusion", "regular ⇒ τ_θ = τ", _ev_regular,
             _scan_regular, True),
        _law("TAU_IN_STAR", "inclusion", "τ ⊆ τ*", _ev_tau_in_star,
             _singles(_family_inclusion("tau", "tau_star")), True),
        _law("THETA_OMEGA_IN_TAU", "inclusion",
             "θ-closed ⇒ θω-closed ⇒ closed (as closed-set families)",
             _ev_theta_omega_in_tau, _singles(_pred_theta_omega_in_tau), True),
        _law("TOPOLOGY_AXIOMS", "inclusion", "every derived family is a topology",
             _ev_topology, _scan_topology, True),
    ]
}

GROUPS = ("star", "gamma_psi", "characterization", "inclusion")


def evaluate(law: LawId, ctx: Context, sets: tuple[int, ...], detail: str = "") -> Evaluation:
    return LAWS[LawId(law)].evaluate(ctx, tuple(sets), detail)


def check_law(law: LawId, ctx: Context) -> list[Violation]:
    spec = LAWS[LawId(law)]
    out = []
    for item in spec.scan(ctx):
        sets, detail = item if law == LawId.TOPOLOGY_AXIOMS else (item, "")
        lhs, rhs, holds = spec.evaluate(ctx, sets, detail)
        if holds:
            raise OracleMismatch(
                f"{spec.code}: table scan flagged {[indices_of(s) for s in sets]} "
                f"but per-set evaluation holds on {ctx!r}"
            )
        out.append(Violation(spec.code, ctx.space, ctx.ideal, tuple(sets), lhs, rhs, detail))
    return out


def _check_group(group: str, ctx: Context) -> list[Violation]:
    out: list[Violation] = []
    for law in LAWS.values():
        if law.group == group:
            out.extend(check_law(law.code, ctx))
    return out


def check_star_laws(ctx: Context) -> list[Violation]:
    return _check_group("star", ctx)


def check_gamma_psi_laws(ctx: Context) -> list[Violation]:
    return _check_group("gamma_psi", ctx)


def check_characterizations(ctx: Context) -> list[Violation]:
    return _check_group("characterization", ctx)


def check_inclusion_theorems(ctx: Context) -> list[Violation]:
    """Inclusion theorems; skipped (empty :class:`Skipped`) unless the ideal is union-closed."""
    if not ctx.ideal.is_union_closed():
        return Skipped("ideal is not union-closed")
    return _check_group("inclusion", ctx)


def check_all(ctx: Context) -> list[Violation]:
    return (
        check_star_laws(ctx)
        + check_gamma_psi_laws(ctx)
        + check_characterizations(ctx)
        + check_inclusion_theorems(ctx)
    )


def replay(v: Violation) -> bool:
    """Re-evaluate ``v`` on a fresh context; True iff the identical failure reappears."""
    ctx = Context(v.space, v.ideal)
    lhs, rhs, holds = evaluate(v.law, ctx, v.sets, v.detail)
    return (
        not holds
        and _jsonable(lhs) == _jsonable(v.lhs)
        and _jsonable(rhs) == _jsonable(v.rhs)
    )
