"""Brute-force reference evaluations.

Everything here quantifies over the explicit open-set family ("for every open
U containing x") and tests ideal membership through a plain predicate.  No
minimal neighbourhoods, no precomputed tables and no kernels are used, so these
functions serve as the independent oracle for the fast path in
:mod:`idealtop.operators`.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

Member = Callable[[int], bool]


def points(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def all_sets(n: int) -> range:
    return range(1 << n)


def opens_at(opens: Sequence[int], x: int) -> list[int]:
    return [u for u in opens if u >> x & 1]


def closure(n: int, opens: Sequence[int], a: int) -> int:
    # x is in Cl(A) iff every open containing x meets A
    out = 0
    for x in range(n):
        if all(u & a for u in opens_at(opens, x)):
            out |= 1 << x
    return out


def interior(n: int, opens: Sequence[int], a: int) -> int:
    best = 0
    for u in opens:
        if u & ~a == 0:
            best |= u
    return best


def local_star(n: int, opens: Sequence[int], member: Member, a: int) -> int:
    out = 0
    for x in range(n):
        if all(not member(u & a) for u in opens_at(opens, x)):
            out |= 1 << x
    return out


def gamma(n: int, opens: Sequence[int], member: Member, a: int) -> int:
    out = 0
    for x in range(n):
        if all(not member(closure(n, opens, u) & a) for u in opens_at(opens, x)):
            out |= 1 << x
    return out


def theta_closure(n: int, opens: Sequence[int], a: int) -> int:
    out = 0
    for x in range(n):
        if all(closure(n, opens, u) & a for u in opens_at(opens, x)):
            out |= 1 << x
    return out


def is_theta_open(n: int, opens: Sequence[int], a: int) -> bool:
    # every x in A has some open V with Cl(V) inside A
    return all(
        any(closure(n, opens, v) & ~a == 0 for v in opens_at(opens, x))
        for x in points(a)
    )


def omega_opens(n: int, opens: Sequence[int], member: Member) -> list[int]:
    return [
        a
        for a in all_sets(n)
        if all(any(member(u & ~a) for u in opens_at(opens, x)) for x in points(a))
    ]


def theta_omega_closure(n: int, opens: Sequence[int], member: Member, a: int) -> int:
    w = omega_opens(n, opens, member)
    out = 0
    for x in range(n):
        if all(closure(n, w, u) & a for u in opens_at(opens, x)):
            out |= 1 << x
    return out


def bundle(n: int, opens: Sequence[int], member: Member) -> dict[str, list[int]]:
    """All seven derived families, straight from their defining formulas."""
    full = (1 << n) - 1
    sets = list(all_sets(n))

    def psi(a: int) -> int:
        return full & ~gamma(n, opens, member, full & ~a)

    tau_star = [
        u for u in sets
        if (full & ~u) | local_star(n, opens, member, full & ~u) == full & ~u
    ]
    return {
        "tau_theta": [u for u in sets if is_theta_open(n, opens, u)],
        "tau": sorted(opens),
        "sigma": [u for u in sets if u & ~psi(u) == 0],
        "sigma0": [
            u for u in sets
            if u & ~interior(n, opens, closure(n, opens, psi(u))) == 0
        ],
        "tau_star": tau_star,
        "tau_omega": omega_opens(n, opens, member),
        "tau_theta_omega": [
            u for u in sets
            if theta_omega_closure(n, opens, member, full & ~u) == full & ~u
        ],
    }


def is_topology(n: int, family: Iterable[int]) -> bool:
    fam = set(family)
    if 0 not in fam or (1 << n) - 1 not in fam:
        return False
    return all(u | v in fam and u & v in fam for u, v in combinations(fam, 2))


def topologies(n: int) -> list[tuple[int, ...]]:
    """Filter every family of subsets of an n-point set for the topology axioms."""
    size = 1 << n
    found = []
    for code in range(1 << size):
        fam = [s for s in range(size) if code >> s & 1]
        if is_topology(n, fam):
            found.append(tuple(fam))
    return found
