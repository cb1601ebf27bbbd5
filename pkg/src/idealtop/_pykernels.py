"""Pure-Python implementations of the bitmask kernels.

The Cython module ``_ckernels`` exposes exactly the same functions with the
same argument conventions and result orderings; :mod:`idealtop.kernels`
picks one of the two at import time.

Conventions shared by both backends:

* a set is an int bitmask over ``n`` points;
* a *table* is a list indexed by every mask ``0 .. 2**n - 1``;
* ``flags`` is a ``bytes`` object of length ``2**n`` with ``flags[s] == 1``
  iff ``s`` belongs to the ideal.
"""

from __future__ import annotations


def preorder_tables(n):
    """Minimal-neighbourhood tables of every topology on ``n`` labelled points.

    Tables are produced in lexicographic order of ``(N(0), N(1), ...)``.
    """
    out = []
    nb = [0] * n
    cands = [[m for m in range(1 << n) if m >> x & 1] for x in range(n)]

    def place(x):
        if x == n:
            out.append(tuple(nb))
            return
        bx = 1 << x
        for m in cands[x]:
            for y in range(x):
                ny = nb[y]
                if (m >> y & 1 and ny & ~m) or (ny & bx and m & ~ny):
                    break
            else:
                nb[x] = m
                place(x + 1)

    place(0)
    return out


def opens_from_nbhd(n, nbhd):
    out = []
    for u in range(1 << n):
        rest = u
        while rest:
            low = rest & -rest
            if nbhd[low.bit_length() - 1] & ~u:
                break
            rest ^= low
        else:
            out.append(u)
    return out


def nbhd_from_opens(n, opens):
    full = (1 << n) - 1
    nb = [full] * n
    for u in opens:
        rest = u
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            nb[x] &= u
            rest ^= low
    return nb


def ideal_flags(n, gens):
    flags = bytearray(1 << n)
    for g in gens:
        s = g
        while True:
            flags[s] = 1
            if s == 0:
                break
            s = (s - 1) & g
    return bytes(flags)


def meet_table(n, sets):
    """``A -> {x : sets[x] & A != 0}`` for every A."""
    out = [0] * (1 << n)
    for a in range(1 << n):
        r = 0
        for x in range(n):
            if sets[x] & a:
                r |= 1 << x
        out[a] = r
    return out


def within_table(n, sets):
    """``A -> {x : sets[x] is a subset of A}`` for every A."""
    out = [0] * (1 << n)
    for a in range(1 << n):
        r = 0
        for x in range(n):
            if not sets[x] & ~a:
                r |= 1 << x
        out[a] = r
    return out


def ideal_table(n, sets, flags):
    """``A -> {x : sets[x] & A not in the ideal}`` for every A."""
    out = [0] * (1 << n)
    for a in range(1 << n):
        r = 0
        for x in range(n):
            if not flags[sets[x] & a]:
                r |= 1 << x
        out[a] = r
    return out


def omega_family(n, nbhd, flags):
    """Sets A such that ``nbhd[x] - A`` is in the ideal for every x in A."""
    out = []
    for a in range(1 << n):
        rest = a
        while rest:
            low = rest & -rest
            if not flags[nbhd[low.bit_length() - 1] & ~a]:
                break
            rest ^= low
        else:
            out.append(a)
    return out


def family_closure_table(n, family):
    """``A -> {x : every member containing x meets A}`` for every A."""
    around = [[u for u in family if u >> x & 1] for x in range(n)]
    out = [0] * (1 << n)
    for a in range(1 << n):
        r = 0
        for x in range(n):
            for u in around[x]:
                if not u & a:
                    break
            else:
                r |= 1 << x
        out[a] = r
    return out


def topology_defect(n, family):
    """First topology-axiom failure of ``family`` or ``None``.

    Returns ``(reason, u, v)``; members are scanned in the given order, union
    before intersection for each pair ``i < j``.
    """
    full = (1 << n) - 1
    members = list(family)
    seen = set(members)
    for u in members:
        if u & ~full:
            return ("out-of-range", u, u)
    if 0 not in seen:
        return ("missing-empty", 0, 0)
    if full not in seen:
        return ("missing-full", full, full)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if u | v not in seen:
                return ("union", u, v)
            if u & v not in seen:
                return ("intersection", u, v)
    return None


def monotone_failures(table):
    """Pairs ``A < B`` (proper subset) with ``table[A]`` not inside ``table[B]``."""
    out = []
    for b in range(len(table)):
        tb = table[b]
        a = (b - 1) & b
        while a != b:
            if table[a] & ~tb:
                out.append((a, b))
            if a == 0:
                break
            a = (a - 1) & b
    # ascending by (A, B)
    out.sort()
    return out


def union_failures(table):
    """Pairs ``A <= B`` with ``table[A | B] != table[A] | table[B]``."""
    out = []
    size = len(table)
    for a in range(size):
        ta = table[a]
        for b in range(a, size):
            if table[a | b] != ta | table[b]:
                out.append((a, b))
    return out


def intersection_failures(table):
    """Pairs ``A <= B`` with ``table[A & B] != table[A] & table[B]``."""
    out = []
    size = len(table)
    for a in range(size):
        ta = table[a]
        for b in range(a, size):
            if table[a & b] != ta & table[b]:
                out.append((a, b))
    return out


def invariance_failures(table, members):
    """Pairs ``(A, I)`` where adding or removing I changes ``table[A]``."""
    out = []
    for a in range(len(table)):
        ta = table[a]
        for i in members:
            if table[a | i] != ta or table[a & ~i] != ta:
                out.append((a, i))
    return out
