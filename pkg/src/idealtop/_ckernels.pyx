# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; see _pykernels for the reference semantics."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef int TABLE_MAX = 20


cdef u64* _masks(object seq, Py_ssize_t count) except NULL:
    cdef u64* buf = <u64*>malloc((count if count > 0 else 1) * sizeof(u64))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(count):
        buf[i] = seq[i]
    return buf


cdef inline int _lowbit(u64 m):
    return __builtin_ctzll(m)


def _check_table_size(int n):
    if n < 0 or n > TABLE_MAX:
        raise ValueError(f"table kernels support 0 <= n <= {TABLE_MAX}, got {n}")


cdef void _place(int x, int n, u64* nb, list out):
    cdef u64 m, bx = (<u64>1) << x, ny
    cdef u64 size = (<u64>1) << n
    cdef int y
    cdef bint ok
    if x == n:
        out.append(tuple([nb[y] for y in range(n)]))
        return
    for m in range(size):
        if not (m >> x) & 1:
            continue
        ok = True
        for y in range(x):
            ny = nb[y]
            if (((m >> y) & 1) and (ny & ~m)) or ((ny & bx) and (m & ~ny)):
                ok = False
                break
        if ok:
            nb[x] = m
            _place(x + 1, n, nb, out)


def preorder_tables(int n):
    _check_table_size(n)
    cdef list out = []
    cdef u64 nb[64]
    _place(0, n, nb, out)
    return out


def opens_from_nbhd(int n, nbhd):
    _check_table_size(n)
    cdef u64* nb = _masks(nbhd, n)
    cdef u64 u, rest, size = (<u64>1) << n
    cdef list out = []
    cdef bint ok
    try:
        for u in range(size):
            rest = u
            ok = True
            while rest:
                if nb[_lowbit(rest)] & ~u:
                    ok = False
                    break
                rest &= rest - 1
            if ok:
                out.append(u)
    finally:
        free(nb)
    return out


def nbhd_from_opens(int n, opens):
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef u64 nb[64]
    cdef u64 u, rest
    cdef int x
    for x in range(n):
        nb[x] = full
    for obj in opens:
        u = obj
        rest = u
        while rest:
            x = _lowbit(rest)
            nb[x] &= u
            rest &= rest - 1
    return [nb[x] for x in range(n)]


def ideal_flags(int n, gens):
    _check_table_size(n)
    cdef bytearray flags = bytearray((<u64>1) << n)
    cdef unsigned char[:] view = flags
    cdef u64 g, s
    for obj in gens:
        g = obj
        s = g
        while True:
            view[s] = 1
            if s == 0:
                break
            s = (s - 1) & g
    return bytes(flags)


def meet_table(int n, sets):
    _check_table_size(n)
    cdef u64* st = _masks(sets, n)
    cdef u64 a, r, size = (<u64>1) << n
    cdef int x
    cdef list out = [0] * size
    try:
        for a in range(size):
            r = 0
            for x in range(n):
                if st[x] & a:
                    r |= (<u64>1) << x
            out[a] = r
    finally:
        free(st)
    return out


def within_table(int n, sets):
    _check_table_size(n)
    cdef u64* st = _masks(sets, n)
    cdef u64 a, r, size = (<u64>1) << n
    cdef int x
    cdef list out = [0] * size
    try:
        for a in range(size):
            r = 0
            for x in range(n):
                if not (st[x] & ~a):
                    r |= (<u64>1) << x
            out[a] = r
    finally:
        free(st)
    return out


def ideal_table(int n, sets, const unsigned char[:] flags):
    _check_table_size(n)
    cdef u64* st = _masks(sets, n)
    cdef u64 a, r, size = (<u64>1) << n
    cdef int x
    cdef list out = [0] * size
    try:
        for a in range(size):
            r = 0
            for x in range(n):
                if not flags[st[x] & a]:
                    r |= (<u64>1) << x
            out[a] = r
    finally:
        free(st)
    return out


def omega_family(int n, nbhd, const unsigned char[:] flags):
    _check_table_size(n)
    cdef u64* nb = _masks(nbhd, n)
    cdef u64 a, rest, size = (<u64>1) << n
    cdef bint ok
    cdef list out = []
    try:
        for a in range(size):
            rest = a
            ok = True
            while rest:
                if not flags[nb[_lowbit(rest)] & ~a]:
                    ok = False
                    break
                rest &= rest - 1
            if ok:
                out.append(a)
    finally:
        free(nb)
    return out


def family_closure_table(int n, family):
    _check_table_size(n)
    cdef Py_ssize_t m = len(family), k
    cdef u64* fam = _masks(family, m)
    cdef u64 a, r, size = (<u64>1) << n, bit
    cdef int x
    cdef bint ok
    cdef list out = [0] * size
    try:
        for a in range(size):
            r = 0
            for x in range(n):
                bit = (<u64>1) << x
                ok = True
                for k in range(m):
                    if (fam[k] & bit) and not (fam[k] & a):
                        ok = False
                        break
                if ok:
                    r |= bit
            out[a] = r
    finally:
        free(fam)
    return out


def topology_defect(int n, family):
    _check_table_size(n)
    cdef Py_ssize_t m = len(family), i, j
    cdef u64* fam = _masks(family, m)
    cdef u64 full = ((<u64>1) << n) - 1, size = (<u64>1) << n
    cdef bytearray seen_buf = bytearray(size)
    cdef unsigned char[:] seen = seen_buf
    cdef u64 u, v
    try:
        for i in range(m):
            if fam[i] & ~full:
                return ("out-of-range", fam[i], fam[i])
            seen[fam[i]] = 1
        if not seen[0]:
            return ("missing-empty", 0, 0)
        if not seen[full]:
            return ("missing-full", full, full)
        for i in range(m):
            u = fam[i]
            for j in range(i + 1, m):
                v = fam[j]
                if not seen[u | v]:
                    return ("union", u, v)
                if not seen[u & v]:
                    return ("intersection", u, v)
    finally:
        free(fam)
    return None


def monotone_failures(table):
    cdef Py_ssize_t size = len(table)
    cdef u64* t = _masks(table, size)
    cdef u64 a, b, tb
    cdef list out = []
    try:
        for b in range(<u64>size):
            tb = t[b]
            a = (b - 1) & b
            while a != b:
                if t[a] & ~tb:
                    out.append((a, b))
                if a == 0:
                    break
                a = (a - 1) & b
    finally:
        free(t)
    out.sort()
    return out


def union_failures(table):
    cdef Py_ssize_t size = len(table)
    cdef u64* t = _masks(table, size)
    cdef u64 a, b, ta
    cdef list out = []
    try:
        for a in range(<u64>size):
            ta = t[a]
            for b in range(a, <u64>size):
                if t[a | b] != (ta | t[b]):
                    out.append((a, b))
    finally:
        free(t)
    return out


def intersection_failures(table):
    cdef Py_ssize_t size = len(table)
    cdef u64* t = _masks(table, size)
    cdef u64 a, b, ta
    cdef list out = []
    try:
        for a in range(<u64>size):
            ta = t[a]
            for b in range(a, <u64>size):
                if t[a & b] != (ta & t[b]):
                    out.append((a, b))
    finally:
        free(t)
    return out


def invariance_failures(table, members):
    cdef Py_ssize_t size = len(table), m = len(members), k
    cdef u64* t = _masks(table, size)
    cdef u64* mem = _masks(members, m)
    cdef u64 a, i, ta
    cdef list out = []
    try:
        for a in range(<u64>size):
            ta = t[a]
            for k in range(m):
                i = mem[k]
                if t[a | i] != ta or t[a & ~i] != ta:
                    out.append((a, i))
    finally:
        free(t)
        free(mem)
    return out
