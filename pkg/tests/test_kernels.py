"""The compiled and pure-Python kernels must agree call for call."""

import random

import pytest

from idealtop import kernels
from idealtop.ideals import all_principal_ideals, semi_ideals

py = kernels.backend_module("python")
try:
    native = kernels.backend_module("cython")
except ImportError:
    native = None

needs_native = pytest.mark.skipif(native is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@needs_native
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_preorders_and_opens(n):
    tables = py.preorder_tables(n)
    assert [tuple(t) for t in native.preorder_tables(n)] == [tuple(t) for t in tables]
    for nb in tables[:200]:
        opens = py.opens_from_nbhd(n, nb)
        assert list(native.opens_from_nbhd(n, nb)) == list(opens)
        assert list(native.nbhd_from_opens(n, opens)) == list(py.nbhd_from_opens(n, opens))


@needs_native
def test_tables_and_scans():
    rng = random.Random(7)
    n = 4
    ideals = list(all_principal_ideals(n)) + list(semi_ideals(n))[:20]
    for nb in rng.sample(py.preorder_tables(n), 40):
        ideal = rng.choice(ideals)
        flags = py.ideal_flags(n, ideal.gens) if ideal.kind == "principal" else ideal.flags
        sets = list(nb)
        for name in ("meet_table", "within_table"):
            assert list(getattr(native, name)(n, sets)) == list(getattr(py, name)(n, sets))
        table = py.ideal_table(n, sets, flags)
        assert list(native.ideal_table(n, sets, flags)) == list(table)
        fam = py.omega_family(n, nb, flags)
        assert list(native.omega_family(n, nb, flags)) == list(fam)
        assert list(native.family_closure_table(n, fam)) == list(py.family_closure_table(n, fam))
        members = [a for a in range(1 << n) if flags[a]]
        for name in ("monotone_failures", "union_failures", "intersection_failures"):
            assert list(getattr(native, name)(table)) == list(getattr(py, name)(table))
        assert list(native.invariance_failures(table, members)) == list(py.invariance_failures(table, members))


@needs_native
def test_ideal_flags():
    for ideal in all_principal_ideals(3):
        assert bytes(native.ideal_flags(3, ideal.gens)) == bytes(py.ideal_flags(3, ideal.gens))


@needs_native
@pytest.mark.parametrize("family", [
    [0, 1, 3], [1, 3], [0, 1], [0, 1, 2, 7], [0, 3, 6, 7], [0, 8, 7], [0, 7],
])
def test_topology_defect(family):
    assert native.topology_defect(3, family) == py.topology_defect(3, family)


def test_large_n_defect_uses_python():
    n = 30
    full = (1 << n) - 1
    assert kernels.topology_defect(n, [0, full]) is None
    assert kernels.topology_defect(n, [0, 1, 2, full])[0] == "union"
