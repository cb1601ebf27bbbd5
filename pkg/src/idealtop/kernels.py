"""Backend selection for the bitmask kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``IDEALTOP_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pykernels`` module is used.  Both expose identical functions.
"""

from __future__ import annotations

import os

from . import _pykernels

TABLE_MAX_POINTS = 20

_KERNEL_NAMES = (
    "preorder_tables",
    "opens_from_nbhd",
    "nbhd_from_opens",
    "ideal_flags",
    "meet_table",
    "within_table",
    "ideal_table",
    "omega_family",
    "family_closure_table",
    "topology_defect",
    "monotone_failures",
    "union_failures",
    "intersection_failures",
    "invariance_failures",
)


def _load(force_python: bool):
    if not force_python:
        try:
            from . import _ckernels
        except ImportError:
            pass
        else:
            return _ckernels, "cython"
    return _pykernels, "python"


_impl, BACKEND = _load(bool(os.environ.get("IDEALTOP_PURE_PYTHON")))

preorder_tables = _impl.preorder_tables
opens_from_nbhd = _impl.opens_from_nbhd
ideal_flags = _impl.ideal_flags
meet_table = _impl.meet_table
within_table = _impl.within_table
ideal_table = _impl.ideal_table
omega_family = _impl.omega_family
family_closure_table = _impl.family_closure_table
monotone_failures = _impl.monotone_failures
union_failures = _impl.union_failures
intersection_failures = _impl.intersection_failures
invariance_failures = _impl.invariance_failures
nbhd_from_opens = _impl.nbhd_from_opens


def topology_defect(n, family):
    # the compiled version keeps a 2**n membership bitmap
    if n > TABLE_MAX_POINTS:
        return _pykernels.topology_defect(n, family)
    return _impl.topology_defect(n, family)


def backend_module(name: str):
    """Return the kernel module for ``"python"`` or ``"cython"`` (for benchmarks and tests)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
