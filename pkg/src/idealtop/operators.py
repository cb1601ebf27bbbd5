"""Operators of an ideal topological space ``(X, tau, I)`` on a finite carrier.

All quantifiers of the form "for each open U containing x" are evaluated at
the minimal neighbourhood ``N(x)`` alone.  The two ideal-sensitive tests
(``U & A`` small, ``Cl(U) & A`` small) are monotone in U and the ideal is
downward closed, so the smallest U decides.  ``Context(debug=True)``
re-checks each per-set operator against :mod:`idealtop.naive`.

The omega-style topologies use ideal membership where the classical
definitions ask for a countable set: ``tau_omega`` consists of the sets A
with ``N(x) - A`` in the ideal for every x in A.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import kernels, naive
from .errors import CapacityExceeded, GroundSetMismatch, OracleMismatch
from .ideals import Ideal
from .spaces import PointSet, SetFamily, Space, build_space, indices_of

SLOTS = ("tau_theta", "tau", "sigma", "sigma0", "tau_star", "tau_omega", "tau_theta_omega")

SLOT_LABELS = {
    "tau_theta": "τ_θ",
    "tau": "τ",
    "sigma": "σ",
    "sigma0": "σ₀",
    "tau_star": "τ*",
    "tau_omega": "τ_ω",
    "tau_theta_omega": "τ_θω",
}


@dataclass(frozen=True)
class Tables:
    """Operator values for every subset of the ground set, indexed by mask."""

    closure: list[int]
    interior: list[int]
    star: list[int]
    gamma: list[int]
    theta_closure: list[int]
    theta_interior: list[int]
    psi: list[int]
    omega_closure: list[int]
    theta_omega_closure: list[int]


@dataclass(frozen=True)
class TopologyBundle:
    tau_theta: Space
    tau: Space
    sigma: Space
    sigma0: Space
    tau_star: Space
    tau_omega: Space
    tau_theta_omega: Space

    def __getitem__(self, slot: str) -> Space:
        return getattr(self, slot)

    def families(self) -> dict[str, SetFamily]:
        return {slot: self[slot].opens for slot in SLOTS}


class Context:
    """One (space, ideal) pair with memoised ``Cl(N(x))`` and lazy operator tables."""

    def __init__(self, space: Space, ideal: Ideal, debug: bool = False):
        if ideal.n != space.n:
            raise GroundSetMismatch(f"ideal on {ideal.n} points, space on {space.n}")
        self.space = space
        self.ideal = ideal
        self.debug = debug
        self.n = space.n
        self.full = space.full
        self.nbhd = space.nbhd
        self.closed_nbhd = tuple(space.closure(nx) for nx in space.nbhd)

    def __repr__(self) -> str:
        return f"Context({self.space!r}, {self.ideal.fmt(self.space.names)})"

    def _small(self, s: PointSet) -> bool:
        return self.ideal.contains(s)

    def _verify(self, name: str, a: PointSet, fast: PointSet, slow: PointSet) -> PointSet:
        if fast != slow:
            raise OracleMismatch(
                f"{name}({indices_of(a)}): neighbourhood path {indices_of(fast)}, "
                f"quantifier path {indices_of(slow)} on {self!r}"
            )
        return fast

    # -- per-set operators ---------------------------------------------------

    def local_star(self, a: PointSet) -> PointSet:
        out = 0
        for x, nx in enumerate(self.nbhd):
            if not self._small(nx & a):
                out |= 1 << x
        if self.debug:
            slow = naive.local_star(self.n, self.space.opens.members, self._small, a)
            self._verify("local_star", a, out, slow)
        return out

    def cl_star(self, a: PointSet) -> PointSet:
        return a | self.local_star(a)

    def theta_interior(self, a: PointSet) -> PointSet:
        out = 0
        for x, cx in enumerate(self.closed_nbhd):
            if not cx & ~a:
                out |= 1 << x
        return out

    def theta_closure(self, a: PointSet) -> PointSet:
        out = 0
        for x, cx in enumerate(self.closed_nbhd):
            if cx & a:
                out |= 1 << x
        if self.debug:
            slow = naive.theta_closure(self.n, self.space.opens.members, a)
            self._verify("theta_closure", a, out, slow)
        return out

    def is_theta_open(self, a: PointSet) -> bool:
        return self.theta_interior(a) == a

    def gamma(self, a: PointSet) -> PointSet:
        out = 0
        for x, cx in enumerate(self.closed_nbhd):
            if not self._small(cx & a):
                out |= 1 << x
        if self.debug:
            slow = naive.gamma(self.n, self.space.opens.members, self._small, a)
            self._verify("gamma", a, out, slow)
        return out

    def psi_gamma(self, a: PointSet) -> PointSet:
        return self.full & ~self.gamma(self.full & ~a)

    def is_omega_open(self, a: PointSet) -> bool:
        return all(self._small(self.nbhd[x] & ~a) for x in indices_of(a))

    def omega_closure(self, a: PointSet) -> PointSet:
        """Closure of ``a`` in :meth:`tau_omega_family`."""
        return self.tables.omega_closure[a]

    def theta_omega_closure(self, a: PointSet) -> PointSet:
        out = 0
        for x, nx in enumerate(self.nbhd):
            if self.omega_closure(nx) & a:
                out |= 1 << x
        if self.debug:
            slow = naive.theta_omega_closure(self.n, self.space.opens.members, self._small, a)
            self._verify("theta_omega_closure", a, out, slow)
        return out

    # -- whole-table evaluation ----------------------------------------------

    @cached_property
    def tables(self) -> Tables:
        n = self.n
        if n > kernels.TABLE_MAX_POINTS:
            raise CapacityExceeded(f"operator tables need n <= {kernels.TABLE_MAX_POINTS}")
        full = self.full
        flags = self.ideal.flags
        closure = kernels.meet_table(n, self.nbhd)
        gamma = kernels.ideal_table(n, self.closed_nbhd, flags)
        omega_closure = kernels.family_closure_table(n, self.tau_omega_family.members)
        return Tables(
            closure=closure,
            interior=kernels.within_table(n, self.nbhd),
            star=kernels.ideal_table(n, self.nbhd, flags),
            gamma=gamma,
            theta_closure=kernels.meet_table(n, self.closed_nbhd),
            theta_interior=kernels.within_table(n, self.closed_nbhd),
            psi=[full ^ gamma[full ^ a] for a in range(1 << n)],
            omega_closure=omega_closure,
            theta_omega_closure=kernels.meet_table(n, [omega_closure[nx] for nx in self.nbhd]),
        )

    # -- derived families ----------------------------------------------------

    def _sets(self) -> range:
        return range(1 << self.n)

    @cached_property
    def tau_star_family(self) -> SetFamily:
        star, full = self.tables.star, self.full
        # Cl*(X - U) = X - U  iff  (X - U)* misses U
        return SetFamily(u for u in self._sets() if not star[full ^ u] & u)

    @cached_property
    def tau_theta_family(self) -> SetFamily:
        ti = self.tables.theta_interior
        return SetFamily(u for u in self._sets() if ti[u] == u)

    @cached_property
    def sigma_family(self) -> SetFamily:
        psi = self.tables.psi
        return SetFamily(u for u in self._sets() if not u & ~psi[u])

    @cached_property
    def sigma_family_by_gamma(self) -> SetFamily:
        """Second defining form: Γ(X - A) inside X - A."""
        gamma, full = self.tables.gamma, self.full
        return SetFamily(u for u in self._sets() if not gamma[full ^ u] & u)

    @cached_property
    def sigma0_family(self) -> SetFamily:
        t = self.tables
        return SetFamily(
            u for u in self._sets() if not u & ~t.interior[t.closure[t.psi[u]]]
        )

    @cached_property
    def tau_omega_family(self) -> SetFamily:
        if self.n > kernels.TABLE_MAX_POINTS:
            raise CapacityExceeded(f"derived families need n <= {kernels.TABLE_MAX_POINTS}")
        return SetFamily(kernels.omega_family(self.n, self.nbhd, self.ideal.flags))

    @cached_property
    def tau_theta_omega_family(self) -> SetFamily:
        toc, full = self.tables.theta_omega_closure, self.full
        return SetFamily(u for u in self._sets() if toc[full ^ u] == full ^ u)

    @cached_property
    def tau_star_closure(self) -> list[int]:
        """Closure table of :attr:`tau_star_family`."""
        return kernels.family_closure_table(self.n, self.tau_star_family.members)

    def family(self, slot: str) -> SetFamily:
        if slot == "tau":
            return self.space.opens
        return getattr(self, f"{slot}_family")

    def topology_report(self) -> dict[str, tuple | None]:
        """Topology-axiom defect per slot (None when the family is a topology)."""
        return {
            slot: kernels.topology_defect(self.n, self.family(slot).members) for slot in SLOTS
        }

    # -- derived topologies --------------------------------------------------

    def _space(self, family: SetFamily) -> Space:
        return build_space(self.n, self.space.names, family)

    def tau_star(self) -> Space:
        return self._space(self.tau_star_family)

    def tau_theta(self) -> Space:
        return self._space(self.tau_theta_family)

    def sigma(self) -> Space:
        return self._space(self.sigma_family)

    def sigma0(self) -> Space:
        return self._space(self.sigma0_family)

    def tau_omega_ideal(self) -> Space:
        return self._space(self.tau_omega_family)

    def tau_theta_omega_ideal(self) -> Space:
        return self._space(self.tau_theta_omega_family)

    def derive_all(self) -> TopologyBundle:
        """All seven topologies; raises NotATopology if any family fails the axioms.

        ``tau_omega`` and ``tau_star`` come from separate computations and are
        never identified here.
        """
        return TopologyBundle(
            tau_theta=self.tau_theta(),
            tau=self.space,
            sigma=self.sigma(),
            sigma0=self.sigma0(),
            tau_star=self.tau_star(),
            tau_omega=self.tau_omega_ideal(),
            tau_theta_omega=self.tau_theta_omega_ideal(),
        )


def derive_all(space: Space, ideal: Ideal) -> TopologyBundle:
    return Context(space, ideal).derive_all()
