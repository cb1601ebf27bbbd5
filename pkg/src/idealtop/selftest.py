"""Built-in self checks run by ``idealtop selftest``.

The checks accept replacement callables so tests can inject faults and see
the suite fail (negative controls).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from . import naive
from .ideals import all_principal_ideals, principal
from .laws import check_all
from .operators import SLOTS, Context
from .spaces import Space, build_space, enumerate_spaces

EXPECTED_COUNTS = {1: 1, 2: 4, 3: 29, 4: 355}

# S2 = ({a, b}, {∅, {a}, X}) with ideal P({a}); masks a=1, b=2, X=3
S2_FIXTURE = {
    "tau_theta": (0, 3),
    "tau": (0, 1, 3),
    "sigma": (0, 2, 3),
    "sigma0": (0, 2, 3),
    "tau_star": (0, 1, 2, 3),
    "tau_omega": (0, 1, 2, 3),
    "tau_theta_omega": (0, 1, 3),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


FastOps = dict[str, Callable[[Context, int], int]]

DEFAULT_OPS: FastOps = {
    "local_star": lambda ctx, a: ctx.local_star(a),
    "gamma": lambda ctx, a: ctx.gamma(a),
    "theta_closure": lambda ctx, a: ctx.theta_closure(a),
    "theta_omega_closure": lambda ctx, a: ctx.theta_omega_closure(a),
}


def _slow(name: str, ctx: Context, a: int) -> int:
    opens = ctx.space.opens.members
    member = ctx.ideal.contains
    if name == "local_star":
        return naive.local_star(ctx.n, opens, member, a)
    if name == "gamma":
        return naive.gamma(ctx.n, opens, member, a)
    if name == "theta_closure":
        return naive.theta_closure(ctx.n, opens, a)
    return naive.theta_omega_closure(ctx.n, opens, member, a)


def check_enumerator(enumerate_fn: Callable[[int], Iterable[Space]] = enumerate_spaces,
                     max_n: int = 4) -> CheckResult:
    for n in range(1, max_n + 1):
        fast = {tuple(s.opens.members) for s in enumerate_fn(n)}
        slow = set(naive.topologies(n))
        if fast != slow or len(fast) != EXPECTED_COUNTS[n]:
            return CheckResult(
                "enumerator", False,
                f"count mismatch at n={n}: enumerator {len(fast)}, naive filter {len(slow)}, "
                f"expected {EXPECTED_COUNTS[n]}",
            )
    counts = ", ".join(str(EXPECTED_COUNTS[n]) for n in range(1, max_n + 1))
    return CheckResult("enumerator", True, f"counts {counts} match the naive filter")


def check_oracle(max_n: int = 3, ops: FastOps | None = None) -> CheckResult:
    ops = ops or DEFAULT_OPS
    checked = 0
    for n in range(1, max_n + 1):
        for space in enumerate_spaces(n):
            for ideal in all_principal_ideals(n):
                ctx = Context(space, ideal)
                for a in range(1 << n):
                    for name, fast in ops.items():
                        got, want = fast(ctx, a), _slow(name, ctx, a)
                        checked += 1
                        if got != want:
                            return CheckResult(
                                "oracle", False,
                                f"{name} mismatch on {space!r}, {ideal.fmt(space.names)}, "
                                f"A={space.fmt(a)}: {space.fmt(got)} vs {space.fmt(want)}",
                            )
    return CheckResult("oracle", True, f"{checked} neighbourhood/quantifier evaluations agree")


def check_fixture() -> CheckResult:
    s2 = build_space(2, ("a", "b"), [0b00, 0b01, 0b11])
    bundle = Context(s2, principal(2, 0b01)).derive_all()
    for slot in SLOTS:
        got = bundle[slot].opens.members
        if got != S2_FIXTURE[slot]:
            return CheckResult("fixture", False, f"{slot}: {got} != {S2_FIXTURE[slot]}")
    return CheckResult("fixture", True, "S2 with P({a}) matches the seven-topology table")


def check_sweep(max_n: int = 3) -> CheckResult:
    count = violations = 0
    for n in range(1, max_n + 1):
        for space in enumerate_spaces(n):
            for ideal in all_principal_ideals(n):
                count += 1
                violations += len(check_all(Context(space, ideal)))
    return CheckResult("sweep", violations == 0, f"{count} instances, {violations} violations")


def run_selftest(enumerate_fn: Callable[[int], Iterable[Space]] = enumerate_spaces,
                 ops: FastOps | None = None) -> list[CheckResult]:
    return [
        check_enumerator(enumerate_fn),
        check_oracle(ops=ops),
        check_fixture(),
        check_sweep(),
    ]
