"""Ideals on a finite ground set.

On a finite carrier every ideal is principal, ``P(M) = {A : A <= M}``, so
:func:`principal` covers the general case.  :func:`downward` builds the
downward closure of a generator family.  That family satisfies (I0) and (I1)
but may break union closure (I2), which makes it useful for probing which
laws actually need (I2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from . import kernels
from .errors import CapacityExceeded, GroundSetMismatch, ParseError
from .spaces import MAX_POINTS, PointSet, format_set, full_mask, indices_of, submasks

PRINCIPAL = "principal"
DOWNWARD = "downward"


@dataclass(frozen=True)
class Ideal:
    """``kind`` is ``"principal"`` (``gens == (M,)``) or ``"downward"``.

    Downward generators are normalised to their maximal elements; an empty
    generator family means the ideal ``{∅}``.
    """

    n: int
    kind: str
    gens: tuple[PointSet, ...]

    def contains(self, a: PointSet) -> bool:
        return any(not a & ~g for g in self.gens)

    __contains__ = contains

    def is_proper(self) -> bool:
        return not self.contains(full_mask(self.n))

    @cached_property
    def members(self) -> tuple[PointSet, ...]:
        found: set[PointSet] = set()
        for g in self.gens:
            found.update(submasks(g))
        return tuple(sorted(found))

    @property
    def size(self) -> int:
        if self.kind == PRINCIPAL:
            return 1 << self.gens[0].bit_count()
        return len(self.members)

    @cached_property
    def flags(self) -> bytes:
        return kernels.ideal_flags(self.n, self.gens)

    def union_violation(self) -> tuple[PointSet, PointSet] | None:
        """First member pair whose union falls outside, or None."""
        if self.kind == PRINCIPAL:
            return None
        for a, b in combinations(self.members, 2):
            if not self.contains(a | b):
                return (a, b)
        return None

    def is_union_closed(self) -> bool:
        return self.union_violation() is None

    @property
    def sort_key(self) -> tuple:
        return (self.size, self.kind != PRINCIPAL, self.gens)

    def to_json(self) -> dict:
        if self.kind == PRINCIPAL:
            return {"principal": indices_of(self.gens[0])}
        return {"generators": [indices_of(g) for g in self.gens]}

    def fmt(self, names: Sequence[str]) -> str:
        if self.kind == PRINCIPAL:
            return f"P({format_set(self.gens[0], names)})"
        return "Down(" + ", ".join(format_set(g, names) for g in self.gens) + ")"


def _check(n: int, masks: Sequence[PointSet]) -> None:
    if not 1 <= n <= MAX_POINTS:
        raise CapacityExceeded(f"point count must be in 1..{MAX_POINTS}, got {n}")
    full = full_mask(n)
    for m in masks:
        if m & ~full:
            raise GroundSetMismatch(f"set {indices_of(m)} exceeds {n} points")


def principal(n: int, m: PointSet) -> Ideal:
    _check(n, [m])
    return Ideal(n, PRINCIPAL, (m,))


def downward(n: int, generators: Sequence[PointSet]) -> Ideal:
    _check(n, generators)
    gens = set(generators) or {0}
    maximal = sorted(g for g in gens if not any(g != h and not g & ~h for h in gens))
    return Ideal(n, DOWNWARD, tuple(maximal))


def contains(ideal: Ideal, a: PointSet) -> bool:
    return ideal.contains(a)


def is_proper(ideal: Ideal) -> bool:
    return ideal.is_proper()


def is_union_closed(ideal: Ideal) -> bool:
    return ideal.is_union_closed()


def all_principal_ideals(n: int) -> Iterator[Ideal]:
    """``P(M)`` for every M, ascending by M; includes ``P(∅)`` and the improper ``P(X)``."""
    _check(n, [])
    return (Ideal(n, PRINCIPAL, (m,)) for m in range(1 << n))


def semi_ideals(n: int, generators: int = 2) -> Iterator[Ideal]:
    """Downward closures of every antichain of exactly ``generators`` nonempty sets.

    Antichains of two or more sets never give a union-closed family, so each
    of these is a genuine semi-ideal.
    """
    _check(n, [])
    sets = range(1, 1 << n)
    for combo in combinations(sets, generators):
        if all(a & ~b and b & ~a for a, b in combinations(combo, 2)):
            yield Ideal(n, DOWNWARD, combo)


def ideals_for_mode(n: int, mode: str) -> list[Ideal]:
    if mode == "principal":
        return list(all_principal_ideals(n))
    if mode == "semi":
        return list(semi_ideals(n))
    if mode == "both":
        return list(all_principal_ideals(n)) + list(semi_ideals(n))
    raise ValueError(f"unknown ideal mode {mode!r}")


def ideal_from_json(doc: object, n: int) -> Ideal:
    """Parse ``{"principal": [0]}`` or ``{"generators": [[0], [1]]}`` against ``n`` points."""
    if not isinstance(doc, dict):
        raise ParseError("expected an object")

    def index_set(raw: object, path: str) -> PointSet:
        if not isinstance(raw, list):
            raise ParseError("expected a list of point indices", path)
        mask = 0
        for k, i in enumerate(raw):
            if not isinstance(i, int) or isinstance(i, bool):
                raise ParseError("point index must be an integer", f"{path}[{k}]")
            if not 0 <= i < n:
                raise GroundSetMismatch(f"{path}[{k}]: index {i} exceeds the space's {n} points")
            mask |= 1 << i
        return mask

    if "principal" in doc:
        return principal(n, index_set(doc["principal"], "$.principal"))
    if "generators" in doc:
        raw = doc["generators"]
        if not isinstance(raw, list):
            raise ParseError("expected a list of sets", "$.generators")
        return downward(n, [index_set(g, f"$.generators[{k}]") for k, g in enumerate(raw)])
    raise ParseError("expected 'principal' or 'generators'")


def load_ideal(path: str, n: int) -> Ideal:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return ideal_from_json(doc, n)
