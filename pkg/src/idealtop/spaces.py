"""Finite topological spaces over a ground set of at most 64 points.

Sets of points are plain ``int`` bitmasks: bit ``i`` stands for point ``i``.
A :class:`Space` keeps its topology twice, as the explicit open-set family
and as the table of minimal open neighbourhoods ``N(x)``.  Every "for all
open U containing x" test elsewhere in the package reduces to a single test
at ``N(x)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import CapacityExceeded, NotATopology, ParseError, PointOutOfRange

MAX_POINTS = 64
ENUMERATION_SOFT_CAP = 5

PointSet = int


# -- point-set helpers -------------------------------------------------------

def full_mask(n: int) -> PointSet:
    return (1 << n) - 1


def mask_of(indices: Iterable[int]) -> PointSet:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: PointSet) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: PointSet) -> Iterator[PointSet]:
    """Every subset of ``mask`` in ascending order."""
    subs = []
    s = mask
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return reversed(subs)


def default_names(n: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return tuple(letters[i] if i < 26 else f"p{i}" for i in range(n))


def format_set(mask: PointSet, names: Sequence[str]) -> str:
    if mask == 0:
        return "∅"
    return "{" + ",".join(names[i] for i in indices_of(mask)) + "}"


def _check_capacity(n: int) -> None:
    if not 1 <= n <= MAX_POINTS:
        raise CapacityExceeded(f"point count must be in 1..{MAX_POINTS}, got {n}")


# -- families and spaces -----------------------------------------------------

class SetFamily:
    """Deduplicated family of point sets, stored ascending by bit pattern."""

    __slots__ = ("members", "_lookup")

    def __init__(self, members: Iterable[PointSet] = ()):
        self.members: tuple[PointSet, ...] = tuple(sorted(set(members)))
        self._lookup = frozenset(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self._lookup

    def __iter__(self) -> Iterator[PointSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SetFamily):
            return self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"SetFamily({list(self.members)})"

    def __le__(self, other: SetFamily) -> bool:
        return self._lookup <= other._lookup

    def issubset(self, other: SetFamily) -> bool:
        return self._lookup <= other._lookup

    def difference(self, other: SetFamily) -> list[PointSet]:
        return [m for m in self.members if m not in other._lookup]


@dataclass(frozen=True, eq=True)
class Space:
    """A validated finite topology; build with :func:`build_space`."""

    n: int
    opens: SetFamily
    nbhd: tuple[PointSet, ...] = field(compare=False)
    names: tuple[str, ...] = field(compare=False)

    @property
    def full(self) -> PointSet:
        return full_mask(self.n)

    def minimal_nbhd(self, x: int) -> PointSet:
        if not 0 <= x < self.n:
            raise PointOutOfRange(f"point {x} not in 0..{self.n - 1}")
        return self.nbhd[x]

    def closure(self, a: PointSet) -> PointSet:
        out = 0
        for x, nx in enumerate(self.nbhd):
            if nx & a:
                out |= 1 << x
        return out

    def interior(self, a: PointSet) -> PointSet:
        out = 0
        for x, nx in enumerate(self.nbhd):
            if not nx & ~a:
                out |= 1 << x
        return out

    def is_open(self, a: PointSet) -> bool:
        return a in self.opens

    def closed_sets(self) -> SetFamily:
        full = self.full
        return SetFamily(full & ~u for u in self.opens)

    def fmt(self, a: PointSet) -> str:
        return format_set(a, self.names)

    def to_json(self) -> dict:
        return {
            "points": list(self.names),
            "opens": [indices_of(u) for u in self.opens],
        }

    def __repr__(self) -> str:
        inner = ", ".join(self.fmt(u) for u in self.opens)
        return f"Space(n={self.n}, opens=[{inner}])"


def _names_for(n: int, names: Sequence[str] | None) -> tuple[str, ...]:
    if names is None:
        return default_names(n)
    names = tuple(names)
    if len(names) != n:
        raise ValueError(f"expected {n} point names, got {len(names)}")
    return names


def _trusted(n: int, opens: Iterable[PointSet], nbhd: Sequence[PointSet],
             names: Sequence[str] | None = None) -> Space:
    return Space(n, SetFamily(opens), tuple(nbhd), _names_for(n, names))


def build_space(n: int, names: Sequence[str] | None, opens: Iterable[PointSet]) -> Space:
    """Validate ``opens`` as a topology on ``n`` points and return the Space.

    Raises CapacityExceeded for a bad point count and NotATopology, carrying a
    reason tag and the offending member pair, for a family that is not a
    topology.
    """
    _check_capacity(n)
    family = SetFamily(opens)
    defect = kernels.topology_defect(n, family.members)
    if defect is not None:
        reason, u, v = defect
        raise NotATopology(reason, (u, v) if reason in ("union", "intersection") else (u,))
    nbhd = kernels.nbhd_from_opens(n, family.members)
    return Space(n, family, tuple(nbhd), _names_for(n, names))


def generate_from_subbasis(n: int, names: Sequence[str] | None,
                           subbasis: Iterable[PointSet]) -> Space:
    """Smallest topology containing ``subbasis``."""
    _check_capacity(n)
    full = full_mask(n)
    subbasis = list(subbasis)
    for s in subbasis:
        if s & ~full:
            raise NotATopology("out-of-range", (s,))
    # finite intersections; the empty intersection is X
    base = {full}
    for s in subbasis:
        base |= {b & s for b in base}
    opens = {0}
    for b in sorted(base):
        opens |= {u | b for u in opens}
    opens = SetFamily(opens)
    return _trusted(n, opens, kernels.nbhd_from_opens(n, opens.members), names)


def minimal_nbhd(s: Space, x: int) -> PointSet:
    return s.minimal_nbhd(x)


def closure(s: Space, a: PointSet) -> PointSet:
    return s.closure(a)


def interior(s: Space, a: PointSet) -> PointSet:
    return s.interior(a)


def is_regular(s: Space) -> bool:
    """True iff every point and closed set missing it have disjoint open neighbourhoods.

    In a finite space the smallest open set around a closed set C is the
    union of ``N(c)`` over ``c`` in C, so one intersection test per pair
    suffices.
    """
    for closed in s.closed_sets():
        around = 0
        for c in indices_of(closed):
            around |= s.nbhd[c]
        for x in range(s.n):
            if not closed >> x & 1 and s.nbhd[x] & around:
                return False
    return True


# -- enumeration -------------------------------------------------------------

@lru_cache(maxsize=8)
def _enumerated(n: int) -> tuple[Space, ...]:
    names = default_names(n)
    return tuple(
        _trusted(n, kernels.opens_from_nbhd(n, nb), nb, names)
        for nb in kernels.preorder_tables(n)
    )


def enumerate_spaces(n: int) -> Iterator[Space]:
    """Every labelled topology on ``n`` points, once each, in a fixed order.

    Topologies on a finite set correspond one-to-one to preorders, so this
    walks preorders through their minimal-neighbourhood tables.  Practical up
    to about six points; the ordering is lexicographic in ``(N(0), N(1), ...)``.
    """
    _check_capacity(n)
    if n > kernels.TABLE_MAX_POINTS:
        raise CapacityExceeded(f"enumeration beyond {kernels.TABLE_MAX_POINTS} points")
    return iter(_enumerated(n))


def count_spaces(n: int) -> int:
    return len(_enumerated(n))


# -- canonical relabelling ---------------------------------------------------

def relabel(s: Space, perm: Sequence[int]) -> Space:
    """Move point ``i`` to position ``perm[i]``."""
    def move(mask: PointSet) -> PointSet:
        return mask_of(perm[i] for i in indices_of(mask))

    nbhd = [0] * s.n
    names = [""] * s.n
    for i in range(s.n):
        nbhd[perm[i]] = move(s.nbhd[i])
        names[perm[i]] = s.names[i]
    return _trusted(s.n, (move(u) for u in s.opens), nbhd, names)


def canonical_permutation(s: Space) -> tuple[int, ...]:
    """Relabelling giving the lexicographically smallest open family.

    Points are first ordered by a specialization-preorder invariant (size of
    the minimal neighbourhood, then size of the point closure); only
    permutations respecting that order are tried.
    """
    key = [(s.nbhd[x].bit_count(), s.closure(1 << x).bit_count()) for x in range(s.n)]
    order = sorted(range(s.n), key=lambda x: key[x])
    blocks: list[list[int]] = []
    for x in order:
        if blocks and key[blocks[-1][0]] == key[x]:
            blocks[-1].append(x)
        else:
            blocks.append([x])
    best = None
    best_perm: tuple[int, ...] = tuple(range(s.n))
    for choice in product(*(permutations(b) for b in blocks)):
        seq = [x for block in choice for x in block]
        perm = [0] * s.n
        for pos, x in enumerate(seq):
            perm[x] = pos
        opens = sorted(mask_of(perm[i] for i in indices_of(u)) for u in s.opens)
        if best is None or opens < best:
            best, best_perm = opens, tuple(perm)
    return best_perm


def canonical_form(s: Space) -> Space:
    return relabel(s, canonical_permutation(s))


# -- JSON --------------------------------------------------------------------

def _index_list(raw: object, n: int, path: str) -> PointSet:
    if not isinstance(raw, list):
        raise ParseError("expected a list of point indices", path)
    mask = 0
    for k, i in enumerate(raw):
        if not isinstance(i, int) or isinstance(i, bool):
            raise ParseError("point index must be an integer", f"{path}[{k}]")
        if not 0 <= i < n:
            raise ParseError(f"point index {i} out of range 0..{n - 1}", f"{path}[{k}]")
        mask |= 1 << i
    return mask


def space_from_json(doc: dict) -> Space:
    """Parse ``{"points": [...], "opens": [[...]]}`` or ``{"points": [...], "subbasis": [[...]]}``."""
    if not isinstance(doc, dict):
        raise ParseError("expected an object")
    points = doc.get("points")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise ParseError("expected a list of point names", "$.points")
    n = len(points)
    if not 1 <= n <= MAX_POINTS:
        raise CapacityExceeded(f"point count must be in 1..{MAX_POINTS}, got {n}")
    if "opens" in doc:
        key = "opens"
    elif "subbasis" in doc:
        key = "subbasis"
    else:
        raise ParseError("expected 'opens' or 'subbasis'")
    raw = doc[key]
    if not isinstance(raw, list):
        raise ParseError("expected a list of sets", f"$.{key}")
    masks = [_index_list(m, n, f"$.{key}[{k}]") for k, m in enumerate(raw)]
    if key == "subbasis":
        return generate_from_subbasis(n, points, masks)
    try:
        return build_space(n, points, masks)
    except NotATopology as exc:
        where = {m: k for k, m in reversed(list(enumerate(masks)))}
        located = [f"$.opens[{where[m]}]" for m in exc.pair if m in where]
        exc.path = ", ".join(located) if located else "$.opens"
        exc.args = (f"{exc.path}: {exc.args[0]}",)
        raise


def load_space(path: str) -> Space:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return space_from_json(doc)
