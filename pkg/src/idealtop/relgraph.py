"""Inclusion relations between the seven derived topologies.

A :class:`RelationReport` folds per-instance inclusion matrices over a
corpus.  For every ordered pair of slots it keeps instance counts and the
smallest witness (see :attr:`Witness.key`) of a non-inclusion and of a strict
inclusion.  Reports merge associatively, so a corpus split over worker
processes gives the same report as a single pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from . import corpus as corpus_mod
from .errors import EmptyCorpus, UnknownSlotName
from .ideals import Ideal, ideal_from_json
from .operators import SLOT_LABELS, SLOTS, Context, TopologyBundle
from .spaces import PointSet, SetFamily, Space, indices_of, mask_of, space_from_json

PAIRS = tuple(permutations(SLOTS, 2))

# set-level pseudo slots for the Γ(Γ(A)) versus Γ(A) queries
GAMMA = "gamma"
GAMMA_GAMMA = "gamma_gamma"
PSEUDO_SLOTS = (GAMMA, GAMMA_GAMMA)

DISPLAY_ORDER = ("tau_theta", "tau", "tau_theta_omega", "tau_omega", "tau_star", "sigma", "sigma0")

# inclusions established by the checked laws (before transitive closure)
_PROVEN_BASE = {
    ("tau_theta", "tau"),
    ("tau_theta", "sigma"),
    ("sigma", "sigma0"),
    ("tau", "tau_star"),
    ("sigma", "tau_omega"),
    ("tau_omega", "tau_star"),
    ("tau_star", "tau_omega"),
    ("tau_theta", "tau_theta_omega"),
    ("tau_theta_omega", "tau"),
}


def _transitive(base: set[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    rel = set(base)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and a != d and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


PROVEN_INCLUSIONS = _transitive(_PROVEN_BASE)


def check_slot(name: str) -> str:
    if name not in SLOTS and name not in PSEUDO_SLOTS:
        raise UnknownSlotName(f"unknown slot {name!r}; expected one of {', '.join(SLOTS + PSEUDO_SLOTS)}")
    return name


# -- witnesses ---------------------------------------------------------------

def witness_key(space: Space, ideal: Ideal, s: PointSet) -> tuple:
    return (space.n, len(space.opens), ideal.sort_key, s, space.opens.members)


@dataclass(frozen=True)
class Witness:
    """``set`` lies in slot ``pair[0]`` but not in slot ``pair[1]``.

    For the pseudo slots, ``("gamma_gamma", "gamma")`` says Γ(Γ(A)) is not
    inside Γ(A) and ``("gamma", "gamma_gamma")`` the reverse.
    """

    space: Space
    ideal: Ideal
    set: PointSet
    pair: tuple[str, str]

    @property
    def key(self) -> tuple:
        return witness_key(self.space, self.ideal, self.set)

    def replay(self) -> bool:
        ctx = Context(self.space, self.ideal)
        a, b = self.pair
        if a in PSEUDO_SLOTS:
            g = ctx.gamma(self.set)
            gg = ctx.gamma(g)
            inner, outer = (gg, g) if a == GAMMA_GAMMA else (g, gg)
            return bool(inner & ~outer)
        if ctx.ideal.is_union_closed():
            fams = ctx.derive_all().families()
        else:
            fams = {slot: ctx.family(slot) for slot in SLOTS}
        return self.set in fams[a] and self.set not in fams[b]

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "space": self.space.to_json(),
            "ideal": self.ideal.to_json(),
            "set": indices_of(self.set),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Witness":
        space = space_from_json(doc["space"])
        return cls(
            space=space,
            ideal=ideal_from_json(doc["ideal"], space.n),
            set=mask_of(doc["set"]),
            pair=(check_slot(doc["pair"][0]), check_slot(doc["pair"][1])),
        )

    def describe(self) -> str:
        a, b = self.pair
        return (
            f"{self.space.fmt(self.set)} ∈ {SLOT_LABELS.get(a, a)} but ∉ {SLOT_LABELS.get(b, b)} "
            f"on {self.space!r} with {self.ideal.fmt(self.space.names)}"
        )


def _better(current: Witness | None, candidate: Witness | None) -> Witness | None:
    if candidate is None:
        return current
    if current is None or candidate.key < current.key:
        return candidate
    return current


# -- per-instance matrix -----------------------------------------------------

def relation_matrix(bundle: TopologyBundle | Mapping[str, SetFamily]) -> dict[tuple[str, str], bool]:
    """``(T1, T2) -> T1 ⊆ T2`` for every ordered pair of distinct slots."""
    fams = bundle.families() if isinstance(bundle, TopologyBundle) else bundle
    return {(a, b): fams[a].issubset(fams[b]) for a, b in PAIRS}


def equalities(matrix: Mapping[tuple[str, str], bool]) -> list[tuple[str, str]]:
    return [(a, b) for a, b in PAIRS if a < b and matrix[(a, b)] and matrix[(b, a)]]


# -- aggregated report -------------------------------------------------------

@dataclass
class PairStats:
    included: int = 0
    strict: int = 0
    non_inclusion: Witness | None = None
    strictness: Witness | None = None

    @property
    def status(self) -> str:
        if self.non_inclusion is None:
            return "inclusion-universal-so-far"
        return "non-inclusion-witnessed"


@dataclass
class RelationReport:
    instances: int = 0
    pairs: dict[tuple[str, str], PairStats] = field(
        default_factory=lambda: {p: PairStats() for p in PAIRS}
    )
    corpus: dict = field(default_factory=dict)

    def add(self, space: Space, ideal: Ideal, fams: Mapping[str, SetFamily]) -> None:
        self.instances += 1
        for (a, b), stats in self.pairs.items():
            fa, fb = fams[a], fams[b]
            if fa.issubset(fb):
                stats.included += 1
                extra = fb.difference(fa)
                if extra:
                    stats.strict += 1
                    key = witness_key(space, ideal, extra[0])
                    if stats.strictness is None or key < stats.strictness.key:
                        stats.strictness = Witness(space, ideal, extra[0], (b, a))
            else:
                s = fa.difference(fb)[0]
                key = witness_key(space, ideal, s)
                if stats.non_inclusion is None or key < stats.non_inclusion.key:
                    stats.non_inclusion = Witness(space, ideal, s, (a, b))

    def merge(self, other: "RelationReport") -> "RelationReport":
        out = RelationReport(self.instances + other.instances, corpus=self.corpus or other.corpus)
        for p in PAIRS:
            x, y = self.pairs[p], other.pairs[p]
            out.pairs[p] = PairStats(
                included=x.included + y.included,
                strict=x.strict + y.strict,
                non_inclusion=_better(x.non_inclusion, y.non_inclusion),
                strictness=_better(x.strictness, y.strictness),
            )
        return out

    def universal(self, a: str, b: str) -> bool:
        return self.pairs[(a, b)].non_inclusion is None

    def to_json(self) -> dict:
        pairs = []
        for (a, b), st in self.pairs.items():
            pairs.append({
                "from": a,
                "to": b,
                "status": st.status,
                "included": st.included,
                "strict": st.strict,
                "non_inclusion_witness": st.non_inclusion.to_json() if st.non_inclusion else None,
                "strictness_witness": st.strictness.to_json() if st.strictness else None,
            })
        return {"instances": self.instances, "corpus": self.corpus, "pairs": pairs}

    @classmethod
    def from_json(cls, doc: dict) -> "RelationReport":
        rep = cls(instances=doc["instances"], corpus=doc.get("corpus", {}))
        for entry in doc["pairs"]:
            key = (check_slot(entry["from"]), check_slot(entry["to"]))
            ni, sw = entry.get("non_inclusion_witness"), entry.get("strictness_witness")
            rep.pairs[key] = PairStats(
                included=entry["included"],
                strict=entry["strict"],
                non_inclusion=Witness.from_json(ni) if ni else None,
                strictness=Witness.from_json(sw) if sw else None,
            )
        return rep


def instance_families(space: Space, ideal: Ideal) -> dict[str, SetFamily]:
    ctx = Context(space, ideal)
    return {slot: ctx.family(slot) for slot in SLOTS}


def aggregate(instances: Iterable[tuple[Space, Ideal]]) -> RelationReport:
    report = RelationReport()
    for space, ideal in instances:
        report.add(space, ideal, instance_families(space, ideal))
    if report.instances == 0:
        raise EmptyCorpus("aggregate needs at least one instance")
    return report


def _aggregate_chunk(items: Sequence[corpus_mod.Instance], mode: str) -> RelationReport:
    report = RelationReport()
    for inst in items:
        space, ideal = corpus_mod.resolve(inst, mode)
        if ideal.is_union_closed():
            report.add(space, ideal, instance_families(space, ideal))
    return report


def aggregate_corpus(spec: corpus_mod.CorpusSpec, jobs: int = 1) -> RelationReport:
    """Aggregate over union-closed instances of ``spec``; ``jobs`` never changes the result."""
    items = corpus_mod.instances(spec)
    if not items:
        raise EmptyCorpus("corpus is empty")
    parts = corpus_mod.run_partitioned(_aggregate_chunk, items, spec.ideal_mode, jobs)
    report = RelationReport()
    for part in parts:
        report = report.merge(part)
    report.corpus = {"ideal_mode": spec.ideal_mode, "bounds": corpus_mod.bounds(spec)}
    return report


# -- witness search ----------------------------------------------------------

@dataclass(frozen=True)
class NoWitness:
    pair: tuple[str, str]
    ideal_mode: str
    bounds: list
    summary: str

    def to_json(self) -> dict:
        return {
            "kind": "none",
            "pair": list(self.pair),
            "ideal_mode": self.ideal_mode,
            "bounds": self.bounds,
            "message": f"no finite witness within bounds; exhausted {self.summary}",
        }


def _search_chunk(items: Sequence[corpus_mod.Instance], mode: str, pair: tuple[str, str]) -> Witness | None:
    a, b = pair
    best: Witness | None = None
    for inst in items:
        space, ideal = corpus_mod.resolve(inst, mode)
        ctx = Context(space, ideal)
        if a in PSEUDO_SLOTS:
            g = ctx.tables.gamma
            for s in range(1 << space.n):
                gg = g[g[s]]
                inner, outer = (gg, g[s]) if a == GAMMA_GAMMA else (g[s], gg)
                if inner & ~outer:
                    best = _better(best, Witness(space, ideal, s, pair))
                    break
            continue
        extra = ctx.family(a).difference(ctx.family(b))
        if extra:
            best = _better(best, Witness(space, ideal, extra[0], pair))
    return best


class _SearchWorker:
    def __init__(self, pair):
        self.pair = pair

    def __call__(self, items, mode):
        return _search_chunk(items, mode, self.pair)


def find_witness(pair: tuple[str, str], max_points: int, ideal_mode: str = "principal",
                 min_points: int = 1, exhaustive: bool = False, sample: int = corpus_mod.DEFAULT_SAMPLE,
                 seed: int = 0, jobs: int = 1) -> Witness | NoWitness:
    """Smallest witness for ``pair[0] ⊄ pair[1]`` or a record of the scanned bounds.

    Sizes are scanned in increasing order and the search stops at the first
    size that has a witness, since point count leads the minimality order.
    """
    a, b = check_slot(pair[0]), check_slot(pair[1])
    if a == b:
        raise UnknownSlotName("a witness query needs two distinct slots")
    if (a in PSEUDO_SLOTS) != (b in PSEUDO_SLOTS):
        raise UnknownSlotName("Γ queries pair 'gamma' with 'gamma_gamma'")
    scanned = []
    for n in range(min_points, max_points + 1):
        spec = corpus_mod.CorpusSpec((n,), ideal_mode, exhaustive, sample, seed)
        items = corpus_mod.instances(spec)
        scanned.append(n)
        best = None
        for part in corpus_mod.run_partitioned(_SearchWorker((a, b)), items, ideal_mode, jobs):
            best = _better(best, part)
        if best is not None:
            return best
    spec = corpus_mod.CorpusSpec(tuple(scanned), ideal_mode, exhaustive, sample, seed)
    return NoWitness((a, b), ideal_mode, corpus_mod.bounds(spec), corpus_mod.bounds_summary(spec))


def witness_record(result: Witness | NoWitness) -> dict:
    if isinstance(result, NoWitness):
        return result.to_json()
    doc = {"kind": "witness"}
    doc.update(result.to_json())
    doc["replay"] = result.replay()
    return doc


# -- DOT ---------------------------------------------------------------------

def equality_classes(report: RelationReport) -> list[tuple[str, ...]]:
    """Slots identified by bidirectional inclusion over the whole corpus."""
    parent = {s: s for s in SLOTS}

    def find(s: str) -> str:
        while parent[s] != s:
            s = parent[s]
        return s

    for a, b in PAIRS:
        if report.universal(a, b) and report.universal(b, a):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb, key=SLOTS.index)] = min(ra, rb, key=SLOTS.index)
    groups: dict[str, list[str]] = {}
    for s in SLOTS:
        groups.setdefault(find(s), []).append(s)
    classes = [tuple(sorted(g, key=DISPLAY_ORDER.index)) for g in groups.values()]
    return sorted(classes, key=lambda c: min(DISPLAY_ORDER.index(s) for s in c))


def strict_edges(report: RelationReport, classes: Sequence[tuple[str, ...]]) -> set[tuple[int, int]]:
    """Class index pairs ``(i, j)`` with class i universally and strictly inside class j."""
    out = set()
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            if i != j and report.universal(ci[0], cj[0]) and not report.universal(cj[0], ci[0]):
                out.add((i, j))
    return out


def hasse(edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Drop edges implied by a two-step path; ``edges`` must be transitive."""
    nodes = {x for e in edges for x in e}
    return {
        (i, k) for (i, k) in edges
        if not any((i, j) in edges and (j, k) in edges for j in nodes if j not in (i, k))
    }


def _node_id(cls: tuple[str, ...]) -> str:
    return "=".join(cls)


def _node_label(cls: tuple[str, ...]) -> str:
    return " = ".join(SLOT_LABELS[s] for s in cls)


def _proven(ci: tuple[str, ...], cj: tuple[str, ...]) -> bool:
    return any((a, b) in PROVEN_INCLUSIONS for a in ci for b in cj)


def emit_dot(report: RelationReport) -> str:
    """Deterministic DOT rendering of ``report``.

    Solid edges are Hasse-reduced strict inclusions backed by a checked law;
    dotted blue edges are strict inclusions seen on the whole corpus but not
    backed by a law; dashed red double-headed edges mark pairs with witnessed
    non-inclusions in both directions.
    """
    lines = ["digraph relations {"]
    bounds = report.corpus.get("bounds", [])
    sizes = ",".join(str(b["n"]) for b in bounds) or "-"
    lines.append(
        f"  // instances={report.instances} ideal_mode={report.corpus.get('ideal_mode', '-')} sizes={sizes}"
    )
    lines.append("  rankdir=BT;")
    lines.append('  node [shape=box, fontname="DejaVu Sans"];')
    if report.instances == 0:
        lines.append("}")
        return "\n".join(lines) + "\n"
    classes = equality_classes(report)
    for cls in classes:
        lines.append(f'  "{_node_id(cls)}" [label="{_node_label(cls)}"];')
    for i, j in sorted(hasse(strict_edges(report, classes))):
        style = "solid" if _proven(classes[i], classes[j]) else 'dotted, color="blue"'
        lines.append(f'  "{_node_id(classes[i])}" -> "{_node_id(classes[j])}" [style={style}];')
    for i, ci in enumerate(classes):
        for j in range(i + 1, len(classes)):
            cj = classes[j]
            if not report.universal(ci[0], cj[0]) and not report.universal(cj[0], ci[0]):
                lines.append(
                    f'  "{_node_id(ci)}" -> "{_node_id(cj)}" '
                    '[style=dashed, color="red", dir=both, constraint=false];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
