"""Command-line entry point: ``idealtop {analyze,sweep,witness,dot,verify,selftest}``.

Exit codes: 0 success, 1 law violation or replay failure, 2 input error.
Standard output depends only on the arguments; timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Sequence, TextIO

from . import corpus as corpus_mod
from .errors import CapacityExceeded, IdealTopError
from .ideals import load_ideal
from .laws import Violation, check_all, replay
from .operators import SLOT_LABELS, SLOTS, Context
from .relgraph import (
    PROVEN_INCLUSIONS,
    NoWitness,
    RelationReport,
    Witness,
    emit_dot,
    find_witness,
    relation_matrix,
    witness_record,
)
from .selftest import run_selftest
from .spaces import ENUMERATION_SOFT_CAP, load_space

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _dumps(doc: object) -> str:
    return json.dumps(doc, ensure_ascii=False, sort_keys=True)


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _check_points(args: argparse.Namespace) -> None:
    if args.max_points < 1:
        raise CapacityExceeded("--max-points must be at least 1")
    if args.max_points > ENUMERATION_SOFT_CAP and not args.allow_large:
        raise CapacityExceeded(
            f"--max-points above {ENUMERATION_SOFT_CAP} needs --allow-large"
        )
    if args.min_points is not None and not 1 <= args.min_points <= args.max_points:
        raise CapacityExceeded("--min-points must lie in 1..max-points")


def _sizes(args: argparse.Namespace, default_min: int) -> tuple[int, ...]:
    low = args.min_points if args.min_points is not None else default_min
    return tuple(range(low, args.max_points + 1))


def _spec(args: argparse.Namespace, sizes: tuple[int, ...]) -> corpus_mod.CorpusSpec:
    return corpus_mod.CorpusSpec(sizes, args.ideal_mode, args.exhaustive, args.sample, args.seed)


# -- analyze -----------------------------------------------------------------

def _matrix_lines(matrix: dict) -> list[str]:
    labels = [SLOT_LABELS[s] for s in SLOTS]
    width = max(len(x) for x in labels) + 1
    lines = [" " * width + "".join(x.ljust(width) for x in labels)]
    for a, la in zip(SLOTS, labels):
        cells = ["=" if a == b else ("⊆" if matrix[(a, b)] else "·") for b in SLOTS]
        lines.append(la.ljust(width) + "".join(c.ljust(width) for c in cells))
    return [line.rstrip() for line in lines]


def cmd_analyze(args: argparse.Namespace) -> int:
    space = load_space(args.space)
    ideal = load_ideal(args.ideal, space.n)
    ctx = Context(space, ideal)
    union_closed = ideal.is_union_closed()
    families = {slot: ctx.family(slot) for slot in SLOTS}
    defects = ctx.topology_report()
    if union_closed:
        families = ctx.derive_all().families()
    matrix = relation_matrix(families)
    violations = check_all(ctx)
    failed = [v for v in violations if not replay(v)]

    report = RelationReport(corpus={"ideal_mode": "principal" if union_closed else "semi",
                                    "bounds": [{"n": space.n, "spaces": 1, "ideals": 1,
                                                "instances": 1, "exhaustive": True}]})
    if union_closed:
        report.add(space, ideal, families)

    if args.format == "json":
        doc = {
            "space": space.to_json(),
            "ideal": ideal.to_json(),
            "union_closed": union_closed,
            "topologies": {s: [[i for i in range(space.n) if u >> i & 1] for u in families[s]] for s in SLOTS},
            "topology_defects": {s: list(d) if d else None for s, d in defects.items()},
            "matrix": {f"{a}<={b}": matrix[(a, b)] for a, b in matrix},
            "violations": [v.to_json() for v in violations],
            "inclusion_laws": "checked" if union_closed else "skipped: ideal is not union-closed",
        }
        text = _dumps(doc) + "\n"
    elif args.format == "dot":
        text = emit_dot(report)
    else:
        lines = [f"space: {space!r}", f"ideal: {ideal.fmt(space.names)}", "topologies:"]
        for s in SLOTS:
            body = ", ".join(space.fmt(u) for u in families[s])
            defect = defects[s]
            note = "" if defect is None else f"  (not a topology: {defect[0]})"
            lines.append(f"  {SLOT_LABELS[s]:<5} {{{body}}}{note}")
        lines.append("inclusions (row ⊆ column):")
        lines.extend("  " + row for row in _matrix_lines(matrix))
        lines.append(f"laws: {len(violations)} violations")
        if not union_closed:
            lines.append("inclusion theorems: skipped (ideal is not union-closed)")
        lines.extend("  " + v.describe() for v in violations)
        text = "\n".join(lines) + "\n"
    with _output(args.out) as fh:
        fh.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(_dumps(report.to_json()) + "\n")
    if failed or (union_closed and violations):
        return EXIT_VIOLATION
    return EXIT_OK


# -- sweep -------------------------------------------------------------------

def _sweep_chunk(items: Sequence[corpus_mod.Instance], mode: str) -> list[tuple[Violation, bool]]:
    out = []
    for inst in items:
        space, ideal = corpus_mod.resolve(inst, mode)
        for v in check_all(Context(space, ideal)):
            out.append((Violation(v.law, v.space, v.ideal, v.sets, v.lhs, v.rhs, v.detail, inst),
                        ideal.is_union_closed()))
    return out


def _summary(spec: corpus_mod.CorpusSpec, count: int) -> str:
    parts = []
    for b in corpus_mod.bounds(spec):
        if b["exhaustive"]:
            parts.append(f"{b['spaces']} spaces × {b['ideals']} ideals")
        else:
            parts.append(f"sampled from {b['spaces']} spaces × {b['ideals']} ideals, seed {spec.seed}")
    return f"{count} instances ({' + '.join(parts)})"


def cmd_sweep(args: argparse.Namespace) -> int:
    _check_points(args)
    spec = _spec(args, _sizes(args, args.max_points))
    started = time.perf_counter()
    items = corpus_mod.instances(spec)
    found: list[tuple[Violation, bool]] = []
    for part in corpus_mod.run_partitioned(_sweep_chunk, items, spec.ideal_mode, args.jobs):
        found.extend(part)
    failed = sum(1 for v, _ in found if not replay(v))
    strict = sum(1 for _, uc in found if uc)
    elapsed = time.perf_counter() - started

    with _output(args.out) as fh:
        for v, _ in found:
            fh.write(_dumps(v.to_json()) + "\n")
    if args.report:
        from .relgraph import aggregate_corpus
        report = aggregate_corpus(spec, args.jobs)
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(_dumps(report.to_json()) + "\n")

    summary = f"{_summary(spec, len(items))}, {len(found)} violations"
    if spec.ideal_mode != "principal":
        summary += f" ({strict} on union-closed ideals)"
    if failed:
        summary += f", {failed} failed replay"
    stream = sys.stderr if args.out is None and args.format == "json" else sys.stdout
    if args.format == "json":
        print(_dumps({"summary": summary, "instances": len(items), "violations": len(found),
                      "union_closed_violations": strict, "replay_failures": failed}), file=stream)
    else:
        print(summary, file=stream)
    print(f"wall time {elapsed:.2f}s", file=sys.stderr)
    return EXIT_VIOLATION if failed or strict else EXIT_OK


# -- witness -----------------------------------------------------------------

def cmd_witness(args: argparse.Namespace) -> int:
    _check_points(args)
    pair = (args.from_slot, args.notin_slot)
    result = find_witness(
        pair, args.max_points, args.ideal_mode, min_points=args.min_points or 1,
        exhaustive=args.exhaustive, sample=args.sample, seed=args.seed, jobs=args.jobs,
    )
    record = witness_record(result)
    with _output(args.out) as fh:
        fh.write(_dumps(record) + "\n")
    if args.format == "text" and args.out is not None:
        print(result.describe() if isinstance(result, Witness) else record["message"])
    if isinstance(result, NoWitness):
        return EXIT_OK
    if not record["replay"]:
        return EXIT_VIOLATION
    if pair in PROVEN_INCLUSIONS and result.ideal.is_union_closed():
        print(f"witness contradicts a checked inclusion: {result.describe()}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# -- dot / verify / selftest -------------------------------------------------

def _read_json(path: str) -> object:
    from .errors import ParseError
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_dot(args: argparse.Namespace) -> int:
    from .errors import ParseError
    doc = _read_json(args.report_file)
    try:
        report = RelationReport.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed report: missing or invalid {exc}") from exc
    with _output(args.out) as fh:
        fh.write(emit_dot(report))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Replay every record of a JSON-lines witness or violation file."""
    from .errors import ParseError
    ok = bad = 0
    with open(args.records, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
            if doc.get("kind") == "none":
                continue
            good = Witness.from_json(doc).replay() if "pair" in doc else replay(Violation.from_json(doc))
            ok += good
            bad += not good
            if not good:
                print(f"line {lineno}: replay failed", file=sys.stderr)
    print(f"{ok} replayed, {bad} failed")
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    results = run_selftest()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_VIOLATION


# -- parser ------------------------------------------------------------------

def _corpus_flags(p: argparse.ArgumentParser, default_max: int) -> None:
    p.add_argument("--max-points", type=int, default=default_max)
    p.add_argument("--min-points", type=int, default=None)
    p.add_argument("--ideal-mode", choices=("principal", "semi", "both"), default="principal")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, default=corpus_mod.DEFAULT_SAMPLE,
                   help="instances per sampled size (n >= 5)")
    p.add_argument("--exhaustive", action="store_true", help="never sample")
    p.add_argument("--allow-large", action="store_true",
                   help=f"permit --max-points above {ENUMERATION_SOFT_CAP}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idealtop", description="Finite-model lab for ideal topological spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="derived topologies, inclusions and laws for one instance")
    p.add_argument("--space", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--out")
    p.add_argument("--report", help="also write a single-instance relation report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="run the law suite over every instance of a corpus")
    _corpus_flags(p, default_max=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="JSON-lines violations (default: stdout)")
    p.add_argument("--report", help="write the aggregated relation report")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="smallest instance with a set in one slot but not another")
    p.add_argument("--from", dest="from_slot", required=True, choices=SLOTS + ("gamma", "gamma_gamma"))
    p.add_argument("--notin", dest="notin_slot", required=True, choices=SLOTS + ("gamma", "gamma_gamma"))
    _corpus_flags(p, default_max=4)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("dot", help="render a relation report as DOT")
    p.add_argument("report_file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("verify", help="replay a JSON-lines file of witnesses or violations")
    p.add_argument("records")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="built-in consistency checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except IdealTopError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
