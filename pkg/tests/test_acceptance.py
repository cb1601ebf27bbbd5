"""Acceptance criteria 1-9.  Each prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import subprocess
import sys
import time

import pytest

from idealtop import naive
from idealtop.corpus import CorpusSpec
from idealtop.ideals import all_principal_ideals, semi_ideals
from idealtop.laws import LawId, check_all, replay
from idealtop.operators import Context
from idealtop.relgraph import NoWitness, Witness, aggregate_corpus, emit_dot, find_witness
from idealtop.selftest import DEFAULT_OPS, S2_FIXTURE, _slow
from idealtop.spaces import build_space, count_spaces, enumerate_spaces


def _cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "idealtop", *args], capture_output=True, text=True)


def criterion_1():
    started = time.perf_counter()
    contexts = violations = 0
    for space in enumerate_spaces(4):
        for ideal in all_principal_ideals(4):
            contexts += 1
            violations += len(check_all(Context(space, ideal)))
    elapsed = time.perf_counter() - started
    ok = contexts == 5680 and violations == 0 and elapsed < 60
    return ok, f"{contexts} contexts, {violations} violations, {elapsed:.1f}s single-threaded"


def criterion_2():
    spaces = checked = 0
    for n in (1, 2, 3):
        for space in enumerate_spaces(n):
            spaces += 1
            for ideal in all_principal_ideals(n):
                ctx = Context(space, ideal)
                for a in range(1 << n):
                    for name, fast in DEFAULT_OPS.items():
                        checked += 1
                        if fast(ctx, a) != _slow(name, ctx, a):
                            return False, f"{name} differs on {space!r}, {ideal.fmt(space.names)}, A={a:b}"
    # 1 + 4 + 29 labelled topologies on at most three points
    return spaces == 34, f"{spaces} spaces, {checked} operator values bit-exact"


def criterion_3():
    counts = [count_spaces(n) for n in (1, 2, 3, 4)]
    filtered = [len(naive.topologies(n)) for n in (1, 2, 3, 4)]
    same = all({s.opens.members for s in enumerate_spaces(n)} == set(naive.topologies(n)) for n in (1, 2, 3, 4))
    return counts == filtered == [1, 4, 29, 355] and same, f"enumerator {counts}, naive filter {filtered}"


def criterion_4():
    s2 = build_space(2, ("a", "b"), [0, 1, 3])
    fams = Context(s2, next(i for i in all_principal_ideals(2) if i.gens == (1,))).derive_all().families()
    got = {slot: fams[slot].members for slot in fams}
    return got == S2_FIXTURE, "S2 with P({a}): " + ", ".join(f"{k}={list(v)}" for k, v in got.items())


def criterion_5():
    details, ok = [], True
    for pair in (("sigma", "tau_theta_omega"), ("tau_theta_omega", "sigma")):
        w = find_witness(pair, 4)
        good = isinstance(w, Witness) and w.space.n == 2 and w.replay()
        ok &= good
        details.append(w.describe() if isinstance(w, Witness) else "none")
    return ok, "; ".join(details)


def criterion_6():
    details, ok = [], True
    for a, b in (("tau_omega", "tau_star"), ("tau_star", "tau_omega")):
        proc = _cli("witness", "--from", a, "--notin", b, "--max-points", "4")
        record = json.loads(proc.stdout)
        good = proc.returncode == 0 and record["kind"] == "none" and record["message"].endswith("355×16")
        ok &= good
        details.append(f"{a}⊄{b}: {record.get('message', record['kind'])}")
    return ok, "; ".join(details)


def criterion_7():
    star4 = monotone = 0
    for n in (1, 2):
        for space in enumerate_spaces(n):
            for ideal in semi_ideals(n):
                for v in check_all(Context(space, ideal)):
                    assert replay(v)
                    if v.law == LawId.STAR4:
                        star4 += 1
                    if v.law in (LawId.STAR1, LawId.GAMMA1):
                        monotone += 1
    return star4 >= 1 and monotone == 0, f"{star4} STAR4 violations, {monotone} STAR1/GAMMA1 violations"


PROBES = [("sigma0", "tau"), ("tau_theta_omega", "sigma0"), ("sigma0", "tau_star"), ("tau_star", "sigma0")]


def criterion_8():
    details, ok = [], True
    for a, b in PROBES:
        runs = [_cli("witness", "--from", a, "--notin", b, "--max-points", "4") for _ in range(2)]
        same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode == 0
        record = json.loads(runs[0].stdout)
        ok &= same and record["kind"] in ("witness", "none")
        details.append(f"{a}⊄{b}: {record['kind']}")
    return ok, "; ".join(details)


def criterion_9(tmp_dir: str):
    outputs = []
    for jobs in ("1", "1", "4"):
        report = f"{tmp_dir}/report_{len(outputs)}.json"
        _cli("sweep", "--max-points", "3", "--min-points", "1", "--jobs", jobs, "--report", report)
        outputs.append(_cli("dot", report).stdout)
    library = emit_dot(aggregate_corpus(CorpusSpec((1, 2, 3)), jobs=2))
    same = len(set(outputs)) == 1 and outputs[0] == library
    merged = '[label="τ_ω = τ*"]' in outputs[0]
    return same and merged, f"identical across runs and jobs={same}, merged τ_ω = τ* node={merged}"


def _report(number: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number, capsys, tmp_path):
    fn = globals()[f"criterion_{number}"]
    ok, detail = fn(str(tmp_path)) if number == 9 else fn()
    _report(number, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for number in range(1, 10):
            fn = globals()[f"criterion_{number}"]
            ok, detail = fn(tmp) if number == 9 else fn()
            _report(number, ok, detail)
            failures += not ok
    sys.exit(1 if failures else 0)
