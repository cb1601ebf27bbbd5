"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own interpreter because the choice is fixed at
import time.  Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "enumerate n=5": "from idealtop import kernels; kernels.preorder_tables(5)",
    "law sweep n=4": (
        "from idealtop import Context, check_all, enumerate_spaces, all_principal_ideals\n"
        "for s in enumerate_spaces(4):\n"
        "    for i in all_principal_ideals(4):\n"
        "        check_all(Context(s, i))"
    ),
    "families n=5 (500 instances)": (
        "from itertools import islice\n"
        "from idealtop import Context, SLOTS, enumerate_spaces, all_principal_ideals\n"
        "ideals = list(all_principal_ideals(5))\n"
        "for k, s in enumerate(islice(enumerate_spaces(5), 500)):\n"
        "    ctx = Context(s, ideals[k % len(ideals)])\n"
        "    [ctx.family(slot) for slot in SLOTS]"
    ),
}

RUNNER = """
import json, sys, time
from idealtop import kernels, spaces
code, repeat = sys.argv[1], int(sys.argv[2])
best = float("inf")
for _ in range(repeat):
    spaces._enumerated.cache_clear()
    t = time.perf_counter()
    exec(code, {})
    best = min(best, time.perf_counter() - t)
print(json.dumps({"backend": kernels.BACKEND, "seconds": best}))
"""


def measure(code: str, pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("IDEALTOP_PURE_PYTHON", None)
    if pure:
        env["IDEALTOP_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", RUNNER, code, str(repeat)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'workload':<32}{'python':>10}{'compiled':>10}{'speedup':>9}")
    for name, code in WORKLOADS.items():
        py = measure(code, True, args.repeat)
        native = measure(code, False, args.repeat)
        if native["backend"] != "cython":
            print(f"{name:<32}{py['seconds']:>9.3f}s{'n/a':>10}{'':>9}  (extension not built)")
            continue
        ratio = py["seconds"] / native["seconds"]
        print(f"{name:<32}{py['seconds']:>9.3f}s{native['seconds']:>9.3f}s{ratio:>8.1f}x")


if __name__ == "__main__":
    main()
