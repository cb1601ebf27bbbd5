"""Corpora of (space, ideal) instances and their parallel evaluation.

An instance is addressed by ``(n, space_index, ideal_index)`` into the fixed
orders of :func:`enumerate_spaces` and the ideal list of the chosen mode, so
any worker process can rebuild it from three integers.  Work is split into
contiguous index ranges and results come back in range order; callers fold
them with an associative merge, so the outcome does not depend on ``jobs``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

from .ideals import Ideal, ideals_for_mode
from .spaces import Space, count_spaces, enumerate_spaces

Instance = tuple[int, int, int]
T = TypeVar("T")

SAMPLE_FROM = 5
DEFAULT_SAMPLE = 2000


@dataclass(frozen=True)
class CorpusSpec:
    """Which instances to scan.

    Sizes at or above ``SAMPLE_FROM`` points are sampled (``sample`` instances
    per size, seeded) unless ``exhaustive`` is set.
    """

    sizes: tuple[int, ...]
    ideal_mode: str = "principal"
    exhaustive: bool = False
    sample: int = DEFAULT_SAMPLE
    seed: int = 0

    def is_sampled(self, n: int) -> bool:
        return not self.exhaustive and n >= SAMPLE_FROM and self.sample < total_instances(n, self.ideal_mode)


@lru_cache(maxsize=None)
def _spaces(n: int) -> tuple[Space, ...]:
    return tuple(enumerate_spaces(n))


@lru_cache(maxsize=None)
def _ideals(n: int, mode: str) -> tuple[Ideal, ...]:
    return tuple(ideals_for_mode(n, mode))


def total_instances(n: int, mode: str) -> int:
    return count_spaces(n) * len(_ideals(n, mode))


def resolve(inst: Instance, mode: str) -> tuple[Space, Ideal]:
    n, si, ii = inst
    return _spaces(n)[si], _ideals(n, mode)[ii]


def instances(spec: CorpusSpec) -> list[Instance]:
    out: list[Instance] = []
    rng = random.Random(spec.seed)
    for n in spec.sizes:
        n_ideals = len(_ideals(n, spec.ideal_mode))
        total = count_spaces(n) * n_ideals
        if spec.is_sampled(n):
            flat = sorted(rng.sample(range(total), spec.sample))
        else:
            flat = range(total)
        out.extend((n, k // n_ideals, k % n_ideals) for k in flat)
    return out


def bounds(spec: CorpusSpec) -> list[dict]:
    out = []
    for n in spec.sizes:
        spaces = count_spaces(n)
        ideals = len(_ideals(n, spec.ideal_mode))
        sampled = spec.is_sampled(n)
        out.append({
            "n": n,
            "spaces": spaces,
            "ideals": ideals,
            "instances": spec.sample if sampled else spaces * ideals,
            "exhaustive": not sampled,
        })
    return out


def bounds_summary(spec: CorpusSpec) -> str:
    parts = []
    for b in bounds(spec):
        text = f"{b['spaces']}×{b['ideals']}"
        if not b["exhaustive"]:
            text += f" (sampled {b['instances']}, seed {spec.seed})"
        parts.append(text)
    return ", ".join(parts)


def chunks(items: Sequence[T], parts: int) -> list[Sequence[T]]:
    parts = max(1, min(parts, len(items)))
    step, extra = divmod(len(items), parts)
    out, start = [], 0
    for k in range(parts):
        end = start + step + (1 if k < extra else 0)
        out.append(items[start:end])
        start = end
    return out


def run_partitioned(worker: Callable[[Sequence[Instance], str], T],
                    items: Sequence[Instance], mode: str, jobs: int = 1) -> list[T]:
    """Apply ``worker(chunk, mode)`` to contiguous chunks, results in chunk order.

    ``worker`` must be a module-level function so it can be pickled.
    """
    if jobs <= 1 or len(items) < 2:
        return [worker(items, mode)]
    parts = chunks(list(items), jobs * 4)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, parts, [mode] * len(parts)))
