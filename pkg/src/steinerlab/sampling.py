"""Randomized generation of Steiner systems and random Steiner complexes.

An (n, d)-Steiner system is a set of (d+1)-subsets of [n] covering every
d-subset exactly once; d = 1 gives perfect matchings, d = 2 Steiner triple
systems.  A random Steiner complex is the union of k independent systems on
top of the complete (d-1)-skeleton.

Matchings are sampled exactly uniformly.  Triple systems come from Stinson-
style hill-climbing followed by a uniform vertex relabeling, which makes the
output law invariant under permutations of the vertex set; d >= 3 falls back
to a restarting random greedy and is best effort only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt
from itertools import combinations
from typing import Iterable

import numpy as np

from .complexes import Face, PureComplex, complex_from_dfaces

__all__ = [
    "SeededRng",
    "SteinerSystem",
    "SamplerExhausted",
    "InclusionReport",
    "is_admissible",
    "sample_matching",
    "sample_sts",
    "sample_greedy",
    "steiner_complex",
    "inclusion_frequency_test",
]

_MASK64 = (1 << 64) - 1


class SamplerExhausted(RuntimeError):
    """Raised when a sampler fails to produce a valid system within its restart cap."""


@dataclass(frozen=True)
class SeededRng:
    """Counter-based random stream addressed by (master_seed, stream_id).

    Identical pairs give bit-identical streams; distinct stream ids give
    statistically independent streams (Philox keyed by the pair), so ensemble
    trials can run in any order or in parallel.
    """

    master_seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array(
            [self.master_seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))

    def stream(self, stream_id: int) -> "SeededRng":
        return SeededRng(self.master_seed, stream_id)

    def substream(self, *parts: int) -> "SeededRng":
        """Derive a stream id by mixing integer coordinates (order-sensitive)."""
        h = self.stream_id
        for part in parts:
            h = (h ^ (part & _MASK64)) * 0x9E3779B97F4A7C15 & _MASK64
            h ^= h >> 29
        return SeededRng(self.master_seed, h)


@dataclass(frozen=True)
class SteinerSystem:
    """An exact cover of the d-subsets of [n] by (d+1)-subsets."""

    n: int
    d: int
    blocks: frozenset[Face]

    @classmethod
    def checked(cls, n: int, d: int, blocks: Iterable[Face]) -> "SteinerSystem":
        """Validate the exact-cover property; every d-subset covered exactly once."""
        block_set = frozenset(tuple(b) for b in blocks)
        expected = comb(n, d) // (d + 1)
        if len(block_set) != expected:
            raise ValueError(f"expected {expected} blocks, got {len(block_set)}")
        covered: set[Face] = set()
        for block in block_set:
            for sub in combinations(block, d):
                if sub in covered:
                    raise ValueError(f"d-subset {sub} covered more than once")
                covered.add(sub)
        if len(covered) != comb(n, d):
            raise ValueError("not all d-subsets covered")
        return cls(n, d, block_set)

    def relabeled(self, perm: dict[int, int]) -> "SteinerSystem":
        blocks = frozenset(tuple(sorted(perm[v] for v in b)) for b in self.blocks)
        return SteinerSystem(self.n, self.d, blocks)


def is_admissible(n: int, d: int) -> bool:
    """Divisibility conditions necessary for an (n, d)-Steiner system.

    Requires (d-j) | C(n-j-1, d-j-1) for 0 <= j <= d-1 together with the
    block-count condition (d+1) | C(n, d); the latter also forces n even
    when d = 1.
    """
    if d < 1 or n < d + 1:
        return False
    if comb(n, d) % (d + 1) != 0:
        return False
    for j in range(d):
        if comb(n - j - 1, d - j - 1) % (d - j) != 0:
            return False
    return True


def _require_admissible(n: int, d: int) -> None:
    if not is_admissible(n, d):
        raise ValueError(f"n={n} is not {d}-admissible")


def _uniform_relabel(system: SteinerSystem, rng: np.random.Generator) -> SteinerSystem:
    perm_arr = rng.permutation(system.n)
    perm = {i + 1: int(perm_arr[i]) + 1 for i in range(system.n)}
    return system.relabeled(perm)


def sample_matching(n: int, rng: SeededRng | np.random.Generator) -> SteinerSystem:
    """Uniformly random perfect matching on [n] (n even)."""
    if n % 2 != 0 or n < 2:
        raise ValueError(f"perfect matching needs even n >= 2, got {n}")
    gen = rng.generator() if isinstance(rng, SeededRng) else rng
    order = gen.permutation(n) + 1
    blocks = [tuple(sorted((int(order[2 * i]), int(order[2 * i + 1])))) for i in range(n // 2)]
    return SteinerSystem.checked(n, 1, blocks)


def _hill_climb_triples(n: int, gen: np.random.Generator, max_iterations: int) -> list[Face] | None:
    """One Stinson hill-climbing run; returns block list or None on cap."""
    pair_block: dict[Face, Face] = {}
    live: list[set[int]] = [set() for _ in range(n + 1)]
    for x in range(1, n + 1):
        live[x] = set(range(1, n + 1)) - {x}
    points = list(range(1, n + 1))
    num_covered = 0
    target = comb(n, 2)

    for _ in range(max_iterations):
        if num_covered == target:
            return sorted(pair_block.values())
        # pick a point with uncovered pairs, then two distinct live partners
        while True:
            x = points[int(gen.integers(0, n))]
            if live[x]:
                break
        partners = sorted(live[x])
        i = int(gen.integers(0, len(partners)))
        j = int(gen.integers(0, len(partners) - 1))
        if j >= i:
            j += 1
        y, z = partners[i], partners[j]

        new_block = tuple(sorted((x, y, z)))
        yz = (y, z) if y < z else (z, y)
        old = pair_block.get(yz)
        if old is not None:
            # evict the block covering {y, z}; its other two pairs go live again
            for pair in combinations(old, 2):
                del pair_block[pair]
                live[pair[0]].add(pair[1])
                live[pair[1]].add(pair[0])
            num_covered -= 3
        for pair in combinations(new_block, 2):
            pair_block[pair] = new_block
            live[pair[0]].discard(pair[1])
            live[pair[1]].discard(pair[0])
        num_covered += 3

    return None


def sample_sts(
    n: int,
    rng: SeededRng | np.random.Generator,
    max_restarts: int = 100,
    iteration_factor: int = 50,
) -> SteinerSystem:
    """Random Steiner triple system on [n] (n = 1 or 3 mod 6).

    Hill-climbing resolves one uncovered pair per step, evicting any
    conflicting block, and never decreases the covered-pair count; a uniform
    vertex relabeling afterwards makes the law permutation invariant.
    """
    _require_admissible(n, 2)
    gen = rng.generator() if isinstance(rng, SeededRng) else rng
    cap = iteration_factor * n * n
    for _ in range(max_restarts):
        blocks = _hill_climb_triples(n, gen, cap)
        if blocks is not None:
            system = SteinerSystem.checked(n, 2, blocks)
            return _uniform_relabel(system, gen)
    raise SamplerExhausted(f"sample_sts(n={n}) exceeded {max_restarts} restarts")


def _greedy_once(n: int, d: int, gen: np.random.Generator) -> list[Face] | None:
    uncovered = set(combinations(range(1, n + 1), d))
    blocks: list[Face] = []
    pool = sorted(uncovered)
    while uncovered:
        # draw a random still-uncovered d-subset
        while True:
            sigma = pool[int(gen.integers(0, len(pool)))]
            if sigma in uncovered:
                break
        candidates = []
        for v in range(1, n + 1):
            if v in sigma:
                continue
            block = tuple(sorted(sigma + (v,)))
            if all(sub in uncovered for sub in combinations(block, d)):
                candidates.append(v)
        if not candidates:
            return None
        v = candidates[int(gen.integers(0, len(candidates)))]
        block = tuple(sorted(sigma + (v,)))
        blocks.append(block)
        for sub in combinations(block, d):
            uncovered.discard(sub)
    return blocks


def sample_greedy(
    n: int,
    d: int,
    rng: SeededRng | np.random.Generator,
    max_restarts: int = 100,
) -> SteinerSystem:
    """Best-effort random greedy Steiner system, restarting on dead ends.

    Delegates to the exact matching sampler for d = 1.  For d >= 3 success
    at a given admissible n is not guaranteed; SamplerExhausted signals the
    caller to retry with another stream or reduce scope.
    """
    _require_admissible(n, d)
    gen = rng.generator() if isinstance(rng, SeededRng) else rng
    if d == 1:
        return sample_matching(n, gen)
    for _ in range(max_restarts):
        blocks = _greedy_once(n, d, gen)
        if blocks is not None:
            system = SteinerSystem.checked(n, d, blocks)
            return _uniform_relabel(system, gen)
    raise SamplerExhausted(f"sample_greedy(n={n}, d={d}) exceeded {max_restarts} restarts")


def sample_system(n: int, d: int, rng: SeededRng | np.random.Generator) -> SteinerSystem:
    """Dispatch to the strongest sampler available for the dimension."""
    if d == 1:
        return sample_matching(n, rng)
    if d == 2:
        return sample_sts(n, rng)
    return sample_greedy(n, d, rng)


def steiner_complex(n: int, d: int, k: int, rng: SeededRng | np.random.Generator) -> PureComplex:
    """Union of k independent (n, d)-Steiner systems as a pure d-complex.

    Duplicate blocks across systems collapse, so every (d-1)-face ends up
    with degree between 1 and k.
    """
    if k < 1:
        raise ValueError("need k >= 1 systems")
    _require_admissible(n, d)
    gen = rng.generator() if isinstance(rng, SeededRng) else rng
    faces: set[Face] = set()
    for _ in range(k):
        faces |= sample_system(n, d, gen).blocks
    return complex_from_dfaces(n, d, faces)


@dataclass(frozen=True)
class InclusionReport:
    """Empirical block-inclusion frequency over repeated system draws."""

    n: int
    d: int
    trials: int
    block: Face
    hits: int
    empirical: float
    stderr: float
    expected: float | None
    deviation_sigmas: float | None
    passed: bool | None

    def __str__(self) -> str:
        base = (
            f"P({set(self.block)} in S) ~ {self.empirical:.6f} "
            f"(+- {self.stderr:.6f}, {self.trials} trials)"
        )
        if self.expected is not None:
            base += f", expected {self.expected:.6f}, |dev| = {self.deviation_sigmas:.2f} sigma"
        return base


def inclusion_frequency_test(
    n: int,
    d: int,
    trials: int,
    rng: SeededRng | np.random.Generator,
    block: Face | None = None,
) -> InclusionReport:
    """Monte Carlo estimate of P(block in S) for a fixed block.

    For d = 1 the matching sampler is exactly uniform, so the report carries
    the target 1/(n-d) and a pass flag at the 4-sigma binomial level; other
    dimensions are report-only (the hill-climbing law has no closed form).
    """
    if trials < 1000:
        raise ValueError("need at least 1000 trials for a stable frequency")
    gen = rng.generator() if isinstance(rng, SeededRng) else rng
    target_block = block if block is not None else tuple(range(1, d + 2))
    hits = 0
    for _ in range(trials):
        system = sample_system(n, d, gen)
        if target_block in system.blocks:
            hits += 1
    empirical = hits / trials
    if d == 1 and n > 2:
        expected = 1.0 / (n - d)
        sigma = sqrt(expected * (1.0 - expected) / trials)
        deviation = abs(empirical - expected) / sigma
        passed = deviation <= 4.0
    elif d == 1:
        expected, sigma, deviation, passed = 1.0, 0.0, 0.0, hits == trials
    else:
        expected = None
        sigma = sqrt(max(empirical * (1.0 - empirical), 1e-12) / trials)
        deviation = None
        passed = None
    return InclusionReport(
        n=n,
        d=d,
        trials=trials,
        block=target_block,
        hits=hits,
        empirical=empirical,
        stderr=sigma,
        expected=expected,
        deviation_sigmas=deviation,
        passed=passed,
    )
