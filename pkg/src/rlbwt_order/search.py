"""Ordering optimization: first-improvement local search, uniform random
sampling, and exhaustive enumeration for small alphabets.

The search accepts the first strictly better neighbor, restarts the scan
from the head of the (re-ordered) move list, and stops either at a provable
local minimum (one full clean pass) or when the evaluation budget runs out.
Every objective evaluation counts as a step, including the initial one.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphabetTooLargeError
from .neighborhoods import NeighborhoodSpec, apply_move, enumerate_moves
from .rle import fitness, percent_change
from .text import Ordering, Text

DEFAULT_BUDGET = 10_000_000

LOCAL_MINIMUM = "local-minimum"
BUDGET = "budget"


@dataclass
class SearchResult:
    best_ordering: Ordering
    best_fitness: int
    steps: int
    trace: list[tuple[int, int]]  # (evaluation index, fitness): start + improvements
    terminated: str  # LOCAL_MINIMUM or BUDGET

    @property
    def hitting_step(self) -> int:
        """Evaluation index of the last improvement (1 when none was found)."""
        return self.trace[-1][0]


@dataclass
class SampleStats:
    samples: int
    fitness_values: list[int]
    improvements: int
    best_ordering: Ordering
    best_fitness: int
    min_c: float
    max_c: float
    mean_c: float
    std_c: float


@dataclass
class ExhaustiveStats:
    evaluations: int
    results: list[tuple[Ordering, int]] = field(repr=False)
    best_ordering: Ordering
    best_fitness: int
    worst_ordering: Ordering
    worst_fitness: int
    min_c: float
    max_c: float
    mean_c: float
    std_c: float


def first_improvement_search(
    t: Text,
    init: Ordering,
    spec: NeighborhoodSpec,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> SearchResult:
    """Run first-improvement local search from init under the given spec.

    Deterministic for fixed (text, init, spec, budget, seed).  With the
    random neighbor order, the move list is reshuffled from the run's RNG
    stream after every accepted improvement.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = random.Random(seed)
    current = init
    current_f = fitness(t, init)
    steps = 1
    trace = [(1, current_f)]
    sigma = init.sigma

    if sigma < 2:
        return SearchResult(current, current_f, steps, trace, LOCAL_MINIMUM)

    moves = enumerate_moves(spec, sigma, rng)
    while True:
        improved = False
        for move in moves:
            if steps >= budget:
                return SearchResult(current, current_f, steps, trace, BUDGET)
            candidate = apply_move(current, move)
            cand_f = fitness(t, candidate)
            steps += 1
            if cand_f < current_f:
                current = candidate
                current_f = cand_f
                trace.append((steps, cand_f))
                improved = True
                break
        if not improved:
            return SearchResult(current, current_f, steps, trace, LOCAL_MINIMUM)
        if spec.order == "random":
            moves = enumerate_moves(spec, sigma, rng)


def is_local_minimum(t: Text, o: Ordering, spec: NeighborhoodSpec, seed: int = 0) -> bool:
    """True when no move in the spec's full neighborhood strictly improves o."""
    f0 = fitness(t, o)
    moves = enumerate_moves(spec, o.sigma, random.Random(seed))
    return all(fitness(t, apply_move(o, m)) >= f0 for m in moves)


def random_sampling(t: Text, samples: int, seed: int = 0) -> SampleStats:
    """Evaluate uniformly random orderings (seeded shuffles of the ASCII order).

    improvements counts strict running-minimum updates; the first sample
    always counts.  Percentage changes are relative to the raw byte size.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    base = list(t.alphabet.symbols)
    values: list[int] = []
    best_f = None
    best_o = None
    improvements = 0
    for _ in range(samples):
        perm = base[:]
        rng.shuffle(perm)
        o = Ordering(perm)
        f = fitness(t, o)
        values.append(f)
        if best_f is None or f < best_f:
            best_f = f
            best_o = o
            improvements += 1
    c = np.array([percent_change(f, t.n) for f in values])
    return SampleStats(
        samples=samples,
        fitness_values=values,
        improvements=improvements,
        best_ordering=best_o,
        best_fitness=best_f,
        min_c=float(c.min()),
        max_c=float(c.max()),
        mean_c=float(c.mean()),
        std_c=float(c.std()),
    )


def harmonic_bound(samples: int) -> float:
    """Expected improvement count for distinct-valued sampling: sum of
    1/(i+1) for i = 0..samples.  An upper bound in the presence of ties."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    return float(np.sum(1.0 / np.arange(1, samples + 2, dtype=np.float64)))


def exhaustive_search(t: Text, sigma_cap: int = 8) -> ExhaustiveStats:
    """Evaluate every permutation of the alphabet (sigma! orderings)."""
    sigma = t.alphabet.sigma
    if sigma > sigma_cap:
        raise AlphabetTooLargeError(
            f"alphabet size {sigma} exceeds exhaustive cap {sigma_cap} "
            f"({math.factorial(sigma)} orderings)"
        )
    results: list[tuple[Ordering, int]] = []
    for perm in itertools.permutations(t.alphabet.symbols):
        o = Ordering(perm)
        results.append((o, fitness(t, o)))
    values = np.array([f for _, f in results])
    best = int(np.argmin(values))
    worst = int(np.argmax(values))
    c = np.array([percent_change(int(f), t.n) for f in values])
    return ExhaustiveStats(
        evaluations=len(results),
        results=results,
        best_ordering=results[best][0],
        best_fitness=int(values[best]),
        worst_ordering=results[worst][0],
        worst_fitness=int(values[worst]),
        min_c=float(c.min()),
        max_c=float(c.max()),
        mean_c=float(c.mean()),
        std_c=float(c.std()),
    )
