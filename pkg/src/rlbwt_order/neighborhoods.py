"""Move enumeration over orderings: swap and insert neighborhoods.

A swap exchanges the symbols at two ranks i < j; an insert removes the
symbol at rank i and reinserts it so that it lands at rank j, shifting the
block in between.  Moves can be visited lexicographically, in reverse, or
shuffled, and the two operators can be chained (the second operator's list
is only reached when the first is exhausted without improvement).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .text import Ordering

OPERATORS = ("swap", "insert", "swap-then-insert", "insert-then-swap")
ORDERS = ("lex", "revlex", "random")

SPEC_NAMES = tuple(f"{op}:{order}" for op in OPERATORS for order in ORDERS)


@dataclass(frozen=True)
class Move:
    kind: str  # "swap" | "insert"
    i: int
    j: int


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Which operator chain to use and how to order each operator's moves."""

    operators: str
    order: str
    seed: int | None = None

    def __post_init__(self):
        if self.operators not in OPERATORS:
            raise ValueError(f"unknown operator chain {self.operators!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown neighbor order {self.order!r}")

    @property
    def name(self) -> str:
        return f"{self.operators}:{self.order}"

    @property
    def kinds(self) -> tuple[str, ...]:
        return {
            "swap": ("swap",),
            "insert": ("insert",),
            "swap-then-insert": ("swap", "insert"),
            "insert-then-swap": ("insert", "swap"),
        }[self.operators]


def parse_spec(name: str, seed: int | None = None) -> NeighborhoodSpec:
    """Parse a CLI spec string such as 'swap:lex' or 'insert-then-swap:random'."""
    operators, sep, order = name.partition(":")
    if not sep:
        raise ValueError(f"spec {name!r} must look like OPERATOR:ORDER")
    return NeighborhoodSpec(operators=operators, order=order, seed=seed)


def swap_moves(sigma: int) -> list[Move]:
    """All sigma(sigma-1)/2 swaps in lexicographic (i, j) order."""
    return [
        Move("swap", i, j) for i in range(sigma - 1) for j in range(i + 1, sigma)
    ]


def insert_moves(sigma: int) -> list[Move]:
    """All sigma(sigma-1) inserts: i ascending, then j ascending skipping i."""
    return [
        Move("insert", i, j)
        for i in range(sigma)
        for j in range(sigma)
        if j != i
    ]


def _one_operator(kind: str, sigma: int, order: str, rng: random.Random | None) -> list[Move]:
    moves = swap_moves(sigma) if kind == "swap" else insert_moves(sigma)
    if order == "lex":
        return moves
    if order == "revlex":
        moves.reverse()
        return moves
    if rng is None:
        raise ValueError("random neighbor order needs an RNG or a spec seed")
    rng.shuffle(moves)
    return moves


def enumerate_moves(
    spec: NeighborhoodSpec, sigma: int, rng: random.Random | None = None
) -> list[Move]:
    """The full move list for one pass, each operator ordered per the spec.

    For the random order an explicit rng takes precedence over the spec
    seed, letting a search reshuffle from its own stream.  Alphabets of
    size < 2 have no moves.
    """
    if sigma < 2:
        return []
    if spec.order == "random" and rng is None:
        if spec.seed is None:
            raise ValueError("random neighbor order needs an RNG or a spec seed")
        rng = random.Random(spec.seed)
    out: list[Move] = []
    for kind in spec.kinds:
        out.extend(_one_operator(kind, sigma, spec.order, rng))
    return out


def apply_move(o: Ordering, m: Move) -> Ordering:
    """The neighbor of o reached by m.  Raises IndexError on bad indices."""
    sigma = o.sigma
    if not (0 <= m.i < sigma and 0 <= m.j < sigma):
        raise IndexError(f"move ({m.i}, {m.j}) outside ordering of size {sigma}")
    perm = list(o.perm)
    if m.kind == "swap":
        if not m.i < m.j:
            raise IndexError(f"swap requires i < j, got ({m.i}, {m.j})")
        perm[m.i], perm[m.j] = perm[m.j], perm[m.i]
    elif m.kind == "insert":
        if m.i == m.j:
            raise IndexError("insert requires i != j")
        sym = perm.pop(m.i)
        perm.insert(m.j, sym)
    else:
        raise ValueError(f"unknown move kind {m.kind!r}")
    return Ordering(perm)
