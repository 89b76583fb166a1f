"""Starting orderings for the search, and permutation utilities.

Nine construction methods are exposed (CLI names): random, ascii,
first-appearance, least-frequent, most-frequent, chapin-tate,
inv-chapin-tate, vowels, and file.  The template-based methods keep a full
256-byte precedence template and restrict it to the text's alphabet,
preserving relative order.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

import numpy as np

from .errors import OrderingMismatchError, OrderingParseError
from .text import Ordering, Text

METHOD_NAMES = (
    "random",
    "ascii",
    "first-appearance",
    "least-frequent",
    "most-frequent",
    "chapin-tate",
    "inv-chapin-tate",
    "vowels",
    "file",
)

_UPPER_VOWELS = "AEIOU"
_UPPER_CONSONANTS = "BCDGFHRLSMNPQJKTWVXYZ"


@dataclass(frozen=True)
class InitMethod:
    """A named initialization; random carries a seed, file carries a path."""

    name: str
    seed: int | None = None
    path: str | os.PathLike | None = None

    def __post_init__(self):
        if self.name not in METHOD_NAMES:
            raise ValueError(f"unknown init method {self.name!r}")
        if self.name == "random" and self.seed is None:
            raise ValueError("random initialization requires a seed")
        if self.name == "file" and self.path is None:
            raise ValueError("file initialization requires a path")


def chapin_tate_template() -> tuple[int, ...]:
    """Full 256-byte hand-tuned precedence template.

    Extended ASCII with '!' and '@' exchanged, the '+,-.' stretch reordered
    to '+-,.', and each letter case block rewritten as vowels first followed
    by the retuned consonant sequence.
    """
    order = list(range(256))
    order[0x21], order[0x40] = order[0x40], order[0x21]
    order[0x2B:0x2F] = [ord("+"), ord("-"), ord(","), ord(".")]
    letters = _UPPER_VOWELS + _UPPER_CONSONANTS
    order[0x41:0x5B] = [ord(c) for c in letters]
    order[0x61:0x7B] = [ord(c) for c in letters.lower()]
    return tuple(order)


def inverse_chapin_tate_template() -> tuple[int, ...]:
    """Group-theoretic inverse of the hand-tuned template.

    Spreads the vowels through each letter block (A < F < G < H < B < J < I
    < K < C < ...) instead of grouping them at the front.
    """
    ct = chapin_tate_template()
    inv = [0] * 256
    for pos, val in enumerate(ct):
        inv[val] = pos
    return tuple(inv)


def vowels_template() -> tuple[int, ...]:
    """All vowels (lowercase then uppercase) first, everything else in ASCII order."""
    vowels = [ord(c) for c in "aeiouAEIOU"]
    taken = set(vowels)
    return tuple(vowels + [b for b in range(256) if b not in taken])


def _restrict(template: tuple[int, ...], symbols: tuple[int, ...]) -> Ordering:
    present = set(symbols)
    return Ordering(b for b in template if b in present)


def load_ordering_file(path: str | os.PathLike, t: Text) -> Ordering:
    """Read a precedence list (one decimal byte value per line, '#' comments)
    and restrict it to the text's alphabet.

    The file must cover every symbol of the text; symbols it lists that the
    text lacks are dropped.
    """
    values: list[int] = []
    seen: set[int] = set()
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                v = int(line)
            except ValueError:
                raise OrderingParseError(f"{path}:{lineno}: not an integer: {line!r}") from None
            if not 0 <= v <= 255:
                raise OrderingParseError(f"{path}:{lineno}: byte value {v} out of range")
            if v in seen:
                raise OrderingParseError(f"{path}:{lineno}: duplicate byte value {v}")
            seen.add(v)
            values.append(v)
    missing = set(t.alphabet.symbols) - seen
    if missing:
        raise OrderingMismatchError(
            f"{path}: ordering does not cover {len(missing)} symbols of the text"
        )
    return _restrict(tuple(values), t.alphabet.symbols)


def init_ordering(method: InitMethod, t: Text) -> Ordering:
    """Build the starting ordering for t selected by method."""
    symbols = t.alphabet.symbols
    name = method.name
    if name == "ascii":
        return Ordering(symbols)
    if name == "random":
        perm = list(symbols)
        random.Random(method.seed).shuffle(perm)
        return Ordering(perm)
    if name == "first-appearance":
        uniq, first_pos = np.unique(t.arr, return_index=True)
        return Ordering(int(uniq[k]) for k in np.argsort(first_pos))
    if name == "least-frequent":
        counts = np.bincount(t.arr, minlength=256)
        return Ordering(sorted(symbols, key=lambda b: (counts[b], b)))
    if name == "most-frequent":
        counts = np.bincount(t.arr, minlength=256)
        return Ordering(sorted(symbols, key=lambda b: (-counts[b], b)))
    if name == "chapin-tate":
        return _restrict(chapin_tate_template(), symbols)
    if name == "inv-chapin-tate":
        return _restrict(inverse_chapin_tate_template(), symbols)
    if name == "vowels":
        return _restrict(vowels_template(), symbols)
    if name == "file":
        return load_ordering_file(method.path, t)
    raise ValueError(f"unknown init method {name!r}")


def inverse_permutation(o: Ordering) -> Ordering:
    """The inverse of o as a permutation of its alphabet's ascending order.

    Ranks and symbols swap roles: the symbol placed at rank r is the one
    whose rank in o equals the position of r-th smallest symbol.  Applying
    twice returns the original ordering.
    """
    alphabet = sorted(o.perm)
    index_of = {b: i for i, b in enumerate(alphabet)}
    inv = [0] * len(alphabet)
    for rank, sym in enumerate(o.perm):
        inv[index_of[sym]] = rank
    return Ordering(alphabet[k] for k in inv)


def fixed_random_starts(count: int, master_seed: int, t: Text) -> list[Ordering]:
    """The fixed pool of random starts shared by all runs: start i is the
    seeded shuffle with seed master_seed + i."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return [
        init_ordering(InitMethod("random", seed=master_seed + i), t)
        for i in range(count)
    ]
