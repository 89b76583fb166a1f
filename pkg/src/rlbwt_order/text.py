"""Byte-level text model: texts, end markers, alphabets, and orderings.

Input files are treated as raw byte sequences.  Sorting precedence is
expressed by an Ordering (a permutation of the text's alphabet); the end
marker is never part of an ordering and always compares least.  Applying
an ordering rewrites the text into small integer ranks so that every
downstream sort can use plain integer comparison.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphabetFullError, OrderingMismatchError


class Text:
    """An immutable byte string plus an end-marker byte absent from it."""

    __slots__ = ("data", "end_marker", "_arr", "_alphabet")

    def __init__(self, data: bytes, end_marker: int):
        if len(data) == 0:
            raise ValueError("text must be non-empty")
        if not 0 <= end_marker <= 255:
            raise ValueError(f"end marker {end_marker} outside byte range")
        if end_marker in data:
            raise ValueError(f"end marker {end_marker} occurs in the text")
        self.data = bytes(data)
        self.end_marker = end_marker
        self._arr = None
        self._alphabet = None

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def arr(self) -> np.ndarray:
        """The text as a read-only uint8 array (cached)."""
        if self._arr is None:
            self._arr = np.frombuffer(self.data, dtype=np.uint8)
        return self._arr

    @property
    def alphabet(self) -> "Alphabet":
        if self._alphabet is None:
            self._alphabet = scan_alphabet(self)
        return self._alphabet

    def __eq__(self, other):
        return (
            isinstance(other, Text)
            and self.data == other.data
            and self.end_marker == other.end_marker
        )

    def __hash__(self):
        return hash((self.data, self.end_marker))

    def __repr__(self):
        return f"Text({len(self.data)} bytes, end_marker={self.end_marker})"


@dataclass(frozen=True)
class Alphabet:
    """The distinct byte values of a text, ascending."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if list(self.symbols) != sorted(set(self.symbols)):
            raise ValueError("alphabet symbols must be unique and ascending")
        if len(self.symbols) > 255:
            raise AlphabetFullError(
                "alphabet covers all 256 byte values; no end marker available"
            )

    @property
    def sigma(self) -> int:
        return len(self.symbols)


class Ordering:
    """A precedence permutation of an alphabet (index = rank, low sorts first).

    The end marker is intentionally absent: it is implicitly less than every
    symbol in every ordering.
    """

    __slots__ = ("perm", "_rank", "_table")

    def __init__(self, perm):
        perm = tuple(int(b) for b in perm)
        if len(set(perm)) != len(perm):
            raise ValueError("ordering contains duplicate symbols")
        if perm and not all(0 <= b <= 255 for b in perm):
            raise ValueError("ordering symbols must be byte values")
        self.perm = perm
        self._rank = {b: i for i, b in enumerate(perm)}
        self._table = None

    @property
    def sigma(self) -> int:
        return len(self.perm)

    def rank_of(self, byte: int) -> int:
        return self._rank[byte]

    @property
    def rank_table(self) -> np.ndarray:
        """256-entry lookup: byte value -> 1 + rank (0 left for the end marker)."""
        if self._table is None:
            table = np.zeros(256, dtype=np.int32)
            for i, b in enumerate(self.perm):
                table[b] = i + 1
            self._table = table
        return self._table

    def symbol_set(self) -> frozenset[int]:
        return frozenset(self.perm)

    def __eq__(self, other):
        return isinstance(other, Ordering) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        shown = "".join(chr(b) if 32 <= b < 127 else f"\\x{b:02x}" for b in self.perm)
        return f"Ordering({shown})"


@dataclass(frozen=True, eq=False)
class RemappedText:
    """A text rewritten as integer ranks, with a trailing 0 sentinel.

    ranks[i] = 1 + rank of the i-th byte under the ordering; ranks[n] = 0.
    Integer order on ranks equals the ordering's precedence, with the end
    marker (sentinel) least.
    """

    ranks: np.ndarray = field(repr=False)
    sigma: int

    @property
    def n(self) -> int:
        return int(self.ranks.shape[0]) - 1


def load_text(path: str | os.PathLike, end_marker: int | None = None) -> Text:
    """Read a file bytewise and attach an end marker.

    With ``end_marker=None`` (auto policy) the smallest byte value absent from
    the file is used.  A fixed marker must not occur in the file.

    Raises AlphabetFullError when every byte value occurs, and OSError on
    read failure.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) == 0:
        raise ValueError(f"{path}: empty file")
    present = np.zeros(256, dtype=bool)
    present[np.frombuffer(data, dtype=np.uint8)] = True
    if end_marker is None:
        absent = np.flatnonzero(~present)
        if absent.size == 0:
            raise AlphabetFullError(
                f"{path}: all 256 byte values occur; no end marker available"
            )
        end_marker = int(absent[0])
    elif present[end_marker]:
        raise ValueError(f"{path}: requested end marker {end_marker} occurs in file")
    return Text(data, end_marker)


def scan_alphabet(t: Text) -> Alphabet:
    """The distinct byte values of the text, ascending."""
    return Alphabet(tuple(int(b) for b in np.unique(t.arr)))


def check_ordering(t: Text, o: Ordering) -> None:
    """Raise OrderingMismatchError unless o covers exactly t's alphabet."""
    if o.symbol_set() != frozenset(t.alphabet.symbols):
        raise OrderingMismatchError(
            "ordering symbols do not match the text alphabet"
        )


def apply_ordering(t: Text, o: Ordering) -> RemappedText:
    """Rewrite the text as ranks under o, appending the 0 sentinel.

    The mapping is strictly monotone: byte x precedes byte y under o exactly
    when the remapped value of x is less than that of y.
    """
    check_ordering(t, o)
    n = t.n
    ranks = np.empty(n + 1, dtype=np.int32)
    ranks[:n] = o.rank_table[t.arr]
    ranks[n] = 0
    return RemappedText(ranks=ranks, sigma=o.sigma)
