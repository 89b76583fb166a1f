"""Run-length coding of transformed strings, and the byte-size objective.

An encoding is a sequence of (symbol, count) pairs with every count in
1..255; runs longer than 255 spill into additional pairs.  On disk a pair
is exactly two bytes (symbol, count), no header.  The objective value of an
ordering is the encoded byte size, 2 x pair count.
"""

from __future__ import annotations

import numpy as np

from . import _sais
from .errors import MalformedRleError
from .text import Ordering, Text, apply_ordering

MAX_RUN = 255

RlePairs = list[tuple[int, int]]


def rle_encode(b: bytes) -> RlePairs:
    """Encode b as (symbol, count<=255) pairs covering maximal runs."""
    pairs: RlePairs = []
    if len(b) == 0:
        return pairs
    arr = np.frombuffer(b, dtype=np.uint8)
    boundaries = np.flatnonzero(arr[1:] != arr[:-1]) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [arr.size]))
    for start, end in zip(starts, ends):
        sym = int(arr[start])
        length = int(end - start)
        while length > MAX_RUN:
            pairs.append((sym, MAX_RUN))
            length -= MAX_RUN
        pairs.append((sym, length))
    return pairs


def rle_decode(pairs: RlePairs) -> bytes:
    """Exact inverse of rle_encode."""
    out = bytearray()
    for sym, length in pairs:
        if not 1 <= length <= MAX_RUN:
            raise MalformedRleError(f"run length {length} outside 1..{MAX_RUN}")
        if not 0 <= sym <= 255:
            raise MalformedRleError(f"symbol {sym} outside byte range")
        out.extend(bytes([sym]) * length)
    return bytes(out)


def rle_size(pairs: RlePairs) -> int:
    """Encoded size in bytes: two per pair."""
    return 2 * len(pairs)


def pairs_to_bytes(pairs: RlePairs) -> bytes:
    """Serialize to the on-disk layout: symbol byte then count byte, repeated."""
    out = bytearray()
    for sym, length in pairs:
        if not 1 <= length <= MAX_RUN:
            raise MalformedRleError(f"run length {length} outside 1..{MAX_RUN}")
        out.append(sym)
        out.append(length)
    return bytes(out)


def bytes_to_pairs(blob: bytes) -> RlePairs:
    """Parse the on-disk layout back into pairs."""
    if len(blob) % 2 != 0:
        raise MalformedRleError("pair stream has odd byte count")
    pairs: RlePairs = []
    for k in range(0, len(blob), 2):
        sym, length = blob[k], blob[k + 1]
        if length == 0:
            raise MalformedRleError("zero run length")
        pairs.append((sym, length))
    return pairs


def fitness(t: Text, o: Ordering) -> int:
    """Encoded byte size of the transform of t under o (lower is better).

    Equals ``rle_size(rle_encode(bwt(t, o)))`` but skips materializing the
    transformed string.
    """
    rt = apply_ordering(t, o)
    return 2 * int(_sais.bwt_pair_count(rt.ranks, rt.sigma))


def percent_change(compressed: int, uncompressed: int) -> float:
    """Signed size change in percent; negative means the output is smaller."""
    if uncompressed == 0:
        raise ZeroDivisionError("uncompressed size is zero")
    return (compressed - uncompressed) / uncompressed * 100.0
