"""Burrows-Wheeler transforms under custom alphabet orderings.

The production path builds a suffix array of the remapped text (unique 0
sentinel appended) and reads the transform off it.  The rotation-matrix
routines are deliberately naive and size-capped; they exist as oracles for
the fast path and for small-string experiments without a sentinel.
"""

from __future__ import annotations

import numpy as np

from . import _sais
from .errors import MalformedBwtError, TooLongError
from .text import Ordering, RemappedText, Text, apply_ordering, check_ordering

NAIVE_CAP = 64


def suffix_array(rt: RemappedText) -> np.ndarray:
    """Indices of the suffixes of rt.ranks in ascending suffix order.

    Length n+1; sa[0] is always the sentinel position n.
    """
    return _sais.sais(rt.ranks, rt.sigma)


def bwt(t: Text, o: Ordering) -> bytes:
    """The transform of t under o, with the end marker included.

    Returns the last column of the sorted rotation matrix of
    ``t.data + end_marker`` where rotations are compared under o (marker
    least).  Length n+1; the marker occurs exactly once.
    """
    rt = apply_ordering(t, o)
    sa = _sais.sais(rt.ranks, rt.sigma)
    lcol = rt.ranks[sa - 1]  # sa==0 wraps to ranks[-1], the sentinel
    decode = np.empty(o.sigma + 1, dtype=np.uint8)
    decode[0] = t.end_marker
    decode[1:] = np.array(o.perm, dtype=np.uint8)
    return decode[lcol].tobytes()


def bwt_star(t: Text, o: Ordering, cap: int = NAIVE_CAP) -> bytes:
    """Sentinel-free transform via naive rotation sorting (short strings only)."""
    if t.n > cap:
        raise TooLongError(f"bwt_star limited to {cap} bytes, got {t.n}")
    check_ordering(t, o)
    ranks = [o.rank_of(b) for b in t.data]
    n = t.n
    rotations = sorted(range(n), key=lambda i: ranks[i:] + ranks[:i])
    return bytes(t.data[(i - 1) % n] for i in rotations)


def bwm_naive(t: Text, o: Ordering, with_sentinel: bool = True, cap: int = NAIVE_CAP) -> list[bytes]:
    """All cyclic rotations, stably sorted under o.  Oracle use only.

    With the sentinel, rotations are of ``t.data + end_marker``; without it,
    duplicate rotations of periodic strings stay grouped (stable sort).
    """
    if t.n > cap:
        raise TooLongError(f"bwm_naive limited to {cap} bytes, got {t.n}")
    check_ordering(t, o)
    if with_sentinel:
        s = t.data + bytes([t.end_marker])
        key = {t.end_marker: 0, **{b: i + 1 for i, b in enumerate(o.perm)}}
    else:
        s = t.data
        key = {b: i for i, b in enumerate(o.perm)}
    m = len(s)
    ranks = [key[b] for b in s]
    rows = [(ranks[i:] + ranks[:i], s[i:] + s[:i]) for i in range(m)]
    rows.sort(key=lambda row: row[0])
    return [row[1] for row in rows]


def inverse_bwt(b: bytes, o: Ordering) -> Text:
    """Recover the original text from a sentinel-mode transform.

    The end marker is identified as the unique byte of b absent from o.
    Raises MalformedBwtError unless exactly one such byte occurs exactly once.
    """
    if len(b) == 0:
        raise MalformedBwtError("empty transform")
    symbols = o.symbol_set()
    markers = {byte for byte in set(b) if byte not in symbols}
    if len(markers) != 1:
        raise MalformedBwtError(
            f"expected exactly one end-marker byte outside the ordering, found {len(markers)}"
        )
    marker = markers.pop()
    if b.count(marker) != 1:
        raise MalformedBwtError("end marker must occur exactly once")

    arr = np.frombuffer(b, dtype=np.uint8)
    table = np.zeros(256, dtype=np.int32)
    for i, sym in enumerate(o.perm):
        table[sym] = i + 1
    lranks = table[arr]
    # stable sort of L gives F; its inverse is the last-to-first mapping
    order = np.argsort(lranks, kind="stable")
    lf = np.empty(len(b), dtype=np.int64)
    lf[order] = np.arange(len(b))
    out = bytearray(len(b))
    row = 0  # the row beginning with the marker, i.e. rotation "marker + text"
    for k in range(len(b)):
        out[k] = b[row]
        row = lf[row]
    # the walk yields the text back-to-front, ending on the marker itself
    if out[-1] != marker:
        raise MalformedBwtError("transform is not consistent with the ordering")
    del out[-1]
    out.reverse()
    try:
        return Text(bytes(out), marker)
    except ValueError as exc:
        raise MalformedBwtError(f"transform does not invert to a text: {exc}") from exc


def count_runs(b: bytes) -> int:
    """Number of maximal blocks of equal adjacent bytes."""
    if len(b) == 0:
        return 0
    arr = np.frombuffer(b, dtype=np.uint8)
    return int(np.count_nonzero(arr[1:] != arr[:-1])) + 1
