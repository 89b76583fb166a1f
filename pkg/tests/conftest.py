"""Shared helpers: corpus lookup and independent oracles for property tests."""

import os
from pathlib import Path

import pytest

CORPUS_ENV = "RLBWT_CORPUS"


def corpus_dir() -> Path:
    return Path(os.environ.get(CORPUS_ENV, Path(__file__).resolve().parent.parent / "corpus"))


def corpus_path(name: str) -> Path:
    path = corpus_dir() / name
    if not path.exists():
        pytest.skip(f"Canterbury corpus file {name} not available; see README for setup")
    return path


@pytest.fixture
def corpus():
    return corpus_path


# --- independent oracles (kept free of the library's fast paths) ------------


def naive_suffix_array(ranks) -> list[int]:
    """Suffix order by direct comparison of rank slices."""
    ranks = [int(r) for r in ranks]
    return sorted(range(len(ranks)), key=lambda i: ranks[i:])


def naive_rle_pairs(b: bytes) -> list[tuple[int, int]]:
    """Run-length pairs by linear scan, chunking runs at 255."""
    pairs = []
    i = 0
    while i < len(b):
        j = i
        while j < len(b) and b[j] == b[i]:
            j += 1
        length = j - i
        while length > 255:
            pairs.append((b[i], 255))
            length -= 255
        pairs.append((b[i], length))
        i = j
    return pairs
