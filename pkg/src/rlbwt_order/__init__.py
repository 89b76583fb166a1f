"""Alphabet-ordering search for minimizing run-length encoded BWTs."""

__version__ = "0.1.0"

from .errors import (
    AlphabetFullError,
    AlphabetTooLargeError,
    EmptyGroupError,
    MalformedBwtError,
    MalformedRleError,
    OrderingMismatchError,
    OrderingParseError,
    RlbwtError,
    TooLongError,
)
from .inits import InitMethod, fixed_random_starts, init_ordering, inverse_permutation
from .neighborhoods import Move, NeighborhoodSpec, apply_move, enumerate_moves, parse_spec
from .rle import fitness, percent_change, rle_decode, rle_encode, rle_size
from .search import (
    ExhaustiveStats,
    SampleStats,
    SearchResult,
    exhaustive_search,
    first_improvement_search,
    harmonic_bound,
    random_sampling,
)
from .text import Alphabet, Ordering, RemappedText, Text, apply_ordering, load_text, scan_alphabet
from .transform import bwm_naive, bwt, bwt_star, count_runs, inverse_bwt, suffix_array

__all__ = [
    "Alphabet",
    "AlphabetFullError",
    "AlphabetTooLargeError",
    "EmptyGroupError",
    "ExhaustiveStats",
    "InitMethod",
    "MalformedBwtError",
    "MalformedRleError",
    "Move",
    "NeighborhoodSpec",
    "Ordering",
    "OrderingMismatchError",
    "OrderingParseError",
    "RemappedText",
    "RlbwtError",
    "SampleStats",
    "SearchResult",
    "Text",
    "TooLongError",
    "apply_move",
    "apply_ordering",
    "bwm_naive",
    "bwt",
    "bwt_star",
    "count_runs",
    "enumerate_moves",
    "exhaustive_search",
    "first_improvement_search",
    "fitness",
    "fixed_random_starts",
    "harmonic_bound",
    "init_ordering",
    "inverse_bwt",
    "inverse_permutation",
    "load_text",
    "parse_spec",
    "percent_change",
    "random_sampling",
    "rle_decode",
    "rle_encode",
    "rle_size",
    "scan_alphabet",
    "suffix_array",
]
