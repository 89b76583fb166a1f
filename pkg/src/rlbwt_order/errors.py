"""Exception types shared across the toolkit."""


class RlbwtError(Exception):
    """Base class for all rlbwt-order errors."""


class AlphabetFullError(RlbwtError):
    """All 256 byte values occur in the input, leaving no free end marker."""


class OrderingMismatchError(RlbwtError):
    """An ordering's symbol set does not match the text's alphabet."""


class TooLongError(RlbwtError):
    """Input exceeds the cap of a deliberately naive (quadratic) routine."""


class MalformedBwtError(RlbwtError):
    """A transformed string does not contain exactly one end marker."""


class MalformedRleError(RlbwtError):
    """A run-length encoding is structurally invalid (e.g. zero-length run)."""


class AlphabetTooLargeError(RlbwtError):
    """Alphabet too large for exhaustive enumeration of all orderings."""


class EmptyGroupError(RlbwtError):
    """Summary statistics requested for an empty group of records."""


class OrderingParseError(RlbwtError):
    """An ordering file could not be parsed."""
