import random
from collections import Counter

import pytest

from rlbwt_order import (
    InitMethod,
    Ordering,
    OrderingMismatchError,
    OrderingParseError,
    Text,
    fixed_random_starts,
    init_ordering,
    inverse_permutation,
)
from rlbwt_order.inits import (
    METHOD_NAMES,
    chapin_tate_template,
    inverse_chapin_tate_template,
    vowels_template,
)

CT_UPPER = "AEIOUBCDGFHRLSMNPQJKTWVXYZ"
IPCT_UPPER = "AFGHBJIKCSTMOPDQRLNUEWVXYZ"


def letters(template, lower=False):
    lo, hi = (97, 122) if lower else (65, 90)
    return "".join(chr(b) for b in template if lo <= b <= hi)


class TestTemplates:
    def test_chapin_tate_upper_block(self):
        assert letters(chapin_tate_template()) == CT_UPPER

    def test_chapin_tate_lower_mirrors_upper(self):
        assert letters(chapin_tate_template(), lower=True) == CT_UPPER.lower()

    def test_chapin_tate_punctuation_tweaks(self):
        ct = chapin_tate_template()
        assert ct[0x21] == ord("@") and ct[0x40] == ord("!")
        assert ct[0x2B:0x2F] == tuple(ord(c) for c in "+-,.")

    def test_chapin_tate_rest_is_ascii(self):
        ct = chapin_tate_template()
        untouched = [b for b in range(256) if not (65 <= b <= 90 or 97 <= b <= 122
                                                   or b in (0x21, 0x40, 0x2C, 0x2D))]
        positions = [ct.index(b) for b in untouched]
        assert positions == sorted(positions)

    def test_inverse_chapin_tate_matches_published_letters(self):
        assert letters(inverse_chapin_tate_template()) == IPCT_UPPER

    def test_inverse_chapin_tate_spreads_vowels(self):
        seq = letters(inverse_chapin_tate_template())
        assert [v for v in seq if v in "AEIOU"] == list("AIOUE")

    def test_inverse_template_is_group_inverse(self):
        ct = chapin_tate_template()
        ict = inverse_chapin_tate_template()
        composed = [ct[ict[i]] for i in range(256)]
        assert composed == list(range(256))

    def test_vowels_template_front(self):
        template = vowels_template()
        assert template[:10] == tuple(ord(c) for c in "aeiouAEIOU")
        rest = template[10:]
        assert list(rest) == sorted(rest)


class TestInitOrdering:
    def setup_method(self):
        self.t = Text(b"cacatcg", ord("$"))

    def test_ascii(self):
        o = init_ordering(InitMethod("ascii"), self.t)
        assert bytes(o.perm) == b"acgt"

    def test_first_appearance(self):
        o = init_ordering(InitMethod("first-appearance"), self.t)
        assert bytes(o.perm) == b"catg"

    def test_least_frequent_ties_by_byte(self):
        # counts: c=3, a=2, t=1, g=1 -> g and t tie, broken ascending
        o = init_ordering(InitMethod("least-frequent"), self.t)
        assert bytes(o.perm) == b"gtac"

    def test_most_frequent(self):
        o = init_ordering(InitMethod("most-frequent"), self.t)
        assert bytes(o.perm) == b"cagt"

    def test_frequency_orders_share_tie_groups(self):
        rnd = random.Random(13)
        for _ in range(40):
            data = bytes(rnd.choice(b"abcdefg") for _ in range(rnd.randrange(1, 60)))
            t = Text(data, 0)
            least = init_ordering(InitMethod("least-frequent"), t).perm
            most = init_ordering(InitMethod("most-frequent"), t).perm
            counts = Counter(data)

            def groups(perm):
                out = []
                for sym in perm:
                    if out and counts[out[-1][-1]] == counts[sym]:
                        out[-1].append(sym)
                    else:
                        out.append([sym])
                return out

            assert groups(least) == list(reversed(groups(most)))

    def test_chapin_tate_restriction(self):
        data = b"THEREISNOQUICKFIX"
        t = Text(data, 0)
        o = init_ordering(InitMethod("chapin-tate"), t)
        expected = [ord(c) for c in CT_UPPER if ord(c) in set(data)]
        assert list(o.perm) == expected

    def test_vowels_precede_everything_else(self):
        rnd = random.Random(14)
        for _ in range(40):
            data = bytes(rnd.randrange(32, 127) for _ in range(rnd.randrange(1, 80)))
            t = Text(data, 0)
            o = init_ordering(InitMethod("vowels"), t)
            vowels = set(b"aeiouAEIOU")
            n_vowels = sum(1 for b in o.perm if b in vowels)
            assert all(b in vowels for b in o.perm[:n_vowels])
            assert all(b not in vowels for b in o.perm[n_vowels:])

    def test_random_is_seeded_shuffle(self):
        o1 = init_ordering(InitMethod("random", seed=5), self.t)
        o2 = init_ordering(InitMethod("random", seed=5), self.t)
        assert o1 == o2
        base = list(self.t.alphabet.symbols)
        random.Random(5).shuffle(base)
        assert list(o1.perm) == base

    def test_random_needs_seed(self):
        with pytest.raises(ValueError):
            InitMethod("random")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            InitMethod("alphabetical")

    def test_all_methods_yield_alphabet_permutations(self, tmp_path):
        rnd = random.Random(15)
        path = tmp_path / "order.txt"
        for _ in range(15):
            data = bytes(rnd.randrange(60, 75) for _ in range(rnd.randrange(1, 50)))
            t = Text(data, 0)
            listing = list(t.alphabet.symbols)
            rnd.shuffle(listing)
            path.write_text("".join(f"{b}\n" for b in listing))
            for name in METHOD_NAMES:
                method = InitMethod(
                    name,
                    seed=3 if name == "random" else None,
                    path=path if name == "file" else None,
                )
                o = init_ordering(method, t)
                assert sorted(o.perm) == sorted(t.alphabet.symbols)


class TestOrderingFile:
    def test_parse_with_comments(self, tmp_path):
        t = Text(b"ba", 0)
        path = tmp_path / "o.txt"
        path.write_text("# comment\n98\n\n97  # trailing\n")
        o = init_ordering(InitMethod("file", path=path), t)
        assert bytes(o.perm) == b"ba"

    def test_superset_is_restricted(self, tmp_path):
        t = Text(b"ba", 0)
        path = tmp_path / "o.txt"
        path.write_text("99\n98\n100\n97\n")
        o = init_ordering(InitMethod("file", path=path), t)
        assert bytes(o.perm) == b"ba"

    def test_missing_symbol_rejected(self, tmp_path):
        t = Text(b"abc", 0)
        path = tmp_path / "o.txt"
        path.write_text("97\n98\n")
        with pytest.raises(OrderingMismatchError):
            init_ordering(InitMethod("file", path=path), t)

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "o.txt"
        path.write_text("ninety\n")
        with pytest.raises(OrderingParseError):
            init_ordering(InitMethod("file", path=path), Text(b"a", 0))

    def test_duplicate_rejected(self, tmp_path):
        path = tmp_path / "o.txt"
        path.write_text("97\n97\n")
        with pytest.raises(OrderingParseError):
            init_ordering(InitMethod("file", path=path), Text(b"a", 0))

    def test_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "o.txt"
        path.write_text("300\n")
        with pytest.raises(OrderingParseError):
            init_ordering(InitMethod("file", path=path), Text(b"a", 0))


class TestInversePermutation:
    def test_identity(self):
        o = Ordering(b"abc")
        assert inverse_permutation(o) == o

    def test_involution(self):
        rnd = random.Random(16)
        for _ in range(50):
            symbols = sorted(rnd.sample(range(256), rnd.randrange(1, 30)))
            perm = symbols[:]
            rnd.shuffle(perm)
            o = Ordering(perm)
            assert inverse_permutation(inverse_permutation(o)) == o

    def test_chapin_tate_letters(self):
        o = Ordering(ord(c) for c in CT_UPPER)
        assert bytes(inverse_permutation(o).perm).decode() == IPCT_UPPER


class TestFixedRandomStarts:
    def test_deterministic(self):
        t = Text(b"cacatcg", ord("$"))
        a = fixed_random_starts(20, 99, t)
        b = fixed_random_starts(20, 99, t)
        assert a == b
        assert len({o.perm for o in a}) > 1

    def test_all_valid(self):
        t = Text(b"cacatcg", ord("$"))
        for o in fixed_random_starts(20, 1, t):
            assert sorted(o.perm) == sorted(t.alphabet.symbols)

    def test_two_symbol_text_frozen_values(self):
        # recorded outcomes of the seeded shuffle over the two orderings of {a, b}
        t = Text(b"ab", 0)
        assert bytes(fixed_random_starts(1, 0, t)[0].perm) == b"ab"
        assert bytes(fixed_random_starts(1, 1, t)[0].perm) == b"ba"

    def test_count_validated(self):
        with pytest.raises(ValueError):
            fixed_random_starts(0, 0, Text(b"ab", 0))
