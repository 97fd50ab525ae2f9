import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codekets import (
    BitVector,
    InvalidArgumentError,
    LinearCode,
    NonlinearCode,
    ParseError,
    RankDeficiencyError,
    ResourceLimitError,
    add_mod2,
    codewords,
    contains,
    coset_intersection,
    dual,
    gf2_inner,
    int_inner,
    rref,
    weight,
)
from codekets.gf2core import (
    all_vectors,
    format_generator,
    load_generator,
    load_words,
    parse_generator,
    parse_words,
    random_linear_code,
)

from conftest import brute_dual, bv, span


@st.composite
def vec_pairs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    u = draw(st.integers(0, (1 << n) - 1))
    v = draw(st.integers(0, (1 << n) - 1))
    return BitVector(n, u), BitVector(n, v)


@st.composite
def linear_codes(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_linear_code(n, k, np.random.default_rng(seed))


class TestBitVector:
    def test_packing_puts_position_one_in_low_bit(self):
        v = bv("100")
        assert v.value == 1
        assert v.bits == (1, 0, 0)
        assert v.index() == 4

    def test_index_round_trip(self):
        for n in range(1, 6):
            for i in range(1 << n):
                assert BitVector.from_index(n, i).index() == i

    def test_equality(self):
        assert bv("0110") == bv("0110")
        assert bv("011") != bv("0110")

    @pytest.mark.parametrize("bad", ["", "012", "1 0"])
    def test_rejects_bad_strings(self, bad):
        with pytest.raises(ParseError):
            bv(bad)

    def test_rejects_zero_length(self):
        with pytest.raises(InvalidArgumentError):
            BitVector(0, 0)


class TestInnerProducts:
    @pytest.mark.parametrize(
        "u, v, expected",
        [("101", "111", 0), ("000", "101", 0), ("011", "111", 0), ("100", "111", 1)],
    )
    def test_gf2_inner(self, u, v, expected):
        assert gf2_inner(bv(u), bv(v)) == expected
        assert sum(int(a) * int(b) for a, b in zip(u, v)) % 2 == expected

    @pytest.mark.parametrize(
        "u, v, expected", [("111", "111", 3), ("011", "111", 2), ("0000", "1111", 0)]
    )
    def test_int_inner(self, u, v, expected):
        assert int_inner(bv(u), bv(v)) == expected

    def test_length_mismatch(self):
        for op in (gf2_inner, int_inner, add_mod2):
            with pytest.raises(InvalidArgumentError):
                op(bv("01"), bv("011"))

    @given(vec_pairs())
    def test_parity_consistency(self, pair):
        u, v = pair
        assert gf2_inner(u, v) == int_inner(u, v) % 2
        assert int_inner(u, v) == sum(a * b for a, b in zip(u.bits, v.bits))


class TestAddAndWeight:
    def test_examples(self):
        assert add_mod2(bv("101"), bv("011")) == bv("110")
        assert bv("101") ^ bv("000") == bv("101")
        assert bv("101") ^ bv("101") == bv("000")

    @pytest.mark.parametrize("s, w", [("0110", 2), ("0000", 0), ("1111", 4)])
    def test_weight(self, s, w):
        assert weight(bv(s)) == w

    @given(vec_pairs())
    def test_xor_matches_bits(self, pair):
        u, v = pair
        assert (u ^ v).bits == tuple(a ^ b for a, b in zip(u.bits, v.bits))


class TestRref:
    def test_dependent_rows(self):
        reduced, rank, pivots = rref([bv("110"), bv("011"), bv("101")])
        assert rank == 2
        assert span(reduced, 3) == span([bv("110"), bv("011")], 3)

    def test_single_row(self):
        assert rref([bv("111")]) == ([bv("111")], 1, [0])

    def test_zero_row_and_empty(self):
        assert rref([bv("000")])[1] == 0
        assert rref([]) == ([], 0, [])

    @given(st.integers(1, 7), st.lists(st.integers(0, 127), max_size=8))
    def test_row_space_preserved_and_reduced(self, n, raw):
        rows = [BitVector(n, r % (1 << n)) for r in raw]
        reduced, rank, pivots = rref(rows)
        assert span(reduced, n) == span(rows, n)
        assert len(span(rows, n)) == 2**rank
        assert pivots == sorted(pivots)
        for i, (row, col) in enumerate(zip(reduced, pivots)):
            assert row[col] == 1
            assert all(other[col] == 0 for j, other in enumerate(reduced) if j != i)


class TestLinearCode:
    def test_repetition_codewords(self):
        assert codewords(LinearCode.from_strings(["111"])) == [bv("000"), bv("111")]

    def test_full_space_codewords(self):
        assert codewords(LinearCode.from_strings(["10", "01"])) == [
            bv("00"), bv("10"), bv("01"), bv("11"),
        ]
        assert set(codewords(LinearCode.from_strings(["10", "01"]))) == set(all_vectors(2))

    def test_codeword_order_is_combination_index(self):
        got = codewords(LinearCode.from_strings(["110", "011"]))
        assert got == [bv("000"), bv("110"), bv("011"), bv("101")]

    def test_rank_deficient_rejected(self):
        with pytest.raises(RankDeficiencyError):
            LinearCode.from_strings(["110", "110"])
        with pytest.raises(RankDeficiencyError):
            LinearCode.from_strings(["110", "011", "101"])

    def test_enumeration_cap(self):
        code = LinearCode.full_space(21)
        with pytest.raises(ResourceLimitError):
            codewords(code)

    def test_named_codes(self):
        assert set(codewords(LinearCode.even_weight(4))) == {
            v for v in all_vectors(4) if weight(v) % 2 == 0
        }
        assert codewords(LinearCode.zero(3)) == [bv("000")]


class TestDual:
    def test_repetition_dual_is_even_weight(self):
        d = dual(LinearCode.repetition(3))
        assert d.k == 2
        assert set(codewords(d)) == {bv("000"), bv("110"), bv("011"), bv("101")}

    def test_extremes(self):
        assert dual(LinearCode.full_space(3)).k == 0
        assert set(codewords(dual(LinearCode.zero(3)))) == set(all_vectors(3))

    @settings(max_examples=60)
    @given(linear_codes(max_n=10))
    def test_involution_dimension_orthogonality(self, code):
        d = dual(code)
        assert d.k == code.n - code.k
        words, dwords = codewords(code), codewords(d)
        assert len(dwords) == 2 ** (code.n - code.k)
        assert all(gf2_inner(c, h) == 0 for c in code.generator for h in d.generator)
        assert set(codewords(dual(d))) == set(words)

    def test_matches_brute_force(self, fixtures):
        for code in fixtures:
            assert set(codewords(dual(code))) == brute_dual(codewords(code), code.n)


class TestContains:
    def test_examples(self):
        rep = LinearCode.repetition(3)
        assert contains(rep, bv("111"))
        assert not contains(rep, bv("110"))
        assert contains(rep, bv("000"))
        with pytest.raises(InvalidArgumentError):
            contains(rep, bv("11"))

    @settings(max_examples=40)
    @given(linear_codes(max_n=8))
    def test_exhaustive_agreement_with_enumeration(self, code):
        words = set(codewords(code))
        for v in all_vectors(code.n):
            assert contains(code, v) == (v in words)


class TestCosetIntersection:
    def test_example(self):
        C = NonlinearCode.from_strings(["00", "01", "10"])
        assert coset_intersection(C, bv("11")) == {bv("01"), bv("10")}

    def test_zero_shift_is_identity(self):
        C = NonlinearCode.from_strings(["001", "010", "111"])
        assert coset_intersection(C, bv("000")) == C.words

    def test_linear_code_and_outside_shift(self):
        code = LinearCode.repetition(4)
        assert coset_intersection(code.as_nonlinear(), bv("1000")) == frozenset()
        assert coset_intersection(code.as_nonlinear(), bv("1111")) == code.as_nonlinear().words

    @given(st.integers(1, 6), st.data())
    def test_symmetry_and_even_size(self, n, data):
        words = data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))
        B = BitVector(n, data.draw(st.integers(0, (1 << n) - 1)))
        C = NonlinearCode(n, frozenset(BitVector(n, w) for w in words))
        inter = coset_intersection(C, B)
        assert inter == {X for X in C.words if X ^ B in C}
        assert all((X ^ B) in inter for X in inter)
        if B.value:
            assert len(inter) % 2 == 0


class TestNonlinearCode:
    def test_rejects_empty_and_duplicates(self):
        with pytest.raises(InvalidArgumentError):
            NonlinearCode.from_strings([])
        with pytest.raises(InvalidArgumentError):
            NonlinearCode.from_strings(["01", "01"])


class TestTextFormats:
    def test_generator_comments_and_blank_lines(self):
        code = parse_generator("# repetition\n\n111  # all ones\n")
        assert code.generator == (bv("111"),)

    def test_generator_error_position(self):
        with pytest.raises(ParseError, match=r"g\.txt:2:3"):
            parse_generator("110\n01x\n", "g.txt")

    def test_generator_length_mismatch(self):
        with pytest.raises(ParseError, match=":2:"):
            parse_generator("110\n01\n")

    def test_words_duplicate(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_words("01\n01\n")

    def test_file_round_trip(self, tmp_path, fixtures):
        for code in fixtures:
            if code.k == 0:
                continue
            path = tmp_path / "g.txt"
            path.write_text(format_generator(code))
            assert set(codewords(load_generator(path))) == set(codewords(code))
        path = tmp_path / "w.txt"
        path.write_text("00\n01\n# comment\n10\n")
        assert load_words(path).M == 3


def test_all_vectors_is_lexicographic():
    got = [str(v) for v in all_vectors(3)]
    assert got == ["".join(p) for p in itertools.product("01", repeat=3)]
    with pytest.raises(ResourceLimitError):
        next(all_vectors(21))
