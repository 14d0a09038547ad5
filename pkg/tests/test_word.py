import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from klein_bu.errors import ParseError
from klein_bu.word import (
    U,
    V,
    FreeWord,
    apply_endo,
    delta,
    eps,
    format_word,
    gen,
    parse_word,
    sgn,
    w_commutator,
    w_conj,
    w_identity,
    w_inv,
    w_mul,
    w_pow,
    word_B,
    word_Bkl,
)

syllable_streams = st.lists(
    st.tuples(st.sampled_from([U, V]), st.integers(-3, 3)), max_size=64
)
words = syllable_streams.map(FreeWord)


def W(text):
    return parse_word(text)


@pytest.mark.parametrize("n, d, e, s", [(4, 0, 1, 1), (-3, 1, -1, -1), (0, 0, 1, 0), (3, 1, -1, 1), (5, 1, -1, 1), (-2, 0, 1, -1)])
def test_scalar_helpers(n, d, e, s):
    assert (delta(n), eps(n), sgn(n)) == (d, e, s)


def test_identity_and_inverse_basics():
    one = w_identity()
    assert not one and len(one) == 0
    assert w_inv(one) == one
    assert w_mul(one, W("u v")) == W("u v")


@pytest.mark.parametrize("a, b, expect", [
    ("u", "u^-1", "1"),
    ("u", "v", "u v"),
    ("u v", "v^-1 u", "u^2"),
])
def test_mul_examples(a, b, expect):
    assert w_mul(W(a), W(b)) == W(expect)


@pytest.mark.parametrize("a, expect", [("u v", "v^-1 u^-1"), ("1", "1"), ("u^2 v^-3", "v^3 u^-2")])
def test_inverse_examples(a, expect):
    assert w_inv(W(a)) == W(expect)


def test_powers():
    assert w_pow(W("u"), 3) == W("u^3")
    assert w_pow(W("u v"), -1) == W("v^-1 u^-1")
    assert w_pow(word_B(), 2) == W("u v u v^-1 u v u v^-1")
    assert w_pow(W("u v"), 0) == w_identity()


def test_conjugation_and_commutator():
    assert w_conj(W("v"), word_B()) == word_Bkl(1, 0)
    assert w_conj(W("u"), word_B()) == word_Bkl(0, 1)
    assert w_conj(w_identity(), W("u v")) == W("u v")
    assert w_commutator(W("u"), W("u")) == w_identity()
    assert w_commutator(W("v^2"), W("u")) == W("v^2 u v^-2 u^-1")
    assert w_commutator(W("u"), W("v")) == W("u v u^-1 v^-1")


def test_apply_endo():
    assert apply_endo(gen(U), gen(V), W("u v^2 u^-1")) == W("u v^2 u^-1")
    assert apply_endo(W("u^-1"), W("v"), W("u v")) == W("u^-1 v")


def test_B_words():
    assert str(word_B()) == "u v u v^-1"
    assert str(w_inv(word_B())) == "v u^-1 v^-1 u^-1"
    assert word_Bkl(0, 0) == word_B()
    assert str(word_Bkl(1, 0)) == "v u v u v^-2"
    # u^-1 B u = u^-1 u v u v^-1 u
    assert str(word_Bkl(0, -1)) == "v u v^-1 u"


@pytest.mark.parametrize("text, expect", [
    ("1", "1"),
    ("u", "u"),
    ("u^1 u^2", "u^3"),
    ("B", "u v u v^-1"),
    ("  v^-2   u^0 v^2 ", "1"),
    ("B^-1", "v u^-1 v^-1 u^-1"),
])
def test_parse_and_format(text, expect):
    assert format_word(parse_word(text)) == expect


@pytest.mark.parametrize("text", ["", "x", "u^", "u^a", "uv", "u^-", "1 u"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_gen_rejects_unknown_letter():
    with pytest.raises(ValueError):
        gen("w")


@given(syllable_streams)
def test_reduction_matches_naive_oracle(stream):
    expanded = [(x, 1 if e > 0 else -1) for x, e in stream for _ in range(abs(e))]
    w = FreeWord(stream)
    assert naive.letters(w) == naive.reduce_letters(expanded)
    assert FreeWord(w.syllables) == w


@given(words, words, words)
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == w_identity() == a.inverse() * a
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(words, st.integers(-5, 5), st.integers(-5, 5))
def test_power_laws(a, m, n):
    assert a ** (m + n) == a ** m * a ** n
    assert a ** m == naive.to_free(naive.power(naive.letters(a), m))


@given(words)
def test_format_parse_round_trip(a):
    assert parse_word(format_word(a)) == a


@given(words, words, words, words)
def test_apply_endo_is_multiplicative(iu, iv, a, b):
    assert apply_endo(iu, iv, a * b) == apply_endo(iu, iv, a) * apply_endo(iu, iv, b)
