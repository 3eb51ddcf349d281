import itertools

import pytest
from hypothesis import given, strategies as st

from hjlift.words import (
    Alphabet,
    Identity,
    PatternExtract,
    Substitution,
    UserTable,
    VariableCount,
    WordError,
    apply_hom,
    check_hom_properties,
    concat,
    is_s0,
    is_sn,
    parse_hom,
    pattern_extract,
    substitute,
    substitute_by_word,
    var_count,
)

import oracles

AB = Alphabet("ab")
ABC = Alphabet("abc")
P = ABC.parse
F = ABC.format


def test_concat_examples():
    assert F(concat(P("ab"), P("ba"))) == "abba"
    assert F(concat(P(""), P("ab"))) == "ab"
    assert F(concat(P("a#1"), P("#1b"))) == "a#1#1b"


def test_substitute_examples():
    c, a, b = ABC.code("c"), ABC.code("a"), ABC.code("b")
    assert F(substitute(P("a#1b#1"), (c,))) == "acbc"
    assert F(substitute(P("#1#2"), (a, b))) == "ab"
    assert F(substitute(P("#1a#2#1"), (b, c))) == "bacb"


def test_substitute_by_word_examples():
    assert F(substitute_by_word(P("#1#2"), P("ab"))) == "ab"
    assert F(substitute_by_word(P("#2#1"), P("ab"))) == "ba"
    assert F(substitute_by_word(P("a#1#2b"), P("cc"))) == "accb"


def test_substitute_rejects_wrong_variable_set():
    with pytest.raises(WordError):
        substitute(P("#1#3"), (0, 1))
    with pytest.raises(WordError):
        substitute(P("ab"), (0,))


def test_var_count_examples():
    assert var_count(P("#1#1ab"), 1) == 2
    assert var_count(P("ab"), 1) == 0
    assert var_count(P("#1a#2#1"), 2) == 1


def test_pattern_extract_examples():
    assert F(pattern_extract(P("#1a#2b#1"), 1)) == "#1#1"
    assert F(pattern_extract(P("#1#2"), 1)) == "#1"
    assert F(pattern_extract(P("a#2#1#2#3"), 2)) == "#2#1#2"


def test_apply_hom_examples():
    h = Substitution((ABC.code("a"),))
    assert F(apply_hom(h, P("#1b"))) == "ab"
    assert F(apply_hom(h, P("cb"))) == "cb"
    assert apply_hom(VariableCount(1), P("#1#1c")) == 2


def test_hom_property_reports():
    r = check_hom_properties(Substitution((0,)), AB, 3)
    assert (r.is_homomorphism, r.is_s0_preserving, r.is_s0_independent) == (True, True, False)
    r = check_hom_properties(VariableCount(1), AB, 3)
    assert (r.is_homomorphism, r.is_s0_preserving, r.is_s0_independent) == (True, None, True)
    r = check_hom_properties(UserTable({0: (0, 1)}), AB, 3)
    assert r.is_homomorphism
    assert not r.is_s0_preserving


def test_parse_hom_round_trip():
    for text in ["subst:ab", "count:2", "extract:1/3", "identity", "table:a=ab,b=b", "table:a=1"]:
        assert parse_hom(text, AB).describe(AB) == text
    with pytest.raises(WordError):
        parse_hom("nope:1", AB)


def test_canonical_order_matches_oracle():
    got = [AB.format(w) for w in AB.words_upto(3, 1)]
    want = [oracles.to_lib(w) for L in range(1, 4) for w in oracles.all_words("ab", 1, L)]
    assert got == want


@pytest.mark.parametrize("n,max_len", [(1, 4), (2, 4), (3, 4)])
def test_sn_words_match_oracle(n, max_len):
    got = [AB.format(w) for w in AB.sn_words(n, max_len)]
    assert got == [oracles.to_lib(w) for w in oracles.n_var_words("ab", n, max_len)]


def test_max_length_enforced():
    short = Alphabet("ab", max_length=3)
    with pytest.raises(WordError):
        short.parse("abab")
    with pytest.raises(WordError):
        list(short.words_upto(4))


# exhaustive invariants at small length

SMALL = list(AB.words_upto(4))
SMALL1 = list(AB.words_upto(3, 1))


def test_concat_associative_exhaustive():
    short = list(AB.words_upto(3))
    for u, v, w in itertools.product(short, repeat=3):
        assert concat(concat(u, v), w) == concat(u, concat(v, w))


def test_substitute_is_homomorphism_exhaustive():
    for u, v in itertools.product(SMALL1, repeat=2):
        uv = concat(u, v)
        for x in range(2):
            if is_sn(u, 1) and is_sn(v, 1):
                assert substitute(uv, (x,)) == substitute(u, (x,)) + substitute(v, (x,))


def test_substitute_shape():
    for w in AB.sn_words(2, 4):
        for x in itertools.product(range(2), repeat=2):
            s = substitute(w, x)
            assert is_s0(s) and len(s) == len(w)


def test_pattern_extract_is_homomorphism():
    words = list(AB.sn_words(2, 3))
    for u, v in itertools.product(words, repeat=2):
        assert pattern_extract(u + v, 1, 2) == pattern_extract(u, 1, 2) + pattern_extract(v, 1, 2)


def test_hom_classes_basic():
    assert Identity()(P("a#1")) == P("a#1")
    assert PatternExtract(1, 2)(P("ab")) == ()


word_text = st.lists(st.sampled_from(["a", "b", "#1", "#2"]), min_size=0, max_size=10).map("".join)


@given(word_text)
def test_parse_format_round_trip(text):
    assert AB.format(AB.parse(text)) == text


@given(word_text, word_text)
def test_var_count_additive(s, t):
    u, v = AB.parse(s), AB.parse(t)
    for i in (1, 2):
        assert var_count(concat(u, v), i) == var_count(u, i) + var_count(v, i)


@given(word_text)
def test_substitution_preserves_length(s):
    w = AB.parse(s)
    h = Substitution((0, 1))
    if h.defined_on(w):
        assert len(h(w)) == len(w)
