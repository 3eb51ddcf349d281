import random

import pytest
from hypothesis import given, settings, strategies as st

from hjlift.jset import (
    ADDITION,
    Semigroup,
    Bounds,
    Exhausted,
    Witness,
    find_witness,
    find_witness_adequate,
    refute_s0_jset,
    verify_witness,
)
from hjlift.predicates import FALSE, TRUE, LengthMod, ValueMod, parse_predicate
from hjlift.psg import TableTruncation, fs_prefix
from hjlift.sequences import Block, Explicit, HorizonError, Multiple, Power, parse_sequences
from hjlift.words import Alphabet

import oracles

AB = Alphabet("ab")
WIDE = Alphabet("ab", max_length=64)
EVEN = LengthMod(2, 0)


def test_verify_witness_examples():
    F = [Multiple(1)]
    assert verify_witness(ValueMod(2, 0), F, Witness(1, (1, 1), (2,)), ADDITION)
    assert not verify_witness(ValueMod(2, 0), F, Witness(1, (1, 1), (1,)), ADDITION)
    assert verify_witness(TRUE, [Power((0,))], Witness(2, ((0,),) * 3, (1, 5)))


def test_witness_validation():
    with pytest.raises(ValueError):
        Witness(1, (1,), (1,))
    with pytest.raises(ValueError):
        Witness(2, (1, 1, 1), (2, 2))


def test_even_length_example_matches_oracle():
    b = Bounds(2, 4, 2)
    w = find_witness(EVEN, [Power((0,))], b, alphabet=AB)
    pool = oracles.letter_pool("ab", 2)
    m, t, a = oracles.first_witness(lambda s: len(s) % 2 == 0, [lambda t: "a" * t], pool, 2, 4)
    assert (w.m, w.t, tuple(AB.format(x) for x in w.a)) == (m, t, a) == (1, (1,), ("a", "aa"))


def test_always_false_exhausted():
    r = find_witness(FALSE, [Power((0,))], Bounds(2, 3, 1), alphabet=AB)
    assert isinstance(r, Exhausted) and not r
    assert r.candidates == oracles.candidate_total(2, 3, 2)


def test_parity_example_matches_oracle():
    F = [Multiple(1), Multiple(2)]
    w = find_witness(ValueMod(2, 0), F, Bounds(2, 4), pool=range(1, 5), semigroup=ADDITION)
    want = oracles.first_witness(lambda v: v % 2 == 0, [lambda t: t, lambda t: 2 * t], [1, 2, 3, 4], 2, 4)
    assert (w.m, w.t, w.a) == want == (1, (2,), (1, 1))


def test_adequate_example():
    t = fs_prefix((1, 2, 4, 8, 16, 32))
    L = [t.element([1])]
    w = find_witness_adequate(TRUE, [Block(t)], L, t, Bounds(1, 6, 1))
    assert (w.m, w.t) == (1, (2,))
    assert [x.indices for x in w.a] == [(3,), (4,)]


def test_adequate_sigma_empty():
    t = fs_prefix((1, 2, 4, 8, 16, 32))
    r = find_witness_adequate(TRUE, [Block(t)], [t.element(range(1, 7))], t, Bounds(1, 6, 1))
    assert isinstance(r, Exhausted) and "sigma(L) is empty" in r.reason


def test_adequate_even_value():
    t = fs_prefix((1, 2, 4, 8, 16, 32))
    w = find_witness_adequate(ValueMod(2, 0), [Block(t)], [t.element([1])], t, Bounds(2, 6, 1))
    p = t.op(t.op(w.a[0], Block(t)(w.t[0])), w.a[1])
    for j in range(1, w.m):
        p = t.op(t.op(p, Block(t)(w.t[j])), w.a[j + 1])
    assert p.value % 2 == 0 and 1 not in p.indices


def test_refutation():
    r = refute_s0_jset(1, AB, Bounds(2, 3, 2))
    assert r.passing == 0 and r.candidates > 0
    assert refute_s0_jset(2, AB, Bounds(2, 3, 2)).passing == 0
    r = refute_s0_jset(1, AB, Bounds(2, 3, 2), pool=[])
    assert r.candidates == 0 and r.passing == 0


def test_horizon_error():
    with pytest.raises(HorizonError):
        find_witness(TRUE, [Explicit(((0,), (1,)))], Bounds(1, 3, 1), alphabet=AB)


def test_empty_family_returns_least_candidate():
    w = find_witness(TRUE, [], Bounds(1, 2, 1), alphabet=AB)
    assert (w.m, w.t, w.a) == (1, (1,), ((0,), (0,)))
    assert not find_witness(TRUE, [], Bounds(1, 2, 1), pool=[], alphabet=AB)


def test_parsed_sequences():
    F = parse_sequences("; two sequences\npower a\nlist b bb bbb bbbb\n", AB)
    w = find_witness(EVEN, F, Bounds(2, 4, 1), alphabet=AB)
    assert w and verify_witness(EVEN, F, w)


ATOMS = [
    "(length-mod 2 0)",
    "(length-mod 3 1)",
    '(starts-with "a")',
    '(ends-with "b")',
    '(contains "ab")',
    '(letter-count-mod "a" 2 0)',
    "true",
]


def random_predicate(rng):
    a, b = rng.sample(ATOMS, 2)
    return rng.choice([a, f"(and {a} {b})", f"(or {a} {b})", f"(not {a})"])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instances_match_oracle(seed):
    rng = random.Random(seed)
    pred_text = random_predicate(rng)
    A = parse_predicate(pred_text, AB)
    bases = [rng.choice(["a", "b", "ab", "ba", "aab"]) for _ in range(rng.randint(1, 2))]
    F = [Power(AB.parse(s)) for s in bases]
    b = Bounds(rng.randint(1, 2), rng.randint(1, 3), 1)
    got = find_witness(A, F, b, alphabet=AB)
    pool = oracles.letter_pool("ab", 1)
    want = oracles.first_witness(
        lambda s: A(WIDE.parse(s)), [lambda t, s=s: s * t for s in bases], pool, b.m_max, b.t_horizon
    )
    if want is None:
        assert isinstance(got, Exhausted)
    else:
        assert (got.m, got.t, tuple(AB.format(x) for x in got.a)) == want


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_permuted_pool_same_witness(seed):
    rng = random.Random(seed)
    A = parse_predicate(random_predicate(rng), AB)
    F = [Power(AB.parse(rng.choice(["a", "ab", "b"])))]
    pool = list(AB.words_upto(2))
    b = Bounds(2, 3, 2)
    base = find_witness(A, F, b, pool=pool)
    rng.shuffle(pool)
    again = find_witness(A, F, b, pool=pool)
    assert (base == again) if base else (not again and base.candidates == again.candidates)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_superset_monotone(seed):
    rng = random.Random(seed)
    a, extra = rng.sample(ATOMS, 2)
    A = parse_predicate(a, AB)
    A2 = parse_predicate(f"(or {a} {extra})", AB)
    F = [Power(AB.parse(rng.choice(["a", "ab", "b"])))]
    b = Bounds(2, 3, 1)
    if find_witness(A, F, b, alphabet=AB):
        assert find_witness(A2, F, b, alphabet=AB)


def test_even_length_pigeonhole_small():
    rng = random.Random(7)
    for _ in range(20):
        F = [Explicit(tuple(AB.parse(rng.choice(["a", "ab", "bab", "aa"])) for _ in range(5)))]
        w = find_witness(EVEN, F, Bounds(2, 5, 1), alphabet=AB)
        assert w and w.m <= 2


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10**6))
def test_total_table_matches_semigroup_search(n, seed):
    # on a total table the adequate search with empty L is the plain search
    rng = random.Random(seed)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    t = TableTruncation(list(range(n)), table)
    coeffs = [rng.randrange(n) for _ in range(rng.randint(1, 2))]
    F = [lambda s, c=c: (c * s) % n for c in coeffs]
    A = lambda x, r=rng.randrange(n): x == r
    b = Bounds(2, 3)
    adequate = find_witness_adequate(A, F, [], t, b)
    plain = find_witness(A, F, b, pool=range(n), semigroup=Semigroup("Z_n", lambda x, y: (x + y) % n))
    assert adequate == plain if plain else (not adequate and adequate.candidates == plain.candidates)
