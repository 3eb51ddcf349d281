import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hjlift.hj import (
    Coloring,
    count_roots,
    cylinder,
    find_mono_line,
    hj_number,
    search_line_free,
    variable_words,
)
from hjlift.words import Alphabet

import oracles

AB = Alphabet("ab")


def test_find_line_starts_with_a():
    c = Coloring.from_function(2, 2, lambda w: 1 if w[0] == 0 else 2)
    line = find_mono_line(c)
    assert AB.format(line.root) == "a#1"
    assert [AB.format(p) for p in line.points] == ["aa", "ab"]
    assert line.color == 1


def test_find_line_constant_one_letter():
    c = Coloring.from_function(2, 1, lambda w: 1)
    assert AB.format(find_mono_line(c).root) == "#1"


def test_line_free_examples():
    c = search_line_free(2, 2, 1)
    assert dict(c.items()) == {(0,): 1, (1,): 2}
    assert search_line_free(2, 2, 2) is None
    c = search_line_free(3, 2, 3)
    assert c is not None and find_mono_line(c) is None


def test_hj_number_examples():
    assert hj_number(2, 2, 4).value == 2
    assert hj_number(1, 3, 2).value == 1
    r = hj_number(3, 2, 3)
    assert r.value is None and str(r) == "unresolved at 3"


def test_roots_count():
    assert count_roots(3, 3, 1) == 37
    for k, N, n in [(2, 3, 1), (2, 3, 2), (3, 2, 2)]:
        assert count_roots(k, N, n) == len(oracles.lines("abc"[:k], N, n))
        assert len(list(variable_words(k, N, n))) == count_roots(k, N, n)


@pytest.mark.parametrize("k,c,N", [(2, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 1), (3, 2, 2)])
def test_line_free_count_oracle(k, c, N):
    found = search_line_free(k, c, N)
    assert (found is None) == (oracles.count_line_free("abc"[:k], c, N) == 0)


def test_exhaustive_and_backtracking_agree():
    for k, c, N in [(2, 3, 2), (3, 2, 2), (2, 2, 1), (3, 3, 2)]:
        a = search_line_free(k, c, N, mode="exhaustive")
        b = search_line_free(k, c, N, mode="backtrack")
        assert a == b


def test_lex_least_line_free_oracle():
    # lex-least coloring (cells in lex order) with no monochromatic line
    letters, c, N = "ab", 3, 2
    cells = oracles.all_words(letters, 0, N)
    want = next(
        cols
        for cols in itertools.product(range(1, c + 1), repeat=len(cells))
        if not oracles.has_mono_line(dict(zip(cells, cols)), letters, N)
    )
    assert search_line_free(2, c, N).colors == want


def test_cylinder_of_line_free_is_line_free():
    r = hj_number(3, 2, 3)
    for N, ok in r.cylinder_checks.items():
        assert ok
        assert find_mono_line(cylinder(r.line_free[N])) is None


def test_threads_do_not_change_results():
    base = search_line_free(3, 2, 3)
    for w in (2, 8):
        assert search_line_free(3, 2, 3, workers=w) == base
    c = Coloring.from_function(3, 3, lambda w: 1 + (sum(w) % 2))
    assert find_mono_line(c, workers=8) == find_mono_line(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3), st.integers(1, 3), st.integers(2, 3), st.data())
def test_find_mono_line_oracle(k, N, c, data):
    letters = "abc"[:k]
    cells = oracles.all_words(letters, 0, N)
    cols = data.draw(st.lists(st.integers(1, c), min_size=len(cells), max_size=len(cells)))
    line = find_mono_line(Coloring(k, N, tuple(cols)))
    coloring = dict(zip(cells, cols))
    mono = [
        r for r in oracles.n_var_words(letters, 1, N)
        if len(r) == N and len({coloring[p] for p in oracles.instances(r, letters, 1)}) == 1
    ]
    if not mono:
        assert line is None
    else:
        assert oracles.from_lib(Alphabet(letters).format(line.root)) == mono[0]


def test_two_variable_lines():
    c = Coloring.from_function(2, 2, lambda w: 1)
    line = find_mono_line(c, n=2)
    assert AB.format(line.root) == "#1#2" and len(line.points) == 4


def test_coloring_validation():
    with pytest.raises(ValueError):
        Coloring(2, 1, (0, 1))
    with pytest.raises(ValueError):
        Coloring(2, 2, (1, 1, 1))
