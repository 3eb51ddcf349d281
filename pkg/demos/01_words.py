# %% [markdown]
# # Words and variable words
#
# A word is a tuple of small integers. Letters are ``0..k-1``; the
# variable ``v_i`` is stored as ``VAR_BASE + i`` and written ``#i``.

# %%
from hjlift.words import Alphabet, Substitution, is_sn, pattern_extract, substitute

ab = Alphabet("ab")
w = ab.parse("a#1b#2#1")
print(w)
print(ab.format(w), "is in S_2:", is_sn(w, 2))

# %% [markdown]
# Substituting letters for the variables gives an ordinary word. Each choice
# ``x`` of letters is one point of the combinatorial subspace rooted at ``w``.

# %%
for x in [(0, 0), (0, 1), (1, 0), (1, 1)]:
    print(x, ab.format(substitute(w, x)))

# %% [markdown]
# ``pattern_extract(w, 1)`` keeps the variables after the first, relabelled. The homomorphism
# ``h_a`` sends every variable to ``a`` and fixes constant words.

# %%
print(ab.format(pattern_extract(w, 1)))
h_a = Substitution((0, 0))
print(ab.format(h_a(w)), ab.format(h_a(ab.parse("ba"))))

# %% [markdown]
# Enumeration is in canonical order: by length, then lexicographic, letters
# before variables.

# %%
print([ab.format(u) for u in ab.sn_words(1, 3)][:10])
