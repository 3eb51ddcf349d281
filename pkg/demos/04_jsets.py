# %% [markdown]
# # Bounded J-set witnesses
#
# Given sequences ``F`` and a predicate ``A``, a witness is ``m``, times
# ``t_1 < ... < t_m`` and connectors ``a_0..a_m`` such that every
# alternating product ``a_0 f(t_1) a_1 ... f(t_m) a_m`` lands in ``A``.

# %%
from hjlift.jset import ADDITION, Bounds, find_witness, refute_s0_jset
from hjlift.predicates import LengthMod, ValueMod
from hjlift.sequences import Multiple, Power
from hjlift.words import Alphabet

ab = Alphabet("ab")
w = find_witness(LengthMod(2, 0), [Power(ab.parse("a"))], Bounds(2, 4, 2), alphabet=ab)
print(w.m, w.t, [ab.format(x) for x in w.a])

# %% [markdown]
# The same search runs in ``(N, +)``. Searches are exhaustive up to the
# bounds, so a negative answer is a statement about those bounds only.

# %%
print(find_witness(ValueMod(2, 0), [Multiple(1), Multiple(2)], Bounds(2, 4), pool=range(1, 5), semigroup=ADDITION))
print(refute_s0_jset(1, ab, Bounds(2, 3, 2)))
