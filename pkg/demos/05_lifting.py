# %% [markdown]
# # Lifting through homomorphisms
#
# A witness found in the variable words transfers to every image under the
# homomorphisms ``h_a``, ``h_b``. The first example finds one variable-word
# witness that works for all images at once.

# %%
from hjlift.jset import Bounds
from hjlift.lift import CSetStructure, SameLevel, cset_sequence, lemma1_lift, theorem3_find
from hjlift.predicates import LengthMod
from hjlift.sequences import Power
from hjlift.words import Alphabet, Substitution

ab = Alphabet("ab")
even = LengthMod(2, 0)
h_a, h_b = Substitution((0,)), Substitution((1,))
r = lemma1_lift([Power(ab.parse("a#1"))], [h_a, h_b], even, ab)
for row in r.table:
    print(row["f"], row["nu"], ab.format(row["product"]), "->", ab.format(row["image"]), row["in_D"])

# %% [markdown]
# An ``n``-variable word all of whose instances are even: found via the
# lifted search and cross-checked against direct enumeration.

# %%
lifted = theorem3_find(even, 2, ab, Bounds(2, 4, 1))
direct = theorem3_find(even, 2, ab, Bounds(2, 4, 1), strategy="direct")
print(ab.format(lifted.word), ab.format(direct.word))

# %% [markdown]
# Finally a sequence whose every product image stays in the level set.

# %%
seq = cset_sequence(CSetStructure((even,), SameLevel()), [h_a, h_b], 4, ab)
print([ab.format(x) for x in seq.sequence], len(seq.table), "products verified:", seq.verified)
