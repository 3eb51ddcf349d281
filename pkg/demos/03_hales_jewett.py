# %% [markdown]
# # Monochromatic lines
#
# A coloring of ``[k]^N`` either has a monochromatic combinatorial line or it
# does not. The search reports the canonical-least root.

# %%
from hjlift.hj import Coloring, find_mono_line, hj_number, search_line_free
from hjlift.words import Alphabet

abc = Alphabet("abc")
c = Coloring.from_function(3, 3, lambda w: 1 + (w[0] + w[2]) % 2)
line = find_mono_line(c)
print(abc.format(line.root), [abc.format(p) for p in line.points], "color", line.color)

# %% [markdown]
# With two letters and two colors every coloring of ``[2]^2`` has a line,
# so the Hales-Jewett number ``HJ(2,2)`` is 2.

# %%
print(hj_number(2, 2, 4))

# %% [markdown]
# For three letters the search finds a line-free 2-coloring of ``[3]^3``;
# all 37 roots are checked and none is monochromatic.

# %%
free = search_line_free(3, 2, 3)
print(free.colors)
print(find_mono_line(free))
