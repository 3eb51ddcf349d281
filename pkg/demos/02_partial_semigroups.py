# %% [markdown]
# # Finite sums as a partial semigroup
#
# ``FS(x_1..x_T)`` is modelled by index sets: two elements combine only when
# their index sets are disjoint, and the value is the sum over the union.

# %%
from hjlift.psg import check_partial_associativity, fs_prefix, is_adequate_truncated, phi, sigma

t = fs_prefix((1, 2, 4, 8))
a, b = t.element([1]), t.element([3, 4])
ab_ = t.op(a, b)
print(a.indices, "*", b.indices, "=", ab_.indices, "value", ab_.value)
print("a * a defined?", t.op(a, a) is not None)

# %% [markdown]
# ``phi(g)`` is the set of elements that may follow ``g``; ``sigma`` of a
# family is their intersection.

# %%
print(sorted(e.indices for e in phi(t.element([2]), t)))
print(sorted(e.indices for e in sigma([t.element([1]), t.element([2])], t)))

# %% [markdown]
# Associativity holds wherever both sides are defined. Adequacy (every finite
# family has a common follower) fails only near the horizon, and the report
# says so.

# %%
print("violations:", check_partial_associativity(t))
print(is_adequate_truncated(t, 2))
