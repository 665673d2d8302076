# %% [markdown]
# # Expanding a power of the Laplacian
#
# The n-th power of the m-dimensional Laplacian is a sum of pure
# even-order partial derivatives, one per composition h of n into m
# non-negative parts.  Each term carries the multinomial weight n!/(h1!...hm!).

# %%
from math import comb

from polyharm import expand_polyharmonic

for n in (2, 3):
    terms = expand_polyharmonic(n, 2)
    print(f"n={n}, m=2:", [(t.index.h, t.coefficient) for t in terms])

# %% [markdown]
# The counts follow stars and bars, and the weights sum to m**n, which is
# what you get by applying the operator to exp(x1 + ... + xm).

# %%
for n in range(1, 5):
    for m in range(2, 5):
        terms = expand_polyharmonic(n, m)
        assert len(terms) == comb(n + m - 1, m - 1)
        assert sum(t.coefficient for t in terms) == m ** n
print("counts and weight sums agree for n < 5, m < 5")

# %% [markdown]
# Each term also lists the derivative order it asks of every coordinate,
# which is what the separable evaluator consumes.

# %%
for t in expand_polyharmonic(2, 3):
    print(t.coefficient, t.derivative_orders)
