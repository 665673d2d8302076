# %% [markdown]
# # Checking the exact operator against finite differences
#
# The oracle applies the discrete Laplacian n times using only samples of the
# field.  Call this D_h.  For a solution, D_h u shrinks like h**2, and the
# observed order is the least-squares slope of log|D_h u| against log h.

# %%
from polyharm import ExpBasisFactor, Oscillatory, assemble
from polyharm.oracle import convergence_study

# cos(x1) * x2 * exp(-x2) is biharmonic
witness = assemble([Oscillatory(1.0)], ExpBasisFactor(-1.0, 2, q=(0.0, 1.0)), 2)
res = convergence_study(witness, [0.7, 1.3], 2)
for h, e in zip(res.h, res.errors):
    print(f"h={h:<7} residual={e: .3e}")
print("observed order", round(res.order, 3), "->", res.status)

# %% [markdown]
# The same field is not harmonic.  Here the discrete Laplacian converges
# to the exact value -2 cos(x1) exp(-x2), again at second order.

# %%
import numpy as np

p = np.array([0.7, 1.3])
exact = witness.apply_polyharmonic_exact(p, n=1)
res1 = convergence_study(witness, p, 1, exact=exact)
print("exact laplacian", float(exact), " order", round(res1.order, 3), res1.status)
