# %% [markdown]
# # Adding time
#
# Given spatial modes with separation constants lambda_i, set
# k = (sum lambda_i)**n.  Then
# A exp(alpha k t) solves alpha * Laplacian^n u = u_t, and the matching
# exponential, trigonometric or linear factor solves beta^2 * Laplacian^n u = u_tt.

# %%
import numpy as np

from polyharm import Oscillatory, make_hyperbolic, make_parabolic, spacetime_residual

rng = np.random.default_rng(1)
pts = np.column_stack([rng.uniform(-2, 2, 50), rng.uniform(0, 1, 50)])

heat = make_parabolic([Oscillatory(1.0)], 1, alpha=1.0)      # cos(x) e^{-t}
wave = make_hyperbolic([Oscillatory(1.0)], 1, beta=1.0, C=1.0, D=0.0)  # cos(x) cos(t)
for name, sol in (("heat", heat), ("wave", wave)):
    rep = spacetime_residual(sol, pts, tol=1e-12)
    print(f"{name}: k={sol.time.k:+.3f}  max rel residual={rep.max_rel:.1e}  passed={rep.passed}")

# %% [markdown]
# A biharmonic variant with two oscillatory directions behaves the same way.

# %%
modes = [Oscillatory(0.8), Oscillatory(1.1, a=0.3, b=1.0)]
sol = make_parabolic(modes, 2, alpha=0.5)
pts3 = np.column_stack([rng.uniform(-2, 2, (50, 2)), rng.uniform(0, 1, 50)])
print("n=2:", spacetime_residual(sol, pts3).max_rel)
