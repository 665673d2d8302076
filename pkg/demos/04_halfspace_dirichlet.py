# %% [markdown]
# # Harmonic extension into the upper half-plane
#
# There are two independent routes to u(x, y) with u(x, 0) = f(x):
# a Fourier superposition of cos(wx) e^{-wy} modes, and convolution with the
# Poisson kernel y / (pi (x^2 + y^2)).

# %%
import numpy as np

from polyharm import BoundaryData, convolve_halfplane, cross_validate, solve_halfspace
from polyharm.halfspace import heaviside_closed_form

grid = np.array([[x, y] for x in (-1.0, 0.0, 1.0) for y in (0.5, 1.0, 2.0)])

step = BoundaryData.heaviside()
u = convolve_halfplane(step, grid[:, 0], grid[:, 1])
print("step data, worst error vs 1/2 + arctan(x/y)/pi:",
      np.max(np.abs(u - heaviside_closed_form(grid[:, 0], grid[:, 1]))))

# %% [markdown]
# For a gaussian or a box, the two routes should agree.

# %%
for f in (BoundaryData.gaussian(1.0), BoundaryData.box(-1.0, 1.0)):
    rep = cross_validate(f, grid, 1e-4)
    print(f"{f.kind:8s} max |fourier - convolution| = {rep.max_diff:.2e}")

# %% [markdown]
# Close to the boundary the solution approaches the data, but only at first
# order in y.  For e^{-x^2} the exact value at x=0 is erfcx(y), roughly
# 1 - 2y/sqrt(pi).  So at y = 1e-3 the gap is still about 1.13e-3.

# %%
from scipy.special import erfcx

g = BoundaryData.gaussian(1.0)
hs = solve_halfspace(g, x_m_min=1e-3)
xs = np.array([-1.0, 0.0, 1.0])
u0 = hs.reconstruct(xs[:, None], np.full(3, 1e-3))
print("u(x, 1e-3) - f(x):", u0 - g.profile(xs))
print("erfcx(1e-3) - 1  :", erfcx(1e-3) - 1.0)
