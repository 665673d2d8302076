"""Separable solutions and half-space solvers for the polyharmonic equation."""

__version__ = "0.1.0"

from .expansion import (ExpansionTerm, MultiIndex, enumerate_multi_indices,  # noqa: E402
                        expand_polyharmonic, multinomial_coefficient)
from .modes import (Affine, ExpBasisFactor, Hyperbolic, LastFactor, Mode1D,  # noqa: E402
                    Oscillatory, annihilation_check, check_ode_chain)
from .separable import (SeparableSolution, assemble, eval_grid, random_solution,  # noqa: E402
                        residual_report)
from .grid import Grid, parse_grid  # noqa: E402
from .oracle import convergence_study, fd_laplacian, fd_polyharmonic  # noqa: E402
from .halfspace import (BoundaryData, HalfspaceSolution, QuadConfig,  # noqa: E402
                        convolve_halfplane, cross_validate, heaviside_closed_form,
                        poisson_kernel_eval, solve_halfspace)
from .evolution import (SpaceTimeSolution, make_hyperbolic, make_parabolic,  # noqa: E402
                        spacetime_residual)
