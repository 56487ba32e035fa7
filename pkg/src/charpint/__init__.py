"""All-at-once space-time solvers for 1D hyperbolic PDE systems with
characteristic-variable block preconditioning and MGRIT inner solvers."""

__version__ = "0.1.0"

from .grid import (CFSplitting, SolverReport, SpaceTimeGrid,  # noqa: F401
                   all_at_once_residual, f_relax, time_step_trajectory)
from .acoustics import AcousticsStep, MaterialField  # noqa: F401
from .conslaw import (Euler, InadmissibleStateError,  # noqa: F401
                      LinearizedSystem, ShallowWater)
from .blockprec import PrecConfig, char_outer_iteration  # noqa: F401
from .nonlinear import NonlinearConfig, nonlinear_solve  # noqa: F401
