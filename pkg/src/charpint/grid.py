"""Space-time grids, CF-splittings, block vectors and the all-at-once
residual machinery shared by every solver.

A space-time vector is stored as an ndarray of shape ``(n_t, n_vars, n_x)``;
flattening in C order gives the variable-major-per-time-point layout
(all cells of variable 0, then variable 1, ...) used throughout.
"""

from dataclasses import dataclass, field

import numpy as np

PERIODIC = "periodic"
EXTRAPOLATION = "extrapolation"


class DimensionMismatchError(ValueError):
    """Operands do not conform to the same space-time grid."""


class UnstableStepError(ValueError):
    """A step operator was asked to run outside its stability region."""


@dataclass(frozen=True)
class SpaceTimeGrid:
    """Uniform finite-volume mesh in space crossed with a uniform time grid.

    ``n_t`` counts time *points*, so the final time is ``(n_t - 1) * dt``.
    """

    n_x: int
    x_lo: float
    x_hi: float
    n_t: int
    dt: float
    bc: str = PERIODIC

    def __post_init__(self):
        if self.n_x < 3:
            raise ValueError(f"n_x must be >= 3, got {self.n_x}")
        if self.n_t < 2:
            raise ValueError(f"n_t must be >= 2, got {self.n_t}")
        if self.x_hi <= self.x_lo:
            raise ValueError("empty spatial domain")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.bc not in (PERIODIC, EXTRAPOLATION):
            raise ValueError(f"unknown boundary kind {self.bc!r}")

    @property
    def h(self):
        return (self.x_hi - self.x_lo) / self.n_x

    @property
    def T(self):
        return (self.n_t - 1) * self.dt

    @property
    def periodic(self):
        return self.bc == PERIODIC

    def cell_centers(self):
        return self.x_lo + (np.arange(self.n_x) + 0.5) * self.h

    def times(self):
        return np.arange(self.n_t) * self.dt


@dataclass(frozen=True)
class CFSplitting:
    """Coarsening factor m inducing C-points at indices 0, m, 2m, ..."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("coarsening factor must be > 1")

    def c_points(self, n_t):
        return np.arange(0, n_t, self.m)

    def is_c_point(self, n):
        return n % self.m == 0


@dataclass
class SolverReport:
    """Convergence record of an iterative solve.

    ``residual_history[0]`` is 1 by definition (norms are relative to the
    initial residual).
    """

    residual_history: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    inner_iteration_counts: list | None = None
    failure: str | None = None
    wall_time: float = 0.0


def zeros_like_spacetime(n_t, n_vars, n_x):
    return np.zeros((n_t, n_vars, n_x))


def check_conforming(*vecs):
    shapes = {v.shape for v in vecs}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"non-conforming shapes: {shapes}")


def time_step_trajectory(phi, q0, n_t):
    """Sequentially step a one-step operator from the initial state.

    ``phi(state, n)`` maps the state at time point n to time point n+1.
    """
    q = np.empty((n_t,) + q0.shape)
    q[0] = q0
    for n in range(n_t - 1):
        q[n + 1] = phi(q[n], n)
    return q


def all_at_once_residual(phi, q, b):
    """Residual of the all-at-once system: r^0 = b^0 - q^0 and
    r^{n+1} = b^{n+1} - (q^{n+1} - phi(q^n))."""
    check_conforming(q, b)
    r = np.empty_like(q)
    r[0] = b[0] - q[0]
    for n in range(q.shape[0] - 1):
        r[n + 1] = b[n + 1] - q[n + 1] + phi(q[n], n)
    return r


def f_relax(phi, q, cf, b=None):
    """F-relaxation: overwrite every F-point by time-stepping from its
    preceding C-point.  C-point entries are returned unmodified.

    Passing ``b`` adds the per-row right-hand side (needed when relaxing a
    residual equation whose rhs is nonzero at F-points).
    """
    n_t = q.shape[0]
    out = q.copy()
    for jm in range(0, n_t, cf.m):
        stop = min(jm + cf.m, n_t)
        for n in range(jm + 1, stop):
            out[n] = phi(out[n - 1], n - 1)
            if b is not None:
                out[n] += b[n]
    return out


def norm2(v):
    """2-norm with a fixed, index-ascending summation order."""
    flat = np.ravel(v)
    return float(np.sqrt(np.add.reduce(flat * flat)))


def relative_residual_norm(r, r0_norm):
    if r0_norm == 0:
        raise ZeroDivisionError("initial residual is zero: already converged")
    if r0_norm < 0:
        raise ValueError("r0_norm must be positive")
    return norm2(r) / r0_norm
