"""Scalar all-at-once advection solvers: MGRIT V-cycles with F/FCF
relaxation and modified semi-Lagrangian coarse operators whose added
dissipation is matched to the truncation error of the fine-grid scheme."""

import numpy as np

from .grid import UnstableStepError, norm2
from .kernels import sl_advect
from .stencils import TridiagOperator


def semi_lagrangian_step(c, dt, h, u, periodic, conservative=False):
    """First-order semi-Lagrangian advection: trace characteristics back by
    c*dt and interpolate (non-conservative) or remap cell averages over the
    departure intervals (conservative).  Stable for any c*dt/h."""
    return sl_advect(np.ascontiguousarray(u, dtype=float),
                     np.ascontiguousarray(np.broadcast_to(c, u.shape), dtype=float),
                     float(dt), float(h), periodic, conservative)


def dissipation_coefficients(c, dt, h, m, level):
    """Per-cell coefficients of the Laplacian correction applied after the
    semi-Lagrangian step on coarse level `level`.

    Matches the accumulated modified-equation dissipation of m^level fine
    upwind steps (fine CFL nu0 = |c| dt / h) against the dissipation of one
    coarse semi-Lagrangian step, whose fractional offset eps contributes
    eps (1 - eps) h^2 / 2.  Tiny negatives from roundoff are clamped to 0.
    """
    nu0 = np.abs(c) * dt / h
    if np.any(nu0 > 1.0 + 1e-12):
        raise UnstableStepError("fine-grid CFL exceeds 1")
    mt = float(m) ** level
    coarse_nu = mt * nu0
    eps = coarse_nu - np.floor(coarse_nu)
    gamma = 0.5 * h * h * (mt * nu0 * (1.0 - nu0) - eps * (1.0 - eps))
    return np.maximum(gamma, 0.0)


def gmres(matvec, b, rtol=0.01, maxiter=10):
    """Unrestarted GMRES from a zero initial guess.

    Returns (x, iterations, achieved relative residual).  On (lucky)
    breakdown the current least-squares solution is returned.
    """
    normb = norm2(b)
    if normb == 0.0:
        return np.zeros_like(b), 0, 0.0
    V = [b / normb]
    H = np.zeros((maxiter + 1, maxiter))
    res = 1.0
    k = 0
    for k in range(1, maxiter + 1):
        w = matvec(V[k - 1])
        for j in range(k):
            H[j, k - 1] = np.dot(V[j], w)
            w = w - H[j, k - 1] * V[j]
        hnorm = norm2(w)
        H[k, k - 1] = hnorm
        broke = hnorm < 1e-14 * normb
        if not broke:
            V.append(w / hnorm)
        rhs = np.zeros(k + 1)
        rhs[0] = normb
        y, lsq_res, _, _ = np.linalg.lstsq(H[: k + 1, :k], rhs, rcond=None)
        res = norm2(H[: k + 1, :k] @ y - rhs) / normb
        if broke or res <= rtol:
            break
    y_full = y
    x = np.zeros_like(b)
    for j in range(len(y_full)):
        x += y_full[j] * V[j]
    return x, k, res


class CoarseStep:
    """Coarse-level time-step operator: semi-Lagrangian advection followed
    by an approximate solve of (I - diag(gamma) D2) v = w via GMRES
    (relative tolerance 0.01, at most 10 iterations)."""

    def __init__(self, problem, level, m):
        self.problem = problem
        self.level = level
        self.dt_coarse = problem.dt * m ** level
        self.stride = m ** level
        self.gmres_fallbacks = 0
        self._cache = {} if problem.time_varying else None
        if not problem.time_varying:
            self._const = self._build(0)

    def _build(self, n_coarse):
        p = self.problem
        # sample the speed field at the middle of the coarse interval; for
        # time-varying fields this traces departure points noticeably
        # better than the interval start
        mid = min(n_coarse * self.stride + self.stride // 2, p.n_t - 2)
        c = np.asarray(p.wavespeed(max(mid, 0)), dtype=float)
        c = np.broadcast_to(c, (p.n_x,)).copy()
        gamma = dissipation_coefficients(c, p.dt, p.h, self.problem.m, self.level)
        if np.any(gamma > 0.0):
            gh2 = gamma / (p.h * p.h)
            corr = TridiagOperator(-gh2, 1.0 + 2.0 * gh2, -gh2, p.periodic)
        else:
            corr = None
        return c, corr

    def _get(self, n_coarse):
        if self._cache is None:
            return self._const
        if n_coarse not in self._cache:
            self._cache[n_coarse] = self._build(n_coarse)
        return self._cache[n_coarse]

    def __call__(self, u, n_coarse):
        p = self.problem
        c, corr = self._get(n_coarse)
        w = semi_lagrangian_step(c, self.dt_coarse, p.h, u, p.periodic,
                                 p.conservative)
        if corr is None:
            return w
        try:
            v, _, _ = gmres(corr.apply, w)
        except np.linalg.LinAlgError:
            self.gmres_fallbacks += 1
            return w
        return v


class ScalarAdvectionProblem:
    """Description of a level-0 scalar all-at-once advection system.

    ``fine_step(x, n)`` applies the fine one-step operator over step n;
    ``wavespeed(n)`` returns the signed cellwise speed used to trace
    departure points on coarse levels.
    """

    def __init__(self, n_x, h, dt, n_t, periodic, fine_step, wavespeed,
                 m=8, conservative=False, time_varying=False):
        self.n_x = n_x
        self.h = h
        self.dt = dt
        self.n_t = n_t
        self.periodic = periodic
        self.fine_step = fine_step
        self.wavespeed = wavespeed
        self.m = m
        self.conservative = conservative
        self.time_varying = time_varying


class MgritHierarchy:
    """Multilevel time hierarchy: the given fine operator on level 0 and
    corrected semi-Lagrangian operators on all coarser levels.  Coarsening
    by m stops when another level would have fewer than two time points."""

    def __init__(self, problem, m=None):
        m = problem.m if m is None else m
        self.m = m
        self.problem = problem
        self.steps = [problem.fine_step]
        self.n_ts = [problem.n_t]
        level = 1
        while (self.n_ts[-1] - 1) // m + 1 >= 2:
            self.n_ts.append((self.n_ts[-1] - 1) // m + 1)
            self.steps.append(CoarseStep(problem, level, m))
            level += 1

    @property
    def n_levels(self):
        return len(self.steps)

    def gmres_fallbacks(self):
        return sum(s.gmres_fallbacks for s in self.steps[1:])


def _f_relax_scalar(step, u, g, m):
    n_t = u.shape[0]
    for jm in range(0, n_t, m):
        stop = min(jm + m, n_t)
        for n in range(jm + 1, stop):
            u[n] = step(u[n - 1], n - 1) + g[n]
    return u


def _c_relax_scalar(step, u, g, m):
    n_t = u.shape[0]
    for jm in range(m, n_t, m):
        u[jm] = step(u[jm - 1], jm - 1) + g[jm]
    return u


def _sequential_solve(step, g):
    u = np.empty_like(g)
    u[0] = g[0]
    for n in range(g.shape[0] - 1):
        u[n + 1] = step(u[n], n) + g[n + 1]
    return u


def mgrit_vcycle(hier, b, u0):
    """One MGRIT V-cycle on the all-at-once system defined by the
    hierarchy's level-0 operator: F-relaxation on the finest level,
    FCF-relaxation on coarser levels, injection restriction of C-point
    residuals, and a sequential solve on the coarsest level."""
    return _vcycle(hier, 0, b.copy(), u0.copy())


def _vcycle(hier, level, g, u):
    m = hier.m
    step = hier.steps[level]
    if level == hier.n_levels - 1:
        return _sequential_solve(step, g)
    u = _f_relax_scalar(step, u, g, m)
    if level > 0:
        u = _c_relax_scalar(step, u, g, m)
        u = _f_relax_scalar(step, u, g, m)
    n_tc = hier.n_ts[level + 1]
    g_c = np.zeros((n_tc,) + u.shape[1:])
    g_c[0] = g[0] - u[0]
    for j in range(1, n_tc):
        idx = j * m
        g_c[j] = g[idx] - u[idx] + step(u[idx - 1], idx - 1)
    e_c = _vcycle(hier, level + 1, g_c, np.zeros_like(g_c))
    for j in range(n_tc):
        u[j * m] += e_c[j]
    u = _f_relax_scalar(step, u, g, m)
    return u


def mgrit_solve(hier, b, u0=None, vcycles=1):
    """Apply a fixed number of V-cycles; per the solver configuration the
    initial iterate defaults to the right-hand side vector."""
    u = b.copy() if u0 is None else u0.copy()
    for _ in range(vcycles):
        u = _vcycle(hier, 0, b.copy(), u)
    return u
