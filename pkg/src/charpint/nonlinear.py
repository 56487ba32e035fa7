"""Outer nonlinear residual-correction solver with global linearization,
plus nested-iteration mesh continuation for generating initial iterates."""

import time
from dataclasses import dataclass, field

import numpy as np

from .blockprec import DIVERGENCE_FACTOR, PrecConfig, char_outer_iteration
from .conslaw import InadmissibleStateError, LinearizedSystem, nonlinear_step
from .grid import (CFSplitting, SolverReport, UnstableStepError,
                   all_at_once_residual, f_relax, norm2)

EXACT_TIMESTEPPING = "exact"
CHAR_BLOCK_PREC = "prec"


@dataclass(frozen=True)
class NonlinearConfig:
    """Outer-iteration controls.

    ``linear_mode`` selects how each linearized system is solved: "exact"
    uses sequential forward substitution, "prec" runs ``inner_it``
    characteristic block preconditioned iterations with settings ``prec``.
    """

    maxit: int = 15
    tol: float = 1e-10
    inner_it: int = 1
    linear_mode: str = EXACT_TIMESTEPPING
    prec: PrecConfig = field(default_factory=PrecConfig)
    m: int = 8

    def __post_init__(self):
        if self.maxit < 1 or self.inner_it < 1:
            raise ValueError("maxit and inner_it must be >= 1")
        if self.linear_mode not in (EXACT_TIMESTEPPING, CHAR_BLOCK_PREC):
            raise ValueError(f"unknown linear_mode {self.linear_mode!r}")


def _exact_linear_solve(lin, r):
    e = np.empty_like(r)
    e[0] = r[0]
    for n in range(r.shape[0] - 1):
        e[n + 1] = lin.step(e[n], n) + r[n + 1]
    return e


def nonlinear_solve(model, grid, q_init, cfg=None):
    """Solve the nonlinear all-at-once system by residual correction.

    Each sweep performs a nonlinear F-relaxation, freezes the relaxed
    trajectory to build the linearized one-step operator (with the Roe
    dissipation matrices held constant), solves the linearized error
    equation, and applies the correction.  An inadmissible state (dry or
    negative-density/pressure cell) anywhere in the process aborts the
    solve with the diagnostic recorded in the report.
    """
    cfg = NonlinearConfig() if cfg is None else cfg
    cf = CFSplitting(cfg.m)
    nu = grid.dt / grid.h
    per = grid.periodic

    def phi(state, n):
        return nonlinear_step(model, state, nu, per)

    q = q_init.copy()
    b = np.zeros_like(q)
    b[0] = q_init[0]
    report = SolverReport(inner_iteration_counts=[])
    t_start = time.perf_counter()
    r0_norm = None
    try:
        for k in range(cfg.maxit + 1):
            q = f_relax(phi, q, cf, b)
            r = all_at_once_residual(phi, q, b)
            if r0_norm is None:
                r0_norm = norm2(r)
                report.residual_history.append(1.0)
                if r0_norm == 0.0:
                    report.converged = True
                    break
            else:
                rel = norm2(r) / r0_norm
                report.residual_history.append(rel)
                report.iterations = k
                if rel <= cfg.tol:
                    report.converged = True
                    break
                if not np.isfinite(rel) or rel >= DIVERGENCE_FACTOR:
                    report.failure = "diverged"
                    break
            if k == cfg.maxit:
                break
            lin = LinearizedSystem(model, grid, q)
            if cfg.linear_mode == EXACT_TIMESTEPPING:
                e = _exact_linear_solve(lin, r)
                report.inner_iteration_counts.append(0)
            else:
                e, inner_rep = char_outer_iteration(
                    lin, r, cfg=cfg.prec, maxit=cfg.inner_it, tol=0.0)
                report.inner_iteration_counts.append(inner_rep.iterations)
            q = q + e
            # admissibility check wants the variable axis first
            model.check_admissible(np.swapaxes(q, 0, 1),
                                   context="after correction")
    except (InadmissibleStateError, UnstableStepError) as exc:
        report.failure = str(exc)
        report.converged = False
    report.wall_time = time.perf_counter() - t_start
    return q, report


def interpolate_trajectory(q_coarse, grid_c, grid_f):
    """Piecewise-linear interpolation of a space-time trajectory onto a
    finer grid, first in space (periodic wrap or edge clamp) then in
    time."""
    n_tc, n_vars, _ = q_coarse.shape
    xc = grid_c.cell_centers()
    xf = grid_f.cell_centers()
    if grid_c.periodic:
        L = grid_c.x_hi - grid_c.x_lo
        xp = np.concatenate((xc - L, xc, xc + L))
        in_x = np.empty((n_tc, n_vars, grid_f.n_x))
        for n in range(n_tc):
            for v in range(n_vars):
                yp = np.tile(q_coarse[n, v], 3)
                in_x[n, v] = np.interp(xf, xp, yp)
    else:
        in_x = np.empty((n_tc, n_vars, grid_f.n_x))
        for n in range(n_tc):
            for v in range(n_vars):
                in_x[n, v] = np.interp(xf, xc, q_coarse[n, v])
    tc = grid_c.times()
    tf = np.minimum(grid_f.times(), tc[-1])
    out = np.empty((grid_f.n_t, n_vars, grid_f.n_x))
    idx = np.clip(np.searchsorted(tc, tf, side="right") - 1, 0, n_tc - 2)
    w = (tf - tc[idx]) / (tc[idx + 1] - tc[idx])
    for j in range(grid_f.n_t):
        out[j] = (1.0 - w[j]) * in_x[idx[j]] + w[j] * in_x[idx[j] + 1]
    return out


def replicated_initial_guess(q0, n_t):
    """Trajectory guess holding the initial condition at every time point."""
    return np.broadcast_to(q0, (n_t,) + q0.shape).copy()


def nested_iteration_initializer(model, ic, grids, cfg=None):
    """Mesh-continuation initial iterates: solve on each coarser grid and
    interpolate the converged solution up to the next one.

    ``ic(grid)`` returns the discrete initial condition (n_vars, n_x) on a
    grid.  The coarsest guess replicates its initial condition over time.
    Returns the list of initial iterates, one per grid, and the solver
    reports of the continuation solves.
    """
    q_inits = [replicated_initial_guess(ic(grids[0]), grids[0].n_t)]
    reports = []
    for i in range(len(grids) - 1):
        q, rep = nonlinear_solve(model, grids[i], q_inits[i], cfg)
        reports.append(rep)
        q_inits.append(interpolate_trajectory(q, grids[i], grids[i + 1]))
        # keep the fine grid's own discrete initial condition exact
        q_inits[-1][0] = ic(grids[i + 1])
    return q_inits, reports
