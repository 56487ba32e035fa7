"""Catalog of benchmark problems: five acoustics media on the unit
space-time domain, and four conservation-law setups (depth perturbation,
density/pressure perturbation, dam break, Sod tube) with amplitude eps."""

from dataclasses import dataclass

import numpy as np

from .acoustics import MaterialField
from .conslaw import Euler, ShallowWater
from .grid import EXTRAPOLATION, PERIODIC, SpaceTimeGrid

ACOUSTICS_CFL = 0.85
N_LAYERS = 16


def tile_time_grid(T, dt_target):
    """Uniform time grid covering (0, T] exactly: round the step count up
    and shrink dt so that (n_t - 1) dt == T."""
    n_t = int(np.ceil(T / dt_target - 1e-12)) + 1
    return T / (n_t - 1), n_t


# -- acoustics media ---------------------------------------------------------

def material_functions(material_id, seed=0):
    """Sound speed and impedance profiles of the five catalog media.

    Medium 5 is a randomly layered material: both fields are piecewise
    constant over 16 layers with values drawn uniformly from [0.5, 2.5].
    """
    if material_id == 1:
        return (lambda x: 1.0 + 0.5 * np.sin(10 * np.pi * x),
                lambda x: np.ones_like(x))
    if material_id == 2:
        return (lambda x: 1.0 + 0.5 * np.sin(10 * np.pi * x),
                lambda x: 1.0 + 0.25 * np.cos(10 * np.pi * x))
    if material_id == 3:
        return (lambda x: np.where((x > 0.35) & (x < 0.65), 2.0, 0.6),
                lambda x: np.where((x > 0.35) & (x < 0.65), 2.0, 6.0))
    if material_id == 4:
        return (lambda x: np.ones_like(x),
                lambda x: np.where(np.mod(np.floor(N_LAYERS * x), 2) == 0,
                                   1.0, 2.0))
    if material_id == 5:
        rng = np.random.default_rng(seed)
        c_vals = rng.uniform(0.5, 2.5, N_LAYERS)
        Z_vals = rng.uniform(0.5, 2.5, N_LAYERS)

        def layer(x, vals):
            idx = np.clip(np.floor(N_LAYERS * x).astype(int), 0, N_LAYERS - 1)
            return vals[idx]

        return (lambda x: layer(x, c_vals), lambda x: layer(x, Z_vals))
    raise ValueError(f"unknown material id {material_id}")


def acoustics_pulse(x):
    """Discrete initial condition (p, u): unit pressure with a raised
    cosine pulse on (0.4, 0.6) and zero velocity."""
    p = np.where((x > 0.4) & (x < 0.6),
                 0.25 * (7.0 - 3.0 * np.cos(10 * np.pi * x - 4 * np.pi)),
                 1.0)
    return np.stack((p, np.zeros_like(x)))


def acoustics_problem(material_id, n_x, cfl=ACOUSTICS_CFL, n_t=None, seed=0):
    """Grid, material and initial condition of an acoustics catalog run on
    (0, 1) x (0, 1] with dt = cfl * h / max c0, shrunk to tile T exactly."""
    h = 1.0 / n_x
    x = (np.arange(n_x) + 0.5) * h
    c_fun, Z_fun = material_functions(material_id, seed)
    material = MaterialField(
        c=np.broadcast_to(np.asarray(c_fun(x), dtype=float), x.shape).copy(),
        Z=np.broadcast_to(np.asarray(Z_fun(x), dtype=float), x.shape).copy())
    T = 1.0
    if n_t is None:
        dt, n_t = tile_time_grid(T, cfl * h / float(np.max(material.c)))
    else:
        dt = T / (n_t - 1)
    grid = SpaceTimeGrid(n_x, 0.0, 1.0, n_t, dt, PERIODIC)
    return grid, material, acoustics_pulse(x)


# -- conservation-law problems -----------------------------------------------

@dataclass(frozen=True)
class NonlinearProblem:
    name: str
    model_kind: str            # "swe" or "euler"
    x_lo: float
    x_hi: float
    T: float
    cfl: float                 # target max |lambda| dt / h at t = 0
    default_eps: float
    bc: str


CATALOG = {
    "idp": NonlinearProblem("idp", "swe", -5.0, 5.0, 10.0, 0.8, 0.1,
                            PERIODIC),
    "idpp": NonlinearProblem("idpp", "euler", -5.0, 5.0, 10.0, 0.7, 0.2,
                             PERIODIC),
    "db": NonlinearProblem("db", "swe", -10.0, 10.0, 5.0, 0.8, 0.1,
                           EXTRAPOLATION),
    "sod": NonlinearProblem("sod", "euler", 0.0, 1.0, 0.25, 0.45, 0.125,
                            EXTRAPOLATION),
}


def make_model(kind):
    if kind == "swe":
        return ShallowWater(g=1.0)
    if kind == "euler":
        return Euler(gamma=7.0 / 5.0)
    raise ValueError(f"unknown model kind {kind}")


def initial_condition(name, x, eps, gamma=7.0 / 5.0):
    """Discrete initial condition of a catalog problem at cell centres."""
    z = np.zeros_like(x)
    if name == "idp":
        h = 1.0 + eps * np.exp(-5.0 * (x - 2.5) ** 2)
        return np.stack((h, z))
    if name == "idpp":
        rho = 1.0 + eps * np.exp(-5.0 * (x - 2.5) ** 2)
        # p = rho and u = 0, so E = p / (gamma - 1)
        return np.stack((rho, z, rho / (gamma - 1.0)))
    if name == "db":
        h = np.where(x < 0.0, 1.0 + eps, 1.0)
        return np.stack((h, z))
    if name == "sod":
        rho = np.where(x < 0.5, 1.0, 1.0 - eps)
        return np.stack((rho, z, rho / (gamma - 1.0)))
    raise ValueError(f"unknown problem {name}")


def nonlinear_problem(name, n_x, eps=None, cfl=None, n_t=None):
    """Model, grid and initial condition of a conservation-law catalog run.

    dt is constant across the time domain, set from the fastest initial
    wave speed and the problem's CFL constant, then shrunk to tile T.
    """
    try:
        prob = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown problem {name}") from None
    eps = prob.default_eps if eps is None else eps
    cfl = prob.cfl if cfl is None else cfl
    model = make_model(prob.model_kind)
    h = (prob.x_hi - prob.x_lo) / n_x
    x = prob.x_lo + (np.arange(n_x) + 0.5) * h
    gamma = getattr(model, "gamma", 7.0 / 5.0)
    q0 = initial_condition(name, x, eps, gamma)
    if n_t is None:
        dt, n_t = tile_time_grid(prob.T, cfl * h / model.max_wavespeed(q0))
    else:
        dt = prob.T / (n_t - 1)
    grid = SpaceTimeGrid(n_x, prob.x_lo, prob.x_hi, n_t, dt, prob.bc)
    return model, grid, q0
