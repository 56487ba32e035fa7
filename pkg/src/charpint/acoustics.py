"""Heterogeneous-media acoustics: material fields, the Godunov one-step
operator, characteristic transforms, and the closed-form characteristic-space
stencil blocks together with their pure-advection approximations."""

from dataclasses import dataclass

import numpy as np

from .grid import SpaceTimeGrid, UnstableStepError
from .kernels import acoustics_godunov
from .stencils import TridiagOperator


@dataclass(frozen=True)
class MaterialField:
    """Cell-centred sound speed and impedance of the medium."""

    c: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        if np.any(self.c <= 0) or np.any(self.Z <= 0):
            raise ValueError("sound speed and impedance must be positive")
        if self.c.shape != self.Z.shape:
            raise ValueError("c and Z must share the mesh")

    @classmethod
    def from_moduli(cls, K0, rho0):
        """Build from bulk modulus and density: c = sqrt(K0/rho0),
        Z = sqrt(K0*rho0)."""
        K0 = np.asarray(K0, dtype=float)
        rho0 = np.asarray(rho0, dtype=float)
        return cls(c=np.sqrt(K0 / rho0), Z=np.sqrt(K0 * rho0))

    @classmethod
    def sample(cls, c_fun, Z_fun, grid):
        x = grid.cell_centers()
        c = np.broadcast_to(np.asarray(c_fun(x), dtype=float), x.shape).copy()
        Z = np.broadcast_to(np.asarray(Z_fun(x), dtype=float), x.shape).copy()
        return cls(c=c, Z=Z)


def _neighbors(Z, periodic):
    """Z_{i-1} and Z_{i+1} with wrap or edge clamping."""
    if periodic:
        return np.roll(Z, 1), np.roll(Z, -1)
    Zm = np.concatenate(([Z[0]], Z[:-1]))
    Zp = np.concatenate((Z[1:], [Z[-1]]))
    return Zm, Zp


def char_transform(material):
    """Per-cell eigenvector matrices R and R^{-1} of the acoustics
    coefficient matrix, evaluated on the mesh.

    Columns of R are the left- and right-going wave directions; the wave
    ordering matches the ascending eigenvalue ordering (-c, +c).
    """
    Z = material.Z
    n = Z.shape[0]
    R = np.empty((n, 2, 2))
    R[:, 0, 0] = -Z
    R[:, 0, 1] = Z
    R[:, 1, 0] = 1.0
    R[:, 1, 1] = 1.0
    Rinv = np.empty((n, 2, 2))
    Rinv[:, 0, 0] = -0.5 / Z
    Rinv[:, 0, 1] = 0.5
    Rinv[:, 1, 0] = 0.5 / Z
    Rinv[:, 1, 1] = 0.5
    return R, Rinv


def char_blocks(material, grid):
    """Closed-form stencils of the Godunov step in characteristic space.

    Returns the four blocks keyed by (row, col) with 0 = left-going and
    1 = right-going wave; diagonal blocks are upwind stencils plus an
    impedance-variation term, off-diagonal blocks are purely diagonal.
    """
    nu = material.c * grid.dt / grid.h
    Z = material.Z
    Zm, Zp = _neighbors(Z, grid.periodic)
    zero = np.zeros_like(Z)
    per = grid.periodic
    b11 = TridiagOperator(zero, 1.0 - nu, nu * 2.0 * Zp / (Z + Zp), per)
    b22 = TridiagOperator(nu * 2.0 * Zm / (Zm + Z), 1.0 - nu, zero, per)
    b12 = TridiagOperator.diagonal(-nu * (Zp - Z) / (Zp + Z), per)
    b21 = TridiagOperator.diagonal(-nu * (Zm - Z) / (Zm + Z), per)
    return {(0, 0): b11, (0, 1): b12, (1, 0): b21, (1, 1): b22}


def advection_blocks(material, grid):
    """Upwind Godunov stencils of the decoupled advection operators with
    wave speeds -c (left-going) and +c (right-going).

    These coincide with the diagonal characteristic blocks wherever the
    impedance is constant.  Requires c > 0 everywhere.
    """
    if np.any(material.c <= 0):
        raise ValueError("advection approximation requires c > 0")
    nu = material.c * grid.dt / grid.h
    zero = np.zeros_like(nu)
    per = grid.periodic
    b11 = TridiagOperator(zero, 1.0 - nu, nu, per)
    b22 = TridiagOperator(nu, 1.0 - nu, zero, per)
    return b11, b22


class AcousticsStep:
    """Godunov one-step operator for the (p, u) acoustics system.

    Doubles as the linear space-time system handed to the block
    preconditioned outer iteration: it exposes the characteristic
    transform and the characteristic-space stencil blocks (which are
    constant in time for acoustics).
    """

    n_vars = 2
    # coarse-level semi-Lagrangian transport of the characteristic fields
    # does not need the conservative remap for this linear system
    conservative_coarse = False

    def __init__(self, grid: SpaceTimeGrid, material: MaterialField):
        if material.c.shape[0] != grid.n_x:
            raise ValueError("material not sampled on this mesh")
        cfl = float(np.max(material.c)) * grid.dt / grid.h
        if cfl > 1.0 + 1e-12:
            raise UnstableStepError(f"CFL {cfl:.3f} exceeds 1")
        self.grid = grid
        self.material = material
        self.cfl = cfl
        self._R, self._Rinv = char_transform(material)
        self._hat = char_blocks(material, grid)
        self._tilde = dict(zip(((0, 0), (1, 1)), advection_blocks(material, grid)))

    def apply(self, state, n=0):
        p, u = state
        pn, un = acoustics_godunov(p, u, self.material.c, self.material.Z,
                                   self.grid.dt / self.grid.h, self.grid.periodic)
        return np.stack((pn, un))

    __call__ = apply

    # -- characteristic-space interface used by the outer iteration --

    def to_char(self, v, n=0):
        return np.einsum("xij,jx->ix", self._Rinv, v)

    def from_char(self, w, n=0):
        return np.einsum("xij,jx->ix", self._R, w)

    def char_block_apply(self, s, j, x, n=0):
        """Action of the (s, j) characteristic-space block of the step."""
        return self._hat[(s, j)].apply(x)

    def approx_diag_apply(self, s, x, n=0):
        """Action of the pure-advection approximation of block (s, s)."""
        return self._tilde[(s, s)].apply(x)

    def wavespeed(self, s, n=0):
        """Signed advection speed field of characteristic variable s."""
        return -self.material.c if s == 0 else self.material.c

    @property
    def time_varying(self):
        return False
