"""Nonlinear conservation-law physics: shallow water and Euler flux models,
Roe linearizations with the Harten entropy fix, the nonlinear one-step
operator, and its frozen-dissipation linearization."""

import numpy as np

from .grid import SpaceTimeGrid
from .kernels import scalar_roe_step

ENTROPY_DELTA = 1e-6


class InadmissibleStateError(RuntimeError):
    """A state left the physically admissible set (h > 0, or rho, p > 0)."""


def entropy_fix(lam, delta=ENTROPY_DELTA):
    """Harten-smoothed absolute value: |lam| away from zero, a parabolic
    blend (lam^2 + delta^2) / (2 delta) inside |lam| < delta."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    a = np.abs(lam)
    return np.where(a >= delta, a, (lam * lam + delta * delta) / (2.0 * delta))


class ShallowWater:
    """1D shallow water equations in (h, hu) variables."""

    n_vars = 2
    name = "swe"

    def __init__(self, g=1.0):
        self.g = g

    def check_admissible(self, q, context=""):
        if np.any(q[0] <= 0) or not np.all(np.isfinite(q)):
            raise InadmissibleStateError(f"non-positive water height {context}")

    def flux(self, q):
        h, hu = q
        u = hu / h
        return np.stack((hu, hu * u + 0.5 * self.g * h * h))

    def jacobian(self, q):
        h, hu = q
        u = hu / h
        A = np.empty(q.shape[1:] + (2, 2))
        A[..., 0, 0] = 0.0
        A[..., 0, 1] = 1.0
        A[..., 1, 0] = self.g * h - u * u
        A[..., 1, 1] = 2.0 * u
        return A

    def _eig_from_uc(self, u, c):
        lam = np.stack((u - c, u + c))
        shape = u.shape + (2, 2)
        R = np.empty(shape)
        R[..., 0, 0] = 1.0
        R[..., 0, 1] = 1.0
        R[..., 1, 0] = lam[0]
        R[..., 1, 1] = lam[1]
        Rinv = np.empty(shape)
        spread = lam[1] - lam[0]
        Rinv[..., 0, 0] = lam[1] / spread
        Rinv[..., 0, 1] = -1.0 / spread
        Rinv[..., 1, 0] = -lam[0] / spread
        Rinv[..., 1, 1] = 1.0 / spread
        return lam, R, Rinv

    def eigensystem(self, q):
        """Eigenvalues (ascending) and right/left eigenvector matrices of
        the flux Jacobian at each cell."""
        self.check_admissible(q)
        h, hu = q
        return self._eig_from_uc(hu / h, np.sqrt(self.g * h))

    def roe_eigensystem(self, qL, qR):
        """Eigensystem of the Roe-averaged flux Jacobian between state
        pairs: sqrt(h)-weighted velocity and arithmetic-mean height."""
        self.check_admissible(qL, "(left Roe state)")
        self.check_admissible(qR, "(right Roe state)")
        sL = np.sqrt(qL[0])
        sR = np.sqrt(qR[0])
        u = (sL * (qL[1] / qL[0]) + sR * (qR[1] / qR[0])) / (sL + sR)
        hbar = 0.5 * (qL[0] + qR[0])
        return self._eig_from_uc(u, np.sqrt(self.g * hbar))

    def max_wavespeed(self, q):
        h, hu = q
        return float(np.max(np.abs(hu / h) + np.sqrt(self.g * h)))


class Euler:
    """1D Euler equations of gas dynamics in (rho, rho u, E) variables with
    an ideal polytropic equation of state."""

    n_vars = 3
    name = "euler"

    def __init__(self, gamma=7.0 / 5.0):
        self.gamma = gamma

    def pressure(self, q):
        rho, m, E = q
        return (self.gamma - 1.0) * (E - 0.5 * m * m / rho)

    def check_admissible(self, q, context=""):
        if np.any(q[0] <= 0) or not np.all(np.isfinite(q)):
            raise InadmissibleStateError(f"non-positive density {context}")
        if np.any(self.pressure(q) <= 0):
            raise InadmissibleStateError(f"non-positive pressure {context}")

    def flux(self, q):
        rho, m, E = q
        u = m / rho
        p = self.pressure(q)
        return np.stack((m, m * u + p, (E + p) * u))

    def jacobian(self, q):
        rho, m, E = q
        u = m / rho
        p = self.pressure(q)
        H = (E + p) / rho
        gm = self.gamma - 1.0
        A = np.empty(q.shape[1:] + (3, 3))
        A[..., 0, 0] = 0.0
        A[..., 0, 1] = 1.0
        A[..., 0, 2] = 0.0
        A[..., 1, 0] = 0.5 * (self.gamma - 3.0) * u * u
        A[..., 1, 1] = (3.0 - self.gamma) * u
        A[..., 1, 2] = gm
        A[..., 2, 0] = 0.5 * gm * u ** 3 - u * H
        A[..., 2, 1] = H - gm * u * u
        A[..., 2, 2] = self.gamma * u
        return A

    def _eig_from_uch(self, u, c, H):
        lam = np.stack((u - c, u, u + c))
        shape = u.shape + (3, 3)
        R = np.empty(shape)
        R[..., 0, :] = 1.0
        R[..., 1, 0] = u - c
        R[..., 1, 1] = u
        R[..., 1, 2] = u + c
        R[..., 2, 0] = H - u * c
        R[..., 2, 1] = 0.5 * u * u
        R[..., 2, 2] = H + u * c
        gm = self.gamma - 1.0
        pref = gm / (2.0 * c * c)
        Rinv = np.empty(shape)
        Rinv[..., 0, 0] = pref * (H + c * (u - c) / gm)
        Rinv[..., 0, 1] = pref * (-u - c / gm)
        Rinv[..., 0, 2] = pref
        Rinv[..., 1, 0] = pref * (4.0 * c * c / gm - 2.0 * H)
        Rinv[..., 1, 1] = pref * 2.0 * u
        Rinv[..., 1, 2] = -2.0 * pref
        Rinv[..., 2, 0] = pref * (H - c * (u + c) / gm)
        Rinv[..., 2, 1] = pref * (-u + c / gm)
        Rinv[..., 2, 2] = pref
        return lam, R, Rinv

    def eigensystem(self, q):
        self.check_admissible(q)
        rho, m, E = q
        u = m / rho
        p = self.pressure(q)
        c = np.sqrt(self.gamma * p / rho)
        H = (E + p) / rho
        return self._eig_from_uch(u, c, H)

    def roe_eigensystem(self, qL, qR):
        """Eigensystem of the Roe matrix from sqrt(rho)-weighted velocity
        and total specific enthalpy."""
        self.check_admissible(qL, "(left Roe state)")
        self.check_admissible(qR, "(right Roe state)")
        sL = np.sqrt(qL[0])
        sR = np.sqrt(qR[0])
        w = 1.0 / (sL + sR)
        u = (sL * (qL[1] / qL[0]) + sR * (qR[1] / qR[0])) * w
        HL = (qL[2] + self.pressure(qL)) / qL[0]
        HR = (qR[2] + self.pressure(qR)) / qR[0]
        H = (sL * HL + sR * HR) * w
        c2 = (self.gamma - 1.0) * (H - 0.5 * u * u)
        if np.any(c2 <= 0):
            raise InadmissibleStateError("imaginary Roe sound speed")
        return self._eig_from_uch(u, np.sqrt(c2), H)

    def max_wavespeed(self, q):
        rho, m, E = q
        u = m / rho
        c = np.sqrt(self.gamma * self.pressure(q) / rho)
        return float(np.max(np.abs(u) + c))


def roe_matrix(model, qL, qR):
    """Roe-averaged flux Jacobian A* with the defining property
    f(qR) - f(qL) = A* (qR - qL)."""
    lam, R, Rinv = model.roe_eigensystem(qL, qR)
    return np.einsum("...ij,j...,...jk->...ik", R, lam, Rinv)


def roe_abs_matrix(model, qL, qR, delta=ENTROPY_DELTA):
    """|A*| = R |Lambda*| R^{-1} with entropy-fixed eigenvalues."""
    lam, R, Rinv = model.roe_eigensystem(qL, qR)
    return np.einsum("...ij,j...,...jk->...ik", R, entropy_fix(lam, delta), Rinv)


def roe_flux(model, qL, qR, delta=ENTROPY_DELTA):
    """Interface flux 0.5 [f(qL) + f(qR) - |A*| (qR - qL)]."""
    lam, R, Rinv = model.roe_eigensystem(qL, qR)
    alpha = np.einsum("...ij,j...->i...", Rinv, qR - qL)
    diss = np.einsum("...ij,j...->i...", R, entropy_fix(lam, delta) * alpha)
    return 0.5 * (model.flux(qL) + model.flux(qR) - diss)


def _iface_pairs(q, periodic):
    """Left/right cell values for the n_x + 1 interfaces (interface j sits
    between cells j-1 and j; ghosts wrap or clamp)."""
    if periodic:
        left = np.concatenate((q[..., -1:], q), axis=-1)
        right = np.concatenate((q, q[..., :1]), axis=-1)
    else:
        left = np.concatenate((q[..., :1], q), axis=-1)
        right = np.concatenate((q, q[..., -1:]), axis=-1)
    return left, right


def nonlinear_step(model, state, nu, periodic, delta=ENTROPY_DELTA):
    """One conservative step with Roe interface fluxes; nu = dt / h.

    Raises InadmissibleStateError if the input or output state is
    unphysical (the failure is flagged, never clamped away).
    """
    model.check_admissible(state)
    qL, qR = _iface_pairs(state, periodic)
    g = roe_flux(model, qL, qR, delta)
    out = state - nu * (g[:, 1:] - g[:, :-1])
    model.check_admissible(out, "(after step)")
    return out


def linearized_step_arrays(A_cell, absA, e, nu, periodic):
    """Apply the frozen-dissipation linearized step given the per-cell flux
    Jacobians and the per-interface |A*| of the frozen state."""
    Ae = np.einsum("xij,jx->ix", A_cell, e)
    AeL, AeR = _iface_pairs(Ae, periodic)
    eL, eR = _iface_pairs(e, periodic)
    diss = np.einsum("xij,jx->ix", absA, eR - eL)
    g = 0.5 * (AeR + AeL - diss)
    return e - nu * (g[:, 1:] - g[:, :-1])


def scalar_char_step(lam_cell, lam_abs_iface, e, nu, periodic):
    """Roe-like upwind step for a single characteristic field; this is the
    approximate diagonal block of the linearized step."""
    return scalar_roe_step(np.ascontiguousarray(lam_cell),
                           np.ascontiguousarray(lam_abs_iface),
                           np.ascontiguousarray(e), nu, periodic)


class LinearizedSystem:
    """Frozen-trajectory linearization of the nonlinear all-at-once
    operator, exposed with the same characteristic-space interface as
    the acoustics step.

    All per-step quantities (cell Jacobians, interface |A*|, eigenvector
    transforms, characteristic wave-speed fields) are precomputed from the
    frozen trajectory; block actions are then evaluated by composing the
    transform at the arrival time, the linearized step, and the transform
    at the departure time.
    """

    # characteristic fields of a conservation law are transported with the
    # conservative semi-Lagrangian remap on coarse levels
    conservative_coarse = True

    def __init__(self, model, grid: SpaceTimeGrid, traj, delta=ENTROPY_DELTA):
        n_t = traj.shape[0]
        if traj.shape[1:] != (model.n_vars, grid.n_x):
            raise ValueError("trajectory does not conform to grid/model")
        self.model = model
        self.grid = grid
        self.n_vars = model.n_vars
        self.delta = delta
        self.nu = grid.dt / grid.h
        self._R = []
        self._Rinv = []
        self._lam = []
        for n in range(n_t):
            lam, R, Rinv = model.eigensystem(traj[n])
            self._lam.append(lam)
            self._R.append(np.transpose(R, (0, 1, 2)) if R.ndim == 3 else R)
            self._Rinv.append(Rinv)
        self._A = []
        self._absA = []
        self._lam_abs = []
        per = grid.periodic
        for n in range(n_t - 1):
            q = traj[n]
            self._A.append(model.jacobian(q))
            qL, qR = _iface_pairs(q, per)
            lam_s, R_s, Rinv_s = model.roe_eigensystem(qL, qR)
            fixed = entropy_fix(lam_s, delta)
            self._absA.append(
                np.einsum("xij,jx,xjk->xik", R_s, fixed, Rinv_s))
            self._lam_abs.append(fixed)

    def step(self, e, n):
        return linearized_step_arrays(self._A[n], self._absA[n], e,
                                      self.nu, self.grid.periodic)

    __call__ = step

    def to_char(self, v, n):
        return np.einsum("xij,jx->ix", self._Rinv[n], v)

    def from_char(self, w, n):
        return np.einsum("xij,jx->ix", self._R[n], w)

    def char_block_apply(self, s, j, x, n):
        """Action of the (s, j) block of the linearized step in
        characteristic space, via masked transform composition."""
        w = np.zeros((self.n_vars, self.grid.n_x))
        w[j] = x
        return self.to_char(self.step(self.from_char(w, n), n), n + 1)[s]

    def approx_diag_apply(self, s, x, n):
        return scalar_char_step(self._lam[n][s], self._lam_abs[n][s], x,
                                self.nu, self.grid.periodic)

    def wavespeed(self, s, n):
        return self._lam[n][s]

    @property
    def time_varying(self):
        return True
