"""Pure-numpy implementations of the hot per-step kernels.

These are the fallback implementations used when numba is unavailable or
disabled via ``CHARPINT_NUMBA=0``.  Signatures are shared with
``nb_kernels``; both backends must agree to round-off.

Interface-array convention: an interface array has length ``n_x + 1`` where
entry ``j`` sits between cells ``j-1`` and ``j``.  With periodic boundaries
entry ``0`` and entry ``n_x`` refer to the same physical interface and must
carry the same value.
"""

import numpy as np


def tridiag_apply(sub, diag, sup, x, periodic):
    """y_i = sub_i x_{i-1} + diag_i x_i + sup_i x_{i+1}.

    Ghost values wrap for periodic boundaries and clamp to the edge cell
    otherwise.
    """
    if periodic:
        xm = np.roll(x, 1)
        xp = np.roll(x, -1)
    else:
        xm = np.concatenate(([x[0]], x[:-1]))
        xp = np.concatenate((x[1:], [x[-1]]))
    return sub * xm + diag * x + sup * xp


def acoustics_godunov(p, u, c, Z, nu, periodic):
    """One Godunov step for the (p, u) acoustics system; nu = dt / h.

    Each interface carries a left-going and a right-going wave whose
    strengths are set by the jump in (p, u) weighted by the adjacent
    impedances; the cell update sums the waves entering the cell.
    """
    if periodic:
        pL = np.roll(p, 1)
        uL = np.roll(u, 1)
        ZL = np.roll(Z, 1)
    else:
        pL = np.concatenate(([p[0]], p[:-1]))
        uL = np.concatenate(([u[0]], u[:-1]))
        ZL = np.concatenate(([Z[0]], Z[:-1]))
    # Jumps across interface i-1/2 (between cells i-1 and i).
    dp = p - pL
    du = u - uL
    denom = ZL + Z
    a1 = (-dp + Z * du) / denom      # left-going wave strength at i-1/2
    a2 = (dp + ZL * du) / denom      # right-going wave strength at i-1/2
    # Right-going wave entering cell i from interface i-1/2.
    w2_p = a2 * Z
    w2_u = a2
    # Left-going wave entering cell i from interface i+1/2: shift the
    # interface arrays one to the left and use the left cell's impedance.
    if periodic:
        a1R = np.roll(a1, -1)
        ZLR = Z                       # left impedance at i+1/2 is Z_i
    else:
        a1R = np.concatenate((a1[1:], [0.0]))  # no jump past the boundary
        ZLR = Z
    w1_p = -a1R * ZLR
    w1_u = a1R
    pn = p - nu * c * (w2_p - w1_p)
    un = u - nu * c * (w2_u - w1_u)
    return pn, un


def scalar_roe_step(lam, lam_abs, e, nu, periodic):
    """Roe-like upwind step for a scalar field with cellwise wave speed.

    ``lam`` holds per-cell speeds, ``lam_abs`` the (entropy-fixed) absolute
    interface speeds with the interface-array convention above.
    """
    if periodic:
        eL = np.roll(e, 1)
        lamL = np.roll(lam, 1)
    else:
        eL = np.concatenate(([e[0]], e[:-1]))
        lamL = np.concatenate(([lam[0]], lam[:-1]))
    # Flux through interface i-1/2 for i = 0 .. n-1.
    g = 0.5 * ((lam * e + lamL * eL) - lam_abs[:-1] * (e - eL))
    if periodic:
        gR = np.roll(g, -1)
    else:
        gR = np.concatenate((g[1:], [lam[-1] * e[-1]]))
    return e - nu * (gR - g)


def sl_advect(u, c, dt, h, periodic, conservative):
    """First-order semi-Lagrangian advection step, stable at any CFL.

    Non-conservative: per arrival cell, trace the cell centre back by
    ``c_i dt`` and linearly interpolate (rows of the operator sum to 1).
    Conservative: trace cell interfaces back and remap cell-average
    integrals over the departure intervals (columns sum to 1).
    """
    n = u.shape[0]
    if not conservative:
        s = c * dt / h                      # shift in cell units
        pos = np.arange(n) - s
        k = np.floor(pos).astype(np.int64)
        theta = pos - k
        if periodic:
            k0 = np.mod(k, n)
            k1 = np.mod(k + 1, n)
        else:
            k0 = np.clip(k, 0, n - 1)
            k1 = np.clip(k + 1, 0, n - 1)
        return (1.0 - theta) * u[k0] + theta * u[k1]

    # Conservative remap: departure positions of the n+1 cell interfaces,
    # in cell units (interface j sits at position j).
    sig = np.empty(n + 1)
    sig[1:-1] = 0.5 * (c[:-1] + c[1:]) * dt / h
    if periodic:
        sig[0] = 0.5 * (c[-1] + c[0]) * dt / h
        sig[-1] = sig[0]
    else:
        sig[0] = c[0] * dt / h
        sig[-1] = c[-1] * dt / h
    a = np.arange(n + 1) - sig
    out = np.zeros(n)
    for i in range(n):
        lo, hi = a[i], a[i + 1]
        if hi <= lo:
            continue
        k0 = int(np.floor(lo))
        k1 = int(np.ceil(hi))
        for k in range(k0, k1):
            ov = min(hi, k + 1.0) - max(lo, k)
            if ov <= 0.0:
                continue
            if periodic:
                j = k % n
            else:
                j = min(max(k, 0), n - 1)
            out[i] += ov * u[j]
    return out
