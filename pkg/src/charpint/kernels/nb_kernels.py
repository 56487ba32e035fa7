"""Numba implementations of the hot per-step kernels.

Loop forms of the kernels in ``np_kernels``; see that module for the
interface-array convention.  Importing this module requires numba.
"""

import numba
import numpy as np

_jit = numba.njit(cache=True, fastmath=False)


@_jit
def tridiag_apply(sub, diag, sup, x, periodic):
    n = x.shape[0]
    y = np.empty(n)
    for i in range(n):
        if i > 0:
            xm = x[i - 1]
        elif periodic:
            xm = x[n - 1]
        else:
            xm = x[0]
        if i < n - 1:
            xp = x[i + 1]
        elif periodic:
            xp = x[0]
        else:
            xp = x[n - 1]
        y[i] = sub[i] * xm + diag[i] * x[i] + sup[i] * xp
    return y


@_jit
def acoustics_godunov(p, u, c, Z, nu, periodic):
    n = p.shape[0]
    # Wave strengths at interface i-1/2, plus the wrap interface at n-1/2.
    a1 = np.zeros(n + 1)
    a2 = np.zeros(n + 1)
    Zl = np.empty(n + 1)
    Zr = np.empty(n + 1)
    for j in range(n + 1):
        il = j - 1
        ir = j
        if periodic:
            il = (il + n) % n
            ir = ir % n
        else:
            if il < 0:
                il = 0
            if ir > n - 1:
                ir = n - 1
        Zl[j] = Z[il]
        Zr[j] = Z[ir]
        dp = p[ir] - p[il]
        du = u[ir] - u[il]
        denom = Z[il] + Z[ir]
        a1[j] = (-dp + Z[ir] * du) / denom
        a2[j] = (dp + Z[il] * du) / denom
    pn = np.empty(n)
    un = np.empty(n)
    for i in range(n):
        w2_p = a2[i] * Zr[i]
        w2_u = a2[i]
        w1_p = -a1[i + 1] * Zl[i + 1]
        w1_u = a1[i + 1]
        pn[i] = p[i] - nu * c[i] * (w2_p - w1_p)
        un[i] = u[i] - nu * c[i] * (w2_u - w1_u)
    return pn, un


@_jit
def scalar_roe_step(lam, lam_abs, e, nu, periodic):
    n = e.shape[0]
    g = np.empty(n + 1)
    for j in range(n + 1):
        il = j - 1
        ir = j
        if periodic:
            il = (il + n) % n
            ir = ir % n
        else:
            if il < 0:
                il = 0
            if ir > n - 1:
                ir = n - 1
        g[j] = 0.5 * ((lam[ir] * e[ir] + lam[il] * e[il])
                      - lam_abs[j] * (e[ir] - e[il]))
    y = np.empty(n)
    for i in range(n):
        y[i] = e[i] - nu * (g[i + 1] - g[i])
    return y


@_jit
def sl_advect(u, c, dt, h, periodic, conservative):
    n = u.shape[0]
    out = np.zeros(n)
    if not conservative:
        for i in range(n):
            pos = i - c[i] * dt / h
            k = int(np.floor(pos))
            theta = pos - k
            if periodic:
                k0 = k % n
                k1 = (k + 1) % n
            else:
                k0 = min(max(k, 0), n - 1)
                k1 = min(max(k + 1, 0), n - 1)
            out[i] = (1.0 - theta) * u[k0] + theta * u[k1]
        return out

    a = np.empty(n + 1)
    for j in range(n + 1):
        if 0 < j < n:
            sig = 0.5 * (c[j - 1] + c[j]) * dt / h
        elif j == 0:
            sig = (0.5 * (c[n - 1] + c[0]) if periodic else c[0]) * dt / h
        else:
            sig = (0.5 * (c[n - 1] + c[0]) if periodic else c[n - 1]) * dt / h
        a[j] = j - sig
    for i in range(n):
        lo = a[i]
        hi = a[i + 1]
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
