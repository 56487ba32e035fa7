"""The numba kernels and the pure-numpy fallbacks must agree to roundoff,
and the env flag must select the backend."""

import os
import subprocess
import sys

import numpy as np
import pytest

import charpint.kernels.nb_kernels as nbk
import charpint.kernels.np_kernels as npk

rng = np.random.default_rng(1234)
N = 96


@pytest.mark.parametrize("periodic", [True, False])
def test_tridiag_apply_agrees(periodic):
    sub, diag, sup, x = (rng.standard_normal(N) for _ in range(4))
    a = npk.tridiag_apply(sub, diag, sup, x, periodic)
    b = nbk.tridiag_apply(sub, diag, sup, x, periodic)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


@pytest.mark.parametrize("periodic", [True, False])
def test_acoustics_godunov_agrees(periodic):
    p, u = rng.standard_normal((2, N))
    c = rng.uniform(0.5, 2.0, N)
    Z = rng.uniform(0.5, 2.0, N)
    pa, ua = npk.acoustics_godunov(p, u, c, Z, 0.3, periodic)
    pb, ub = nbk.acoustics_godunov(p, u, c, Z, 0.3, periodic)
    np.testing.assert_allclose(pa, pb, rtol=0, atol=1e-14)
    np.testing.assert_allclose(ua, ub, rtol=0, atol=1e-14)


@pytest.mark.parametrize("periodic", [True, False])
def test_scalar_roe_step_agrees(periodic):
    lam = rng.standard_normal(N)
    lam_abs = np.abs(rng.standard_normal(N + 1))
    lam_abs[-1] = lam_abs[0]
    e = rng.standard_normal(N)
    a = npk.scalar_roe_step(lam, lam_abs, e, 0.3, periodic)
    b = nbk.scalar_roe_step(lam, lam_abs, e, 0.3, periodic)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


@pytest.mark.parametrize("periodic", [True, False])
@pytest.mark.parametrize("conservative", [True, False])
def test_sl_advect_agrees(periodic, conservative):
    u = rng.standard_normal(N)
    c = rng.uniform(-1.0, 1.0, N)
    a = npk.sl_advect(u, c, 2.5, 0.1, periodic, conservative)
    b = nbk.sl_advect(u, c, 2.5, 0.1, periodic, conservative)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_env_flag_selects_backend():
    code = "from charpint.kernels import BACKEND; print(BACKEND)"
    env = dict(os.environ, CHARPINT_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env = dict(os.environ, CHARPINT_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() in ("numba", "numpy")  # numpy if no numba
