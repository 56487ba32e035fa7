"""Timing comparison of the numba kernels against the pure-numpy fallback.

Run as: python benchmarks/bench_kernels.py [n_x]
"""

import sys
import time

import numpy as np

import charpint.kernels.nb_kernels as nbk
import charpint.kernels.np_kernels as npk


def bench(label, fn, *args, repeat=200):
    fn(*args)                      # warm up (triggers jit compilation)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    dt = (time.perf_counter() - t0) / repeat
    print(f"  {label:8s} {dt * 1e6:10.1f} us/call")
    return dt


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 4096
    rng = np.random.default_rng(0)
    sub, diag, sup, x = (rng.standard_normal(n) for _ in range(4))
    p, u = rng.standard_normal((2, n))
    c = rng.uniform(0.5, 2.0, n)
    Z = rng.uniform(0.5, 2.0, n)
    lam = rng.standard_normal(n)
    lam_abs = np.abs(rng.standard_normal(n + 1))
    lam_abs[-1] = lam_abs[0]

    print(f"n_x = {n}")
    for name, args_np, args_nb in [
        ("tridiag_apply",
         (sub, diag, sup, x, True), (sub, diag, sup, x, True)),
        ("acoustics_godunov",
         (p, u, c, Z, 0.3, True), (p, u, c, Z, 0.3, True)),
        ("scalar_roe_step",
         (lam, lam_abs, x, 0.3, True), (lam, lam_abs, x, 0.3, True)),
        ("sl_advect",
         (x, c, 2.5, 0.1, True, True), (x, c, 2.5, 0.1, True, True)),
    ]:
        print(name)
        t_np = bench("numpy", getattr(npk, name), *args_np)
        t_nb = bench("numba", getattr(nbk, name), *args_nb)
        print(f"  speedup  {t_np / t_nb:10.2f}x")


if __name__ == "__main__":
    main()
