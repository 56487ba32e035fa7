"""Tridiagonal stencil operators over a periodic or clamped 1D mesh."""

import numpy as np

from .kernels import tridiag_apply


class TridiagOperator:
    """Row-wise tridiagonal operator: y_i = sub_i x_{i-1} + diag_i x_i
    + sup_i x_{i+1}, with periodic wrap or edge clamping for ghosts."""

    def __init__(self, sub, diag, sup, periodic=True):
        self.sub = np.ascontiguousarray(sub, dtype=float)
        self.diag = np.ascontiguousarray(diag, dtype=float)
        self.sup = np.ascontiguousarray(sup, dtype=float)
        self.periodic = periodic
        n = self.diag.shape[0]
        if self.sub.shape[0] != n or self.sup.shape[0] != n:
            raise ValueError("band lengths differ")

    @classmethod
    def diagonal(cls, diag, periodic=True):
        z = np.zeros_like(np.asarray(diag, dtype=float))
        return cls(z, diag, z, periodic=periodic)

    @property
    def n(self):
        return self.diag.shape[0]

    def apply(self, x):
        return tridiag_apply(self.sub, self.diag, self.sup, x, self.periodic)

    __call__ = apply

    def to_dense(self):
        n = self.n
        A = np.diag(self.diag)
        for i in range(n):
            im, ip = i - 1, i + 1
            if self.periodic:
                A[i, im % n] += self.sub[i]
                A[i, ip % n] += self.sup[i]
            else:
                A[i, max(im, 0)] += self.sub[i]
                A[i, min(ip, n - 1)] += self.sup[i]
        return A
