"""Backend selection for the hot per-step kernels.

The numba backend is used when numba imports successfully and the
environment variable ``CHARPINT_NUMBA`` is not set to ``0``.  Set
``CHARPINT_NUMBA=0`` to force the pure-numpy fallback.
"""

import os

from . import np_kernels

USE_NUMBA = os.environ.get("CHARPINT_NUMBA", "1") != "0"
if USE_NUMBA:
    try:
        from . import nb_kernels as _impl
    except ImportError:
        USE_NUMBA = False
        _impl = np_kernels
else:
    _impl = np_kernels

BACKEND = "numba" if USE_NUMBA else "numpy"

tridiag_apply = _impl.tridiag_apply
acoustics_godunov = _impl.acoustics_godunov
scalar_roe_step = _impl.scalar_roe_step
sl_advect = _impl.sl_advect
