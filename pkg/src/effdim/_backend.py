"""Kernel backend selection.

Hot loops ship in two variants: numba ``@njit`` kernels and vectorized
numpy fallbacks.  The environment variable ``EFFDIM_BACKEND`` picks one:

* ``numpy``  force the pure-numpy path
* ``numba``  force jit, raise if numba cannot be imported
* ``auto``   (default) use numba when available

``NUMBA_DISABLE_JIT`` is honoured as a kill switch as well.
"""

import os

_choice = os.environ.get("EFFDIM_BACKEND", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"EFFDIM_BACKEND must be auto, numba or numpy, got {_choice!r}")

if _choice == "numpy":
    HAVE_NUMBA = False
else:
    try:
        if os.environ.get("NUMBA_DISABLE_JIT", "0") not in ("0", ""):
            raise ImportError("NUMBA_DISABLE_JIT is set")
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise
        HAVE_NUMBA = False

if HAVE_NUMBA:
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND = "numba" if HAVE_NUMBA else "numpy"

__all__ = ["kernels", "BACKEND", "HAVE_NUMBA"]
