"""Select the compiled recurrence kernels when built, else the numpy ones.

Set ``RENYIBOUND_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("RENYIBOUND_PURE_PYTHON") != "1":
    try:
        from ._ckernels import gegenbauer_array, laguerre_array, legendre_rule
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._pykernels import gegenbauer_array, laguerre_array, legendre_rule

__all__ = ["BACKEND", "gegenbauer_array", "laguerre_array", "legendre_rule"]
