"""Renyi and Shannon entropy bounds for d-dimensional central-potential states."""
from ._kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
