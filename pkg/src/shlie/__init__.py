"""Exact verification of gauge algebras, their higher brackets and closure on shell."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
