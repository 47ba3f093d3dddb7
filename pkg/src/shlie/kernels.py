"""Kernel selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Set ``SHLIE_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("SHLIE_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

mono_mul = _impl.mono_mul
poly_mul = _impl.poly_mul
sort_sign = _impl.sort_sign
unshuffles = _impl.unshuffles
split_word = _impl.split_word
