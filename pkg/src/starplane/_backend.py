"""Pick the compiled rewriting kernel when it was built, else the Python one.

Set ``STARPLANE_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("STARPLANE_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as _impl
else:
    from . import _kernels_py as _impl

insert_letter = _impl.insert_letter
normalize_word = _impl.normalize_word
mul_counts = _impl.mul_counts

__all__ = ["BACKEND", "insert_letter", "normalize_word", "mul_counts"]
