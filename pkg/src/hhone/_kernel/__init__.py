"""Kernel backend selection.

The three hot primitives (reduced row echelon form, block elimination
against an echelon basis, and matrix multiplication mod p) exist twice:
a compiled Cython core and a vectorized numpy fallback.  Both implement
the same exact arithmetic and produce bit-identical results; RREF is
canonical, so the outputs agree entry for entry.

Selection happens once at import.  Set HHONE_KERNEL=py (or =c) to force
a backend; by default the compiled core is used when available.
"""

import os

_FORCED = os.environ.get("HHONE_KERNEL", "").strip().lower()

if _FORCED in ("", "c", "compiled"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        if _FORCED:
            raise ImportError(
                "HHONE_KERNEL requested the compiled kernel but "
                "hhone._kernel._core is not built"
            )
        from . import pyfallback as _impl

        BACKEND = "python"
elif _FORCED in ("py", "python"):
    from . import pyfallback as _impl

    BACKEND = "python"
else:
    raise ValueError(f"unrecognized HHONE_KERNEL value: {_FORCED!r}")

rref = _impl.rref
eliminate = _impl.eliminate
matmul = _impl.matmul

__all__ = ["BACKEND", "rref", "eliminate", "matmul"]
