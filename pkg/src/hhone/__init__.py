"""Exact Lie-theoretic analysis of first Hochschild cohomology over GF(p).

The package computes derivation spaces, inner derivations and HH^1 of
finite-dimensional unital associative algebras given by structure
constants over a prime field, together with the induced Lie bracket,
and provides verification suites that replay the supported structural
claims on concrete group algebras.
"""

__version__ = "0.1.0"

from ._kernel import BACKEND as kernel_backend

__all__ = ["__version__", "kernel_backend"]
