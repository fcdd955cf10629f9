"""Double affine Hecke algebras in the basic polynomial representation.

Exact arithmetic throughout: coefficients are rational functions in
``q^{1/2m}`` and ``t^{1/2}`` (one ``t`` per root length), specialized to
cyclotomic fields for the finite theory.
"""

from .rootsys import RootSystem, build_root_system, parse_type

__all__ = ["RootSystem", "build_root_system", "parse_type"]
__version__ = "0.1.0"
