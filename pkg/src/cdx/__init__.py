"""Exact cd-index computations for split matroid base polytopes."""

__version__ = "0.1.0"

from .ncpoly import NcPoly, FlagFVector  # noqa: F401
