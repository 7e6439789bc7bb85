"""Exact-arithmetic toolkit for nilradicals of Borel subalgebras:
structure constants, graded invariants of the lower central series,
and identification of the underlying simple type."""

__version__ = "0.1.0"
