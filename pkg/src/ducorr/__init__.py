"""Numerical laboratory for Floquet dual-unitary circuits: eigenstate
correlations, operator entanglement, scrambling diagnostics and folded
transfer matrices."""

__version__ = "0.1.0"

from . import circuits, eigencorr, opent, scrambling, replica  # noqa: F401
