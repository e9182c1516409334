"""Exact-arithmetic workbench for the mod-p Burau representation of B4,
the Squier form, and the action on the Euclidean building of GL3(F_p(t))."""

__version__ = "0.1.0"
