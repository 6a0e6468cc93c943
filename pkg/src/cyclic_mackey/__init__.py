"""Picard-graded equivariant cohomology of a point for cyclic p-groups, computed exactly."""

__version__ = "0.1.0"
