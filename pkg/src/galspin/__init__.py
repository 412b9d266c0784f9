"""Verification engine for spin-statistics structure in Galilean QFT.

Constructs lattice-regularized field operators symbolically, checks the
spin-zero counterexample to a naive non-relativistic spin-statistics
argument, verifies the matrix and graded-algebra steps of the standard
proof chain, exercises the extended Galilei algebra and its projective
phases, and demonstrates the incompatibility between hermiticity and
Galilean covariance for massive fields.
"""

__version__ = "0.1.0"
