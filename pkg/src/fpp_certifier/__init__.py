"""Exact checks for invariant curves and exceptional collections on fake
projective planes with nontrivial automorphism group."""

from .verdicts import Verdict, VerificationFailure

__version__ = "0.1.0"
__all__ = ["Verdict", "VerificationFailure", "__version__"]
