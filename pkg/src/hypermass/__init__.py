"""Numerical quasi-local energy-momentum vectors for surfaces bounding
domains in 3-manifolds with scalar curvature bounded below by -6 k^2."""

from .lorentz import CausalClass, LorentzVector, classify, minkowski_inner

__all__ = ["CausalClass", "LorentzVector", "classify", "minkowski_inner"]
__version__ = "0.1.0"
