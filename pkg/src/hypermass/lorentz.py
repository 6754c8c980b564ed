"""Vectors in Minkowski space R^{3,1} and their causal classification.

The signature convention is (+, +, +, -) with the time slot last, so the
upper hyperboloid sheet satisfies <X, X> = -1/k^2 with t > 0, and a nonzero
vector v is timelike future directed exactly when <v, zeta> < 0 for every
future null zeta with unit spatial part and time component 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "CausalClass",
    "LorentzVector",
    "minkowski_inner",
    "classify",
    "sample_null_cone",
    "classify_by_null_pairings",
]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class CausalClass(Enum):
    ZERO_VECTOR = "ZeroVector"
    TIMELIKE_FUTURE = "TimelikeFuture"
    TIMELIKE_PAST = "TimelikePast"
    NULL_FUTURE = "NullFuture"
    NULL_PAST = "NullPast"
    SPACELIKE = "Spacelike"


@dataclass(frozen=True)
class LorentzVector:
    """Point or vector in R^{3,1}; components must be finite."""

    x1: float
    x2: float
    x3: float
    t: float

    def __post_init__(self):
        for c in (self.x1, self.x2, self.x3, self.t):
            if not math.isfinite(c):
                raise ValueError(f"non-finite Lorentz component: {c!r}")

    @classmethod
    def from_array(cls, arr) -> "LorentzVector":
        x1, x2, x3, t = (float(c) for c in np.asarray(arr).reshape(4))
        return cls(x1, x2, x3, t)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.t])

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def __add__(self, other: "LorentzVector") -> "LorentzVector":
        return LorentzVector(self.x1 + other.x1, self.x2 + other.x2,
                             self.x3 + other.x3, self.t + other.t)

    def __sub__(self, other: "LorentzVector") -> "LorentzVector":
        return LorentzVector(self.x1 - other.x1, self.x2 - other.x2,
                             self.x3 - other.x3, self.t - other.t)

    def __mul__(self, s: float) -> "LorentzVector":
        return LorentzVector(self.x1 * s, self.x2 * s, self.x3 * s, self.t * s)

    __rmul__ = __mul__

    def norm_inf(self) -> float:
        return max(abs(self.x1), abs(self.x2), abs(self.x3), abs(self.t))


def minkowski_inner(u: LorentzVector, v: LorentzVector) -> float:
    """Bilinear symmetric pairing with signature (+, +, +, -)."""
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3 - u.t * v.t


def classify(v: LorentzVector, tol: float = 1e-12) -> CausalClass:
    """Causal class of ``v`` at tolerance ``tol``.

    Vectors whose components are all below ``tol`` in magnitude are the zero
    vector; otherwise the sign of <v, v> relative to tol * ||v||^2 decides
    timelike/null/spacelike and the sign of t decides future/past.  Vectors
    within the null band classify as null; probe near-degenerate cases with a
    smaller tolerance.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if v.norm_inf() <= tol:
        return CausalClass.ZERO_VECTOR
    q = minkowski_inner(v, v)
    n2 = v.x1 ** 2 + v.x2 ** 2 + v.x3 ** 2 + v.t ** 2
    if abs(q) <= tol * n2:
        return CausalClass.NULL_FUTURE if v.t >= 0 else CausalClass.NULL_PAST
    if q < 0:
        return CausalClass.TIMELIKE_FUTURE if v.t > 0 else CausalClass.TIMELIKE_PAST
    return CausalClass.SPACELIKE


def sample_null_cone(m: int) -> list[LorentzVector]:
    """``m`` future null vectors (z1, z2, z3, 1) with unit spatial part.

    Spatial directions follow a deterministic golden-angle spiral on the
    sphere, starting at the north pole, so repeated runs sample identically.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    out = []
    for i in range(m):
        z = 1.0 if m == 1 else 1.0 - 2.0 * i / (m - 1)
        s = math.sqrt(max(0.0, 1.0 - z * z))
        phi = i * GOLDEN_ANGLE
        out.append(LorentzVector(s * math.cos(phi), s * math.sin(phi), z, 1.0))
    return out


def classify_by_null_pairings(v: LorentzVector, samples: list[LorentzVector],
                              tol: float = 1e-12) -> bool:
    """Sampled sufficient test: true iff <v, zeta> < -tol for every sample.

    A nonzero vector is timelike future directed iff the pairing is negative
    for *all* future null directions; a finite sample makes this one-sided.
    """
    if not samples:
        raise ValueError("samples must be nonempty")
    return all(minkowski_inner(v, z) < -tol for z in samples)
