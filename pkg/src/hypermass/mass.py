"""Mass functionals: E(Sigma), the Shi-Tam vector, Wang's AH mass and the
small-radius asymptotic limit.

Everything is assembled from the extrinsic data of the surface in its
ambient manifold (mean curvature H) and of its isometric image in
H^3_{-k^2} (mean curvature H_0 and hyperboloid position X):

    E(Sigma)    = int (H_0^2 - H^2)/H  X          dSigma
    M_alpha     = int (H_0 - H) (x_1, x_2, x_3, alpha t) dSigma

H <= 0 anywhere is a hard error, never a silent skip.  Reductions use
fixed-order compensated summation so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (DomainError, IsometryViolation, MissingEmbedding,
                     NonPositiveMeanCurvature)
from .geometry import (MetricField, QuadratureGrid, SphereTensor, SurfaceData,
                       hyperbolic_ball_metric, integrate, surface_forms,
                       unit_directions, verify_isometric)
from .hypgeom import ball_to_minkowski
from .lorentz import CausalClass, LorentzVector, classify
from .spinor import CliffordRep, killing_spinor_norms_sq, make_clifford_rep

__all__ = [
    "MassReport",
    "AHSphereData",
    "AsymptoticResult",
    "SurfaceMassData",
    "surface_mass_data",
    "energy_momentum",
    "shi_tam_alpha",
    "shi_tam_vector",
    "wang_mass",
    "upsilon_scalar_first",
    "killing_weighted_mass",
    "ah_sphere_data",
    "asymptotic_limit",
]

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# shared per-surface data


@dataclass
class SurfaceMassData:
    """Node data entering every mass integral for one surface/ambient pair."""

    H: np.ndarray            # ambient-side mean curvature (N,)
    H0: np.ndarray           # H^3-side mean curvature (N,)
    X: np.ndarray            # hyperboloid positions (N, 4)
    ball_points: np.ndarray  # Poincare-ball coordinates of F0 nodes (N, 3)
    area_element: np.ndarray  # sqrt(det g_ab) of the ambient side (N,)
    weights: np.ndarray      # quadrature measure weights (N,)
    iso_mismatch: float
    k: float

    def weighted(self, values: np.ndarray) -> float:
        return math.fsum((self.weights * self.area_element * values).tolist())

    def weighted_vector(self, values: np.ndarray) -> LorentzVector:
        comps = [self.weighted(values[:, c]) for c in range(4)]
        return LorentzVector(*comps)


def surface_mass_data(surface: SurfaceData, ambient: MetricField,
                      iso_tol: float = 1e-8,
                      param_step: float = 2e-3) -> SurfaceMassData:
    """Extract H, H_0, X and the measure; enforce the standing hypotheses.

    The parameter step is slightly larger than the geometry-module default:
    the fourth-order stencils are roundoff-limited here and the coarser step
    keeps the noise in H - H_0 (which the integrands amplify) near 1e-11.
    """
    if surface.F0 is None:
        raise MissingEmbedding("mass integrals need the H^3 embedding F0")
    theta, phi = surface.grid.node_arrays()
    forms = surface_forms(surface, ambient, param_step=param_step)
    mismatch = verify_isometric(surface, ambient)
    scale = float(np.max(np.abs(forms.first)))
    if mismatch > iso_tol * max(scale, 1.0):
        raise IsometryViolation(
            f"induced metrics disagree by {mismatch:.3e} (tol {iso_tol:.1e})")
    H = forms.mean_curvature
    if np.any(H <= 0.0):
        node = int(np.argmin(H))
        raise NonPositiveMeanCurvature(
            f"H = {H[node]:.6g} <= 0 at node {node} "
            f"(theta={theta[node]:.4f}, phi={phi[node]:.4f})", node=node)
    hyp = hyperbolic_ball_metric(surface.k)
    forms0 = surface_forms(surface.h3_view(), hyp, param_step=param_step)
    ball = np.asarray(surface.F0(theta, phi), dtype=float)
    X = ball_to_minkowski(ball, surface.k)
    return SurfaceMassData(H=H, H0=forms0.mean_curvature, X=X,
                           ball_points=ball,
                           area_element=forms.area_element,
                           weights=surface.grid.measure_weights(),
                           iso_mismatch=mismatch, k=surface.k)


# ---------------------------------------------------------------------------
# functionals


def energy_momentum(surface: SurfaceData, ambient: MetricField,
                    iso_tol: float = 1e-8,
                    data: Optional[SurfaceMassData] = None) -> LorentzVector:
    """E(Sigma) = int ((H_0^2 - H^2)/H) X dSigma."""
    d = data or surface_mass_data(surface, ambient, iso_tol)
    w = (d.H0 ** 2 - d.H ** 2) / d.H
    return d.weighted_vector(w[:, None] * d.X)


def shi_tam_alpha(R1: float, R2: float) -> float:
    """alpha = coth R1 + (1/sinh R1) sqrt(sinh^2 R2 / sinh^2 R1 - 1)."""
    if R1 <= 0 or R1 > R2:
        raise DomainError("need 0 < R1 <= R2")
    s1 = math.sinh(R1)
    ratio = (math.sinh(R2) / s1) ** 2 - 1.0
    return 1.0 / math.tanh(R1) + math.sqrt(max(0.0, ratio)) / s1


def shi_tam_vector(surface: SurfaceData, ambient: MetricField, alpha: float,
                   iso_tol: float = 1e-8,
                   data: Optional[SurfaceMassData] = None) -> LorentzVector:
    """M_alpha = int (H_0 - H) (x_1, x_2, x_3, alpha t) dSigma."""
    if alpha < 1.0:
        raise DomainError("alpha must be >= 1")
    d = data or surface_mass_data(surface, ambient, iso_tol)
    W = d.X.copy()
    W[:, 3] *= alpha
    return d.weighted_vector((d.H0 - d.H)[:, None] * W)


_DEFAULT_SPHERE_GRID = (64, 128)


def _round_sphere_quadrature(grid: Optional[QuadratureGrid]):
    if grid is None:
        grid = QuadratureGrid.build(*_DEFAULT_SPHERE_GRID)
    theta, phi = grid.node_arrays()
    xhat = unit_directions(theta, phi)
    # measure weights already carry 1/sin(theta); dS = sin(theta) dtheta dphi
    w = grid.measure_weights() * np.sin(theta)
    return xhat, w


def wang_mass(h: SphereTensor,
              grid: Optional[QuadratureGrid] = None) -> LorentzVector:
    """Wang's AH energy-momentum from the mass-aspect tensor h.

    The scalar slot is int tr(h) dS and the vector slot int tr(h) x dS over
    the round sphere.  Internally the scalar slot is stored as the *time*
    component of a LorentzVector (time slot last); use
    :func:`upsilon_scalar_first` for the conventional (scalar, vector) order.
    """
    xhat, w = _round_sphere_quadrature(grid)
    tau = h.trace(xhat)
    t = math.fsum((w * tau).tolist())
    spatial = [math.fsum((w * tau * xhat[:, j]).tolist()) for j in range(3)]
    return LorentzVector(spatial[0], spatial[1], spatial[2], t)


def upsilon_scalar_first(upsilon: LorentzVector) -> tuple[float, np.ndarray]:
    """(scalar slot, vector slot) ordering of the AH energy-momentum."""
    return upsilon.t, upsilon.spatial


def killing_weighted_mass(surface: SurfaceData, ambient: MetricField, a,
                          sign: int, iso_tol: float = 1e-8,
                          rep: Optional[CliffordRep] = None,
                          data: Optional[SurfaceMassData] = None) -> float:
    """int ((H_0^2 - H^2)/H) |psi_a^{sign}|^2 dSigma (k = 1 only).

    By the pointwise spinor/null-vector identity this equals
    -2 <E(Sigma), zeta_a^{sign}> up to quadrature tolerance; both routes are
    kept separate so they can cross-check each other.
    """
    d = data or surface_mass_data(surface, ambient, iso_tol)
    if d.k != 1.0:
        raise DomainError("spinor-weighted integrals require k = 1")
    rep = rep or make_clifford_rep()
    norms = killing_spinor_norms_sq(a, d.ball_points, sign, rep)
    w = (d.H0 ** 2 - d.H ** 2) / d.H
    return d.weighted(w * norms)


# ---------------------------------------------------------------------------
# asymptotically hyperbolic small-sphere machinery


@dataclass
class AHSphereData:
    """Truncated small-sphere expansion data on a round-sphere grid.

    H and H_0 follow the collar expansions truncated at the printed orders
    (the omitted terms are o(r^3) relative); the embedded position is the
    exact hyperboloid point with sinh(rho_r) = 1/r, matching the displayed
    leading behavior (x/r, 1/r).
    """

    r: float
    H: np.ndarray           # (N,)
    H0: np.ndarray          # (N,)
    area_factor: float      # 1/sinh^2 r multiplying the round measure
    X: np.ndarray           # (N, 4) hyperboloid positions
    trace_h: np.ndarray     # (N,)
    xhat: np.ndarray        # (N, 3)
    weights: np.ndarray     # (N,) round-sphere dS weights


def ah_sphere_data(r: float, h: SphereTensor, e=None,
                   grid: Optional[QuadratureGrid] = None) -> AHSphereData:
    """Pointwise expansion data for the geodesic sphere S_r, 0 < r <= 0.5.

    ``e`` is accepted for interface compatibility; perturbations decaying
    fast enough contribute only beyond the truncation order, so it never
    enters the returned fields.
    """
    if not 0.0 < r <= 0.5:
        raise DomainError("expansion data is valid for 0 < r <= 0.5")
    xhat, w = _round_sphere_quadrature(grid)
    tau = h.trace(xhat)
    H = math.cosh(r) - 0.25 * r ** 3 * tau
    H = np.broadcast_to(np.asarray(H, dtype=float), tau.shape).copy()
    if np.any(H <= 0.0):
        node = int(np.argmin(H))
        raise NonPositiveMeanCurvature(
            f"expanded H <= 0 at node {node} for r = {r}", node=node)
    H0 = np.full_like(tau, math.cosh(r))
    sinh_rho = 1.0 / r
    cosh_rho = math.sqrt(1.0 + sinh_rho ** 2)
    X = np.concatenate([sinh_rho * xhat,
                        np.full((xhat.shape[0], 1), cosh_rho)], axis=1)
    return AHSphereData(r=r, H=H, H0=H0,
                        area_factor=1.0 / math.sinh(r) ** 2,
                        X=X, trace_h=tau, xhat=xhat, weights=w)


def small_sphere_energy(data: AHSphereData) -> LorentzVector:
    """E(S_r) assembled from the truncated expansion data."""
    w = (data.H0 ** 2 - data.H ** 2) / data.H
    integ = data.weights * data.area_factor * w
    comps = [math.fsum((integ * data.X[:, c]).tolist()) for c in range(4)]
    return LorentzVector(*comps)


@dataclass
class AsymptoticResult:
    radii: list
    energies: list                 # E(S_r) per radius
    extrapolated: LorentzVector
    upsilon_half: LorentzVector
    deviation: LorentzVector       # extrapolated - upsilon/2
    observed_order: float


def asymptotic_limit(h: SphereTensor, radii,
                     grid: Optional[QuadratureGrid] = None,
                     e=None) -> AsymptoticResult:
    """E(S_r) along decreasing radii, Richardson limit and Upsilon/2 check.

    The extrapolation is two-point with assumed leading order 1 in r, using
    the two smallest radii; at least three radii are required so the
    observed convergence order can be reported alongside.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 3:
        raise DomainError("need at least three radii")
    if any(r2 >= r1 for r1, r2 in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly decreasing")
    energies = [small_sphere_energy(ah_sphere_data(r, h, e, grid))
                for r in radii]
    upsilon = wang_mass(h, grid)
    ups_half = 0.5 * upsilon
    r1, r2 = radii[-2], radii[-1]
    E1, E2 = energies[-2], energies[-1]
    extrap = (1.0 / (r1 - r2)) * (r1 * E2 - r2 * E1)
    d1 = (energies[-3] - E1).norm_inf()
    d2 = (E1 - E2).norm_inf()
    if d1 > 0 and d2 > 0:
        order = math.log(d1 / d2) / math.log(radii[-3] / r1)
    else:
        order = math.inf
    return AsymptoticResult(radii=radii, energies=energies,
                            extrapolated=extrap, upsilon_half=ups_half,
                            deviation=extrap - ups_half,
                            observed_order=order)


# ---------------------------------------------------------------------------
# report


@dataclass
class HypothesisChecks:
    min_mean_curvature: float
    min_gauss_plus_k2: float
    min_scalar_plus_6k2: float
    isometry_mismatch: float
    iso_tol: float

    @property
    def passed(self) -> bool:
        return (self.min_mean_curvature > 0.0
                and self.min_gauss_plus_k2 > 0.0
                and self.min_scalar_plus_6k2 > -1e-5
                and self.isometry_mismatch <= self.iso_tol)

    def to_dict(self) -> dict:
        return {
            "min_mean_curvature": self.min_mean_curvature,
            "min_gauss_plus_k2": self.min_gauss_plus_k2,
            "min_scalar_plus_6k2": self.min_scalar_plus_6k2,
            "isometry_mismatch": self.isometry_mismatch,
            "iso_tol": self.iso_tol,
            "passed": self.passed,
        }


@dataclass
class MassReport:
    """Computed vectors, causal class and diagnostics for one scenario."""

    E: LorentzVector
    causal_class: CausalClass
    checks: HypothesisChecks
    resolution: tuple
    M_alpha: Optional[LorentzVector] = None
    alpha: Optional[float] = None
    upsilon: Optional[LorentzVector] = None
    null_pairing_min: Optional[float] = None
    null_pairing_max: Optional[float] = None
    forced: bool = False
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.E is not None and classify(self.E) != self.causal_class:
            # keep report and classifier consistent by construction
            self.causal_class = classify(self.E)

    def to_dict(self) -> dict:
        def vec(v):
            return None if v is None else [v.x1, v.x2, v.x3, v.t]

        return {
            "format_version": FORMAT_VERSION,
            "E": vec(self.E),
            "causal_class": self.causal_class.value,
            "M_alpha": vec(self.M_alpha),
            "alpha": self.alpha,
            "upsilon": vec(self.upsilon),
            "hypothesis_checks": self.checks.to_dict(),
            "resolution": list(self.resolution),
            "null_pairing": {"min": self.null_pairing_min,
                             "max": self.null_pairing_max},
            "forced": self.forced,
            "config": self.config,
        }
