"""Ambient 3-metrics, parametrized closed surfaces and numerical curvature.

Charts are open subsets of R^3 with a metric component function g_ij(p).
Surfaces are parametrizations F(theta, phi) of a topological sphere into a
chart, carrying a Gauss-Legendre (in cos theta) x trapezoid (in phi)
quadrature grid.  All curvature quantities are obtained by finite
differences: fourth-order stencils in parameter space and for the metric
first derivatives, second-order outer stencils for the curvature tensor so
the convergence order in the step size is a testable 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (ChartBoundary, DegenerateImmersion, DomainError,
                     MissingEmbedding)
from .lorentz import LorentzVector

__all__ = [
    "MetricField",
    "QuadratureGrid",
    "SurfaceData",
    "SphereTensor",
    "FundamentalForms",
    "SurfaceForms",
    "euclidean_metric",
    "hyperbolic_ball_metric",
    "ads_schwarzschild_metric",
    "wang_ah_metric",
    "ads_horizon_radius",
    "geodesic_sphere_surface",
    "coordinate_sphere_surface",
    "radial_profile_surface",
    "christoffel",
    "scalar_curvature",
    "fundamental_forms",
    "surface_forms",
    "gauss_curvature",
    "integrate",
    "area_elements",
    "verify_isometric",
]

# 4th-order central first derivative: offsets in units of h and weights / h.
_D1_OFF = np.array([-2.0, -1.0, 1.0, 2.0])
_D1_W = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
# 4th-order central second derivative (offsets -2..2).
_D2_OFF = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
_D2_W = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


# ---------------------------------------------------------------------------
# metrics


@dataclass
class MetricField:
    """Chart-based Riemannian 3-metric.

    ``components`` maps points of shape (..., 3) to symmetric positive
    definite matrices of shape (..., 3, 3).  ``chart_distance`` returns the
    distance from a point to the chart boundary (np.inf for a global chart);
    finite-difference stencils refuse to straddle the boundary.
    """

    tag: str
    components: Callable[[np.ndarray], np.ndarray]
    chart_distance: Callable[[np.ndarray], np.ndarray]
    params: dict
    analytic_scalar_curvature: Optional[Callable[[np.ndarray], np.ndarray]] = None
    center: np.ndarray = None
    chart_scale: float = 1.0

    def __post_init__(self):
        if self.center is None:
            self.center = np.zeros(3)
        self.center = np.asarray(self.center, dtype=float).reshape(3)


def euclidean_metric() -> MetricField:
    def comps(p):
        p = np.asarray(p, dtype=float)
        out = np.zeros(p.shape[:-1] + (3, 3))
        out[...] = np.eye(3)
        return out

    return MetricField(
        tag="Euclidean",
        components=comps,
        chart_distance=lambda p: np.full(np.asarray(p).shape[:-1], np.inf),
        params={},
        analytic_scalar_curvature=lambda p: np.zeros(np.asarray(p).shape[:-1]),
    )


def hyperbolic_ball_metric(k: float = 1.0) -> MetricField:
    """Poincare ball model of H^3_{-k^2}: g = (f(x)/k)^2 delta."""
    if k <= 0:
        raise DomainError("curvature scale k must be positive")

    def comps(p):
        p = np.asarray(p, dtype=float)
        r2 = np.sum(p * p, axis=-1)
        if np.any(r2 >= 1.0):
            raise DomainError("hyperbolic ball chart requires |x| < 1")
        f = 2.0 / (1.0 - r2)
        out = np.zeros(p.shape[:-1] + (3, 3))
        out[...] = np.eye(3)
        return out * (f / k)[..., None, None] ** 2

    def dist(p):
        p = np.asarray(p, dtype=float)
        return 1.0 - np.sqrt(np.sum(p * p, axis=-1))

    return MetricField(
        tag="HyperbolicBall",
        components=comps,
        chart_distance=dist,
        params={"k": k},
        analytic_scalar_curvature=lambda p: np.full(
            np.asarray(p).shape[:-1], -6.0 * k * k),
    )


def ads_horizon_radius(m: float, k: float) -> float:
    """Positive root of k^2 r^3 + r - 2m = 0 (V(r) = 0)."""
    roots = np.roots([k * k, 0.0, 1.0, -2.0 * m])
    real = [r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0]
    if not real:
        return 0.0
    return max(real)


def ads_schwarzschild_metric(m: float, k: float = 1.0,
                             horizon_margin: float = 0.1) -> MetricField:
    """Static AdS-Schwarzschild slice in Cartesian-like chart coordinates.

    In the chart y = r * direction the metric is
    g_ij = delta_ij + (1/V - 1) y_i y_j / r^2 with V = 1 + k^2 r^2 - 2m/r.
    The chart is restricted to r > r_horizon + margin so V > 0.
    """
    if m < 0 or k <= 0:
        raise DomainError("need m >= 0 and k > 0")
    r_min = ads_horizon_radius(m, k) + horizon_margin

    def V(r):
        return 1.0 + (k * r) ** 2 - 2.0 * m / r

    def comps(p):
        p = np.asarray(p, dtype=float)
        r2 = np.sum(p * p, axis=-1)
        r = np.sqrt(r2)
        if np.any(r <= r_min):
            raise DomainError("point inside the excluded AdS-Schwarzschild core")
        nhat = p / r[..., None]
        out = np.zeros(p.shape[:-1] + (3, 3))
        out[...] = np.eye(3)
        coef = 1.0 / V(r) - 1.0
        out += coef[..., None, None] * nhat[..., :, None] * nhat[..., None, :]
        return out

    def dist(p):
        p = np.asarray(p, dtype=float)
        return np.sqrt(np.sum(p * p, axis=-1)) - r_min

    return MetricField(
        tag="AdSSchwarzschild",
        components=comps,
        chart_distance=dist,
        params={"m": m, "k": k},
        analytic_scalar_curvature=lambda p: np.full(
            np.asarray(p).shape[:-1], -6.0 * k * k),
    )


@dataclass(frozen=True)
class SphereTensor:
    """Pure-trace symmetric 2-tensor on the round sphere: h = (tau/2) g_0.

    The trace profile is tau(x) = 2 * g0_coeff + linear . x for unit vectors
    x, which covers constant multiples of g_0 and first-moment profiles.
    """

    g0_coeff: float = 0.0
    linear: tuple = (0.0, 0.0, 0.0)

    def trace(self, xhat: np.ndarray) -> np.ndarray:
        xhat = np.asarray(xhat, dtype=float)
        a = np.asarray(self.linear, dtype=float)
        return 2.0 * self.g0_coeff + xhat @ a

    @property
    def is_zero(self) -> bool:
        return self.g0_coeff == 0.0 and all(c == 0.0 for c in self.linear)


def wang_ah_metric(h: SphereTensor, k: float = 1.0,
                   e_trace: Optional[Callable] = None) -> MetricField:
    """Asymptotically hyperbolic collar metric sinh^{-2}(r)(dr^2 + g_r).

    Chart coordinates are (r, theta, phi) with g_r = g_0 + (r^3/3) h plus an
    optional pure-trace perturbation ``e_trace(r, xhat)`` (its decay is the
    caller's responsibility).  Only k = 1 is meaningful for this normal form.
    """
    if k != 1.0:
        raise DomainError("the AH collar normal form is stated at k = 1")

    def comps(p):
        p = np.asarray(p, dtype=float)
        r = p[..., 0]
        th = p[..., 1]
        if np.any(r <= 0):
            raise DomainError("collar chart requires r > 0")
        xhat = np.stack([np.sin(th) * np.cos(p[..., 2]),
                         np.sin(th) * np.sin(p[..., 2]),
                         np.cos(th)], axis=-1)
        tau = h.trace(xhat)
        if e_trace is not None:
            tau = tau + e_trace(r, xhat)
        gr = 1.0 + (r ** 3 / 3.0) * 0.5 * tau
        s2 = np.sinh(r) ** -2
        out = np.zeros(p.shape[:-1] + (3, 3))
        out[..., 0, 0] = s2
        out[..., 1, 1] = s2 * gr
        out[..., 2, 2] = s2 * gr * np.sin(th) ** 2
        return out

    def dist(p):
        p = np.asarray(p, dtype=float)
        return np.minimum.reduce([p[..., 0], 1.0 - p[..., 0],
                                  p[..., 1], math.pi - p[..., 1]])

    return MetricField(
        tag="WangAH",
        components=comps,
        chart_distance=dist,
        params={"k": k, "h": h},
    )


# ---------------------------------------------------------------------------
# quadrature grid


@dataclass(frozen=True)
class QuadratureGrid:
    """Gauss-Legendre nodes in cos theta crossed with a uniform phi grid.

    The Gauss-Legendre nodes exclude the poles exactly, so no pole handling
    is needed anywhere downstream.  ``measure_weights`` are the du x dphi
    weights divided by sin theta: summing weights * area_element over nodes
    approximates the surface area (4 pi for the round unit sphere).
    """

    n_theta: int
    n_phi: int
    theta: np.ndarray
    u_weights: np.ndarray
    phi: np.ndarray

    @classmethod
    def build(cls, n_theta: int, n_phi: int) -> "QuadratureGrid":
        if n_theta < 2 or n_phi < 2:
            raise DomainError("grid must have at least 2 x 2 nodes")
        u, wu = np.polynomial.legendre.leggauss(n_theta)
        theta = np.arccos(u)
        phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
        return cls(n_theta=n_theta, n_phi=n_phi, theta=theta,
                   u_weights=wu, phi=phi)

    @property
    def n_nodes(self) -> int:
        return self.n_theta * self.n_phi

    def node_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened (theta, phi) node coordinates, theta-major order."""
        T, P = np.meshgrid(self.theta, self.phi, indexing="ij")
        return T.ravel(), P.ravel()

    def measure_weights(self) -> np.ndarray:
        w_phi = 2.0 * math.pi / self.n_phi
        w = (self.u_weights / np.sin(self.theta))[:, None] * w_phi
        return np.broadcast_to(w, (self.n_theta, self.n_phi)).ravel()

    def node_index(self, i_theta: int, i_phi: int) -> int:
        return i_theta * self.n_phi + i_phi


def unit_directions(theta, phi) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)],
                    axis=-1)


# ---------------------------------------------------------------------------
# surfaces


@dataclass
class SurfaceData:
    """Parametrized closed surface with quadrature grid.

    ``F`` maps parameter arrays (theta, phi) to ambient chart coordinates of
    shape (..., 3); ``F0`` (optional) maps them to Poincare-ball coordinates
    of the isometric image in H^3_{-k^2}.  ``orientation_sign`` = -1 flips
    the inward-normal convention (useful only to probe hypothesis failures).
    """

    F: Callable
    grid: QuadratureGrid
    k: float = 1.0
    F0: Optional[Callable] = None
    center: np.ndarray = None
    orientation_sign: int = 1

    def __post_init__(self):
        if self.center is None:
            self.center = np.zeros(3)
        self.center = np.asarray(self.center, dtype=float).reshape(3)
        if self.orientation_sign not in (1, -1):
            raise DomainError("orientation_sign must be +1 or -1")

    def h3_view(self) -> "SurfaceData":
        """The H^3-side surface: F0 immersed in the hyperbolic ball chart."""
        if self.F0 is None:
            raise MissingEmbedding("surface carries no hyperbolic embedding")
        return SurfaceData(F=self.F0, grid=self.grid, k=self.k, F0=self.F0,
                           center=np.zeros(3), orientation_sign=1)


def _ball_radius(k: float, rho) -> np.ndarray:
    return np.tanh(0.5 * k * np.asarray(rho, dtype=float))


def geodesic_sphere_surface(rho: float, k: float,
                            grid: QuadratureGrid) -> SurfaceData:
    """Geodesic sphere of radius rho about the origin of the ball chart."""
    if rho <= 0:
        raise DomainError("rho must be positive")
    Rb = float(_ball_radius(k, rho))

    def F(theta, phi):
        return Rb * unit_directions(theta, phi)

    return SurfaceData(F=F, grid=grid, k=k, F0=F)


def coordinate_sphere_surface(r: float, grid: QuadratureGrid,
                              k: float = 1.0) -> SurfaceData:
    """Coordinate sphere of areal radius r, paired with its H^3 image.

    The induced metric is r^2 g_0, so the isometric image is the geodesic
    sphere with sinh(k rho) = k r.
    """
    if r <= 0:
        raise DomainError("r must be positive")
    rho = math.asinh(k * r) / k
    Rb0 = float(_ball_radius(k, rho))

    def F(theta, phi):
        return r * unit_directions(theta, phi)

    def F0(theta, phi):
        return Rb0 * unit_directions(theta, phi)

    return SurfaceData(F=F, grid=grid, k=k, F0=F0)


def radial_profile_surface(base: float, linear, k: float,
                           grid: QuadratureGrid) -> SurfaceData:
    """Star-shaped surface in H^3: geodesic radius base + linear . direction."""
    a = np.asarray(linear, dtype=float).reshape(3)

    def F(theta, phi):
        n = unit_directions(theta, phi)
        rho = base + n @ a
        if np.any(rho <= 0):
            raise DomainError("radial profile must stay positive")
        return _ball_radius(k, rho)[..., None] * n

    return SurfaceData(F=F, grid=grid, k=k, F0=F)


# ---------------------------------------------------------------------------
# finite differences


def _param_shift(fn, theta, phi, axis, off, h):
    if axis == 0:
        return fn(theta + off * h, phi)
    return fn(theta, phi + off * h)


def _param_d1(fn, theta, phi, axis, h):
    acc = None
    for off, w in zip(_D1_OFF, _D1_W):
        term = w * _param_shift(fn, theta, phi, axis, off, h)
        acc = term if acc is None else acc + term
    return acc / h


def _metric_first_derivs(metric, pts, h):
    """d_l g_ij by 4th-order central differences; shape (..., 3, 3, 3)."""
    pts = np.asarray(pts, dtype=float)
    D = np.zeros(pts.shape[:-1] + (3, 3, 3))
    for l in range(3):
        e = np.zeros(3)
        e[l] = 1.0
        acc = None
        for off, w in zip(_D1_OFF, _D1_W):
            term = w * metric.components(pts + off * h * e)
            acc = term if acc is None else acc + term
        D[..., l, :, :] = acc / h
    return D


def christoffel_many(metric: MetricField, pts: np.ndarray,
                     fd_step: float = 1e-4) -> np.ndarray:
    """Gamma^i_jk at each point, shape (..., 3, 3, 3)."""
    pts = np.asarray(pts, dtype=float)
    if np.any(metric.chart_distance(pts) <= 2.0 * fd_step):
        raise ChartBoundary(
            "chart margin below 2 * fd_step for Christoffel stencil")
    g = metric.components(pts)
    ginv = np.linalg.inv(g)
    D = _metric_first_derivs(metric, pts, fd_step)
    # S_ljk = d_j g_lk + d_k g_jl - d_l g_jk
    S = (np.einsum("...jlk->...ljk", D)
         + np.einsum("...kjl->...ljk", D)
         - D)
    return 0.5 * np.einsum("...il,...ljk->...ijk", ginv, S)


def christoffel(metric: MetricField, p, fd_step: float = 1e-4) -> np.ndarray:
    """Christoffel symbols at a single chart point, shape (3, 3, 3)."""
    p = np.asarray(p, dtype=float).reshape(3)
    return christoffel_many(metric, p[None, :], fd_step)[0]


def scalar_curvature_many(metric: MetricField, pts: np.ndarray,
                          fd_step: float = 1e-4,
                          gamma_step: float = 1e-4) -> np.ndarray:
    """Scalar curvature by contraction of the numerically assembled Ricci.

    The outer derivative of the Christoffel symbols uses a second-order
    central difference of step ``fd_step`` (the observed convergence order in
    fd_step is 2); the symbols themselves use a fourth-order stencil of step
    ``gamma_step`` so their error is negligible in the balance.
    """
    pts = np.asarray(pts, dtype=float)
    if np.any(metric.chart_distance(pts) <= 4.0 * fd_step):
        raise ChartBoundary(
            "chart margin below 4 * fd_step for curvature stencil")
    G0 = christoffel_many(metric, pts, gamma_step)
    dG = np.zeros(pts.shape[:-1] + (3, 3, 3, 3))
    for m_ax in range(3):
        e = np.zeros(3)
        e[m_ax] = 1.0
        Gp = christoffel_many(metric, pts + fd_step * e, gamma_step)
        Gm = christoffel_many(metric, pts - fd_step * e, gamma_step)
        dG[..., m_ax, :, :, :] = (Gp - Gm) / (2.0 * fd_step)
    ricci = (np.einsum("...iijk->...jk", dG)
             - np.einsum("...jiik->...jk", dG)
             + np.einsum("...iip,...pjk->...jk", G0, G0)
             - np.einsum("...ijp,...pik->...jk", G0, G0))
    ginv = np.linalg.inv(metric.components(pts))
    return np.einsum("...jk,...jk->...", ginv, ricci)


def scalar_curvature(metric: MetricField, p, fd_step: float = 1e-4,
                     gamma_step: float = 1e-4, return_analytic: bool = False):
    """Scalar curvature at one point; optionally also the analytic value."""
    p = np.asarray(p, dtype=float).reshape(3)
    R = float(scalar_curvature_many(metric, p[None, :], fd_step, gamma_step)[0])
    if return_analytic:
        Ra = None
        if metric.analytic_scalar_curvature is not None:
            Ra = float(metric.analytic_scalar_curvature(p[None, :])[0])
        return R, Ra
    return R


# ---------------------------------------------------------------------------
# fundamental forms


@dataclass
class FundamentalForms:
    """First/second fundamental form, inward normal and H at one node."""

    first: np.ndarray
    second: np.ndarray
    normal: np.ndarray
    mean_curvature: float


@dataclass
class SurfaceForms:
    """Per-node extrinsic data for a whole quadrature grid."""

    first: np.ndarray          # (N, 2, 2)
    second: np.ndarray         # (N, 2, 2)
    normal: np.ndarray         # (N, 3) ambient components
    mean_curvature: np.ndarray  # (N,)
    area_element: np.ndarray   # (N,) sqrt(det g_ab)
    chart_points: np.ndarray   # (N, 3)


def _induced_frame(surface, metric, theta, phi, h):
    p = surface.F(theta, phi)
    Ft = _param_d1(surface.F, theta, phi, 0, h)
    Fp = _param_d1(surface.F, theta, phi, 1, h)
    g = metric.components(p)
    return p, Ft, Fp, g


def _first_form(Ft, Fp, g):
    gab = np.empty(Ft.shape[:-1] + (2, 2))
    gab[..., 0, 0] = np.einsum("...i,...ij,...j->...", Ft, g, Ft)
    gab[..., 0, 1] = np.einsum("...i,...ij,...j->...", Ft, g, Fp)
    gab[..., 1, 0] = gab[..., 0, 1]
    gab[..., 1, 1] = np.einsum("...i,...ij,...j->...", Fp, g, Fp)
    return gab


def _check_nondegenerate(gab):
    det = np.linalg.det(gab)
    scale = max(float(np.max(np.abs(gab))) ** 2, 1e-300)
    if np.any(det < 1e-14 * scale):
        raise DegenerateImmersion("induced metric numerically degenerate")
    return det


def _inward_normal(surface, metric, theta, phi, h):
    p, Ft, Fp, g = _induced_frame(surface, metric, theta, phi, h)
    w = np.cross(Ft, Fp)
    n = np.linalg.solve(g, w[..., None])[..., 0]
    norm = np.sqrt(np.einsum("...i,...ij,...j->...", n, g, n))
    n = n / norm[..., None]
    toward_center = np.einsum("...i,...i->...", n, surface.center - p)
    sign = np.where(toward_center >= 0.0, 1.0, -1.0) * surface.orientation_sign
    return n * sign[..., None]


def surface_forms(surface: SurfaceData, metric: MetricField,
                  param_step: float = 1e-3,
                  fd_step: float = 1e-4) -> SurfaceForms:
    """Fundamental forms at every quadrature node (vectorized).

    The Weingarten data uses the inward-normal convention, so convex
    surfaces about the chart center have positive mean curvature (geodesic
    spheres in H^3 get H = k coth(k rho)).
    """
    theta, phi = surface.grid.node_arrays()
    p, Ft, Fp, g = _induced_frame(surface, metric, theta, phi, param_step)
    gab = _first_form(Ft, Fp, g)
    det = _check_nondegenerate(gab)

    def nrm(th, ph):
        return _inward_normal(surface, metric, th, ph, param_step)

    N = nrm(theta, phi)
    dNt = _param_d1(nrm, theta, phi, 0, param_step)
    dNp = _param_d1(nrm, theta, phi, 1, param_step)
    gamma = christoffel_many(metric, p, fd_step)
    covNt = dNt + np.einsum("...ijk,...j,...k->...i", gamma, Ft, N)
    covNp = dNp + np.einsum("...ijk,...j,...k->...i", gamma, Fp, N)
    A = np.empty_like(gab)
    A[..., 0, 0] = -np.einsum("...i,...ij,...j->...", covNt, g, Ft)
    A[..., 0, 1] = -np.einsum("...i,...ij,...j->...", covNt, g, Fp)
    A[..., 1, 0] = -np.einsum("...i,...ij,...j->...", covNp, g, Ft)
    A[..., 1, 1] = -np.einsum("...i,...ij,...j->...", covNp, g, Fp)
    ginv_ab = np.linalg.inv(gab)
    H = 0.5 * np.einsum("...ab,...ab->...", ginv_ab, 0.5 * (A + np.swapaxes(A, -1, -2)))
    return SurfaceForms(first=gab, second=A, normal=N, mean_curvature=H,
                        area_element=np.sqrt(det), chart_points=p)


def _flat_index(grid: QuadratureGrid, node) -> int:
    if isinstance(node, tuple):
        return grid.node_index(*node)
    return int(node)


def fundamental_forms(surface: SurfaceData, metric: MetricField,
                      node) -> FundamentalForms:
    """Forms at a single node (flat index or (i_theta, i_phi) pair)."""
    forms = surface_forms(surface, metric)
    i = _flat_index(surface.grid, node)
    return FundamentalForms(first=forms.first[i], second=forms.second[i],
                            normal=forms.normal[i],
                            mean_curvature=float(forms.mean_curvature[i]))


# ---------------------------------------------------------------------------
# intrinsic Gauss curvature (Brioschi)


def gauss_curvature_all(surface: SurfaceData, metric: MetricField,
                        param_step: float = 5e-3,
                        frame_step: float = 1e-3) -> np.ndarray:
    """Intrinsic Gauss curvature at every node via the Brioschi formula.

    The induced-metric samples use the small ``frame_step`` so their own
    truncation error, amplified by 1/param_step^2 in the second-derivative
    stencils, stays far below the curvature truncation error.
    """
    theta, phi = surface.grid.node_arrays()
    h = param_step

    def efg(th, ph):
        _, Ft, Fp, g = _induced_frame(surface, metric, th, ph, frame_step)
        gab = _first_form(Ft, Fp, g)
        return np.stack([gab[..., 0, 0], gab[..., 0, 1], gab[..., 1, 1]],
                        axis=-1)

    base = efg(theta, phi)
    E, F, G = base[..., 0], base[..., 1], base[..., 2]

    # samples along each axis, reused for 1st (4-pt) and 2nd (5-pt) stencils
    ax_samples = []
    for axis in range(2):
        row = {}
        for off in (-2.0, -1.0, 1.0, 2.0):
            row[off] = _param_shift(efg, theta, phi, axis, off, h)
        row[0.0] = base
        ax_samples.append(row)

    def d1(axis, comp):
        row = ax_samples[axis]
        acc = sum(w * row[off][..., comp] for off, w in zip(_D1_OFF, _D1_W))
        return acc / h

    def d2(axis, comp):
        row = ax_samples[axis]
        acc = sum(w * row[off][..., comp] for off, w in zip(_D2_OFF, _D2_W))
        return acc / (h * h)

    E_u, E_v = d1(0, 0), d1(1, 0)
    F_u, F_v = d1(0, 1), d1(1, 1)
    G_u, G_v = d1(0, 2), d1(1, 2)
    E_vv = d2(1, 0)
    G_uu = d2(0, 2)

    def f_of_v(th, ph):
        return _param_d1(efg, th, ph, 1, h)[..., 1]

    F_uv = _param_d1(f_of_v, theta, phi, 0, h)

    n = E.shape[0]
    M1 = np.empty((n, 3, 3))
    M1[:, 0, 0] = -0.5 * E_vv + F_uv - 0.5 * G_uu
    M1[:, 0, 1] = 0.5 * E_u
    M1[:, 0, 2] = F_u - 0.5 * E_v
    M1[:, 1, 0] = F_v - 0.5 * G_u
    M1[:, 1, 1] = E
    M1[:, 1, 2] = F
    M1[:, 2, 0] = 0.5 * G_v
    M1[:, 2, 1] = F
    M1[:, 2, 2] = G
    M2 = np.empty((n, 3, 3))
    M2[:, 0, 0] = 0.0
    M2[:, 0, 1] = 0.5 * E_v
    M2[:, 0, 2] = 0.5 * G_u
    M2[:, 1, 0] = 0.5 * E_v
    M2[:, 1, 1] = E
    M2[:, 1, 2] = F
    M2[:, 2, 0] = 0.5 * G_u
    M2[:, 2, 1] = F
    M2[:, 2, 2] = G
    det_g = E * G - F * F
    if np.any(det_g <= 0):
        raise DegenerateImmersion("induced metric degenerate in Brioschi formula")
    return (np.linalg.det(M1) - np.linalg.det(M2)) / det_g ** 2


def gauss_curvature(surface: SurfaceData, metric: MetricField,
                    node=None, param_step: float = 5e-3):
    K = gauss_curvature_all(surface, metric, param_step)
    if node is None:
        return K
    return float(K[_flat_index(surface.grid, node)])


# ---------------------------------------------------------------------------
# integration


def area_elements(surface: SurfaceData, metric: MetricField,
                  param_step: float = 1e-3) -> np.ndarray:
    """sqrt(det g_ab) at every node."""
    theta, phi = surface.grid.node_arrays()
    _, Ft, Fp, g = _induced_frame(surface, metric, theta, phi, param_step)
    gab = _first_form(Ft, Fp, g)
    det = _check_nondegenerate(gab)
    return np.sqrt(det)


def _fixed_order_sum(values: np.ndarray) -> float:
    # fsum is exact for the node ordering, so runs are bit-reproducible
    return math.fsum(values.tolist())


def integrate(surface: SurfaceData, metric: MetricField, values,
              param_step: float = 1e-3):
    """Quadrature of node-indexed values against the area measure.

    ``values`` has shape (N,) for scalars or (N, 4) for Lorentz vectors;
    vectors are integrated componentwise and returned as a LorentzVector.
    """
    ae = area_elements(surface, metric, param_step)
    w = surface.grid.measure_weights()
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        return _fixed_order_sum(w * ae * values)
    if values.ndim == 2 and values.shape[1] == 4:
        comps = [_fixed_order_sum(w * ae * values[:, c]) for c in range(4)]
        return LorentzVector(*comps)
    raise DomainError("integrand must be (N,) scalars or (N, 4) vectors")


def verify_isometric(surface: SurfaceData, metric: MetricField,
                     param_step: float = 1e-3) -> float:
    """Max pointwise mismatch of induced metrics between F and F0."""
    if surface.F0 is None:
        raise MissingEmbedding("surface carries no hyperbolic embedding")
    theta, phi = surface.grid.node_arrays()
    _, Ft, Fp, g = _induced_frame(surface, metric, theta, phi, param_step)
    gab = _first_form(Ft, Fp, g)
    hyp = hyperbolic_ball_metric(surface.k)
    h3 = surface.h3_view()
    _, Ft0, Fp0, g0 = _induced_frame(h3, hyp, theta, phi, param_step)
    gab0 = _first_form(Ft0, Fp0, g0)
    return float(np.max(np.abs(gab - gab0)))
