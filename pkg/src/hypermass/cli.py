"""Batch front-end: scenario ingestion, hypothesis checks, reports.

Subcommands
-----------
mass <config>                 compute E (and optionally M_alpha, Upsilon)
asymptotic <config>           small-radius series E(S_r) -> Upsilon/2
spinor-check --seed S --count N   identity / round-trip residual sweep
convergence <config> --resolutions a,b,c   quantities vs grid resolution

Configs are YAML key trees (see README for the schema).  Identical config
and seed produce byte-identical JSON/CSV output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np
import yaml

from . import geometry as geo
from . import mass as massmod
from .errors import ConfigError, HypermassError, HypothesisFailure
from .hypgeom import BallPoint, origin, radial_bounds
from .lorentz import classify, minkowski_inner, sample_null_cone
from .spinor import make_clifford_rep, null_to_spinor, verify_zet, zeta_of

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# config handling


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a mapping")
    return resolve_config(cfg)


def _sphere_tensor(node) -> geo.SphereTensor:
    if node is None:
        return geo.SphereTensor()
    if not isinstance(node, dict):
        raise ConfigError("h tensor entry must be a mapping")
    linear = node.get("linear", [0.0, 0.0, 0.0])
    if len(linear) != 3:
        raise ConfigError("h.linear must have 3 entries")
    return geo.SphereTensor(g0_coeff=float(node.get("g0_coeff", 0.0)),
                            linear=tuple(float(c) for c in linear))


def resolve_config(cfg: dict) -> dict:
    """Fill defaults and validate; returns the fully resolved tree."""
    out = {}
    res = cfg.get("resolution", {}) or {}
    n_theta = int(res.get("n_theta", 64))
    n_phi = int(res.get("n_phi", 128))
    if n_theta < 8 or n_phi < 16:
        raise ConfigError("resolution must be at least 8 x 16")
    out["resolution"] = {"n_theta": n_theta, "n_phi": n_phi}

    tols = cfg.get("tolerances", {}) or {}
    out["tolerances"] = {
        "fd_step": float(tols.get("fd_step", 1e-4)),
        "iso_tol": float(tols.get("iso_tol", 1e-8)),
        "causal_tol": float(tols.get("causal_tol", 1e-12)),
    }
    if any(v <= 0 for v in out["tolerances"].values()):
        raise ConfigError("all tolerances must be positive")

    met = cfg.get("metric", {}) or {}
    mtype = met.get("type", "hyperbolic_ball")
    k = float(met.get("k", 1.0))
    if k <= 0:
        raise ConfigError("metric.k must be positive")
    if mtype not in ("hyperbolic_ball", "ads_schwarzschild", "wang_ah",
                     "euclidean"):
        raise ConfigError(f"unknown metric type: {mtype}")
    out["metric"] = {"type": mtype, "k": k}
    if mtype == "ads_schwarzschild":
        out["metric"]["m"] = float(met.get("m", 0.0))
    if mtype == "wang_ah":
        h = _sphere_tensor(met.get("h"))
        out["metric"]["h"] = {"g0_coeff": h.g0_coeff, "linear": list(h.linear)}

    surf = cfg.get("surface", {}) or {}
    stype = surf.get("type", "geodesic_sphere")
    if stype not in ("geodesic_sphere", "coordinate_sphere", "radial_profile"):
        raise ConfigError(f"unknown surface type: {stype}")
    out["surface"] = {"type": stype}
    if stype == "geodesic_sphere":
        out["surface"]["rho"] = float(surf.get("rho", 1.0))
    elif stype == "coordinate_sphere":
        out["surface"]["r"] = float(surf.get("r", 2.0))
    else:
        out["surface"]["base"] = float(surf.get("base", 1.0))
        linear = surf.get("linear", [0.0, 0.0, 0.0])
        if len(linear) != 3:
            raise ConfigError("surface.linear must have 3 entries")
        out["surface"]["linear"] = [float(c) for c in linear]
    orientation = surf.get("orientation", "inward")
    if orientation not in ("inward", "outward"):
        raise ConfigError("surface.orientation must be inward or outward")
    out["surface"]["orientation"] = orientation

    outputs = cfg.get("outputs", {}) or {}
    out["outputs"] = {
        "shi_tam": bool(outputs.get("shi_tam", False)),
        "upsilon": bool(outputs.get("upsilon", False)),
        "null_samples": int(outputs.get("null_samples", 500)),
    }

    asym = cfg.get("asymptotic")
    if asym is not None:
        h = _sphere_tensor(asym.get("h"))
        radii = [float(r) for r in asym.get("radii", [])]
        out["asymptotic"] = {
            "h": {"g0_coeff": h.g0_coeff, "linear": list(h.linear)},
            "radii": radii,
        }
    return out


def build_metric(cfg: dict) -> geo.MetricField:
    m = cfg["metric"]
    if m["type"] == "hyperbolic_ball":
        return geo.hyperbolic_ball_metric(m["k"])
    if m["type"] == "ads_schwarzschild":
        return geo.ads_schwarzschild_metric(m["m"], m["k"])
    if m["type"] == "wang_ah":
        return geo.wang_ah_metric(_sphere_tensor(m["h"]), m["k"])
    return geo.euclidean_metric()


def build_surface(cfg: dict) -> geo.SurfaceData:
    grid = geo.QuadratureGrid.build(cfg["resolution"]["n_theta"],
                                    cfg["resolution"]["n_phi"])
    s = cfg["surface"]
    k = cfg["metric"]["k"]
    if s["type"] == "geodesic_sphere":
        surface = geo.geodesic_sphere_surface(s["rho"], k, grid)
    elif s["type"] == "coordinate_sphere":
        surface = geo.coordinate_sphere_surface(s["r"], grid, k)
    else:
        surface = geo.radial_profile_surface(s["base"], s["linear"], k, grid)
    if s["orientation"] == "outward":
        surface.orientation_sign = -1
    return surface


# ---------------------------------------------------------------------------
# subcommands


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run_mass(cfg: dict, force: bool = False, outdir: Path = Path(".")) -> dict:
    metric = build_metric(cfg)
    surface = build_surface(cfg)
    k = cfg["metric"]["k"]
    tols = cfg["tolerances"]

    forms = geo.surface_forms(surface, metric)
    min_h = float(np.min(forms.mean_curvature))
    K = geo.gauss_curvature_all(surface, metric)
    min_k = float(np.min(K) + k * k)
    n_sample = min(20, forms.chart_points.shape[0])
    idx = np.linspace(0, forms.chart_points.shape[0] - 1, n_sample).astype(int)
    R = geo.scalar_curvature_many(metric, forms.chart_points[idx],
                                  fd_step=tols["fd_step"])
    min_r = float(np.min(R) + 6.0 * k * k)
    mismatch = geo.verify_isometric(surface, metric) if surface.F0 is not None \
        else math.inf
    checks = massmod.HypothesisChecks(
        min_mean_curvature=min_h, min_gauss_plus_k2=min_k,
        min_scalar_plus_6k2=min_r, isometry_mismatch=mismatch,
        iso_tol=tols["iso_tol"])

    if not checks.passed and not force:
        node = int(np.argmin(forms.mean_curvature))
        report = {
            "format_version": FORMAT_VERSION,
            "E": None, "causal_class": None, "M_alpha": None, "alpha": None,
            "upsilon": None,
            "hypothesis_checks": checks.to_dict(),
            "resolution": [surface.grid.n_theta, surface.grid.n_phi],
            "null_pairing": {"min": None, "max": None},
            "forced": False,
            "config": cfg,
        }
        _write_text(outdir / "mass_report.json", _json_dump(report))
        raise HypothesisFailure(
            f"hypothesis checks failed (min H = {min_h:.6g} at node {node}); "
            "rerun with --force to proceed")

    data = massmod.surface_mass_data(surface, metric, iso_tol=tols["iso_tol"])
    E = massmod.energy_momentum(surface, metric, data=data)

    m_alpha = alpha = None
    if cfg["outputs"]["shi_tam"]:
        r1, r2 = radial_bounds(surface, origin(k))
        alpha = massmod.shi_tam_alpha(r1, r2)
        m_alpha = massmod.shi_tam_vector(surface, metric, alpha, data=data)

    upsilon = None
    if cfg["outputs"]["upsilon"] and cfg["metric"].get("h") is not None:
        upsilon = massmod.wang_mass(_sphere_tensor(cfg["metric"]["h"]),
                                    surface.grid)

    pairings = [minkowski_inner(E, z)
                for z in sample_null_cone(cfg["outputs"]["null_samples"])]
    report = massmod.MassReport(
        E=E, causal_class=classify(E, tols["causal_tol"]), checks=checks,
        resolution=(surface.grid.n_theta, surface.grid.n_phi),
        M_alpha=m_alpha, alpha=alpha, upsilon=upsilon,
        null_pairing_min=min(pairings), null_pairing_max=max(pairings),
        forced=force and not checks.passed, config=cfg)
    doc = report.to_dict()
    _write_text(outdir / "mass_report.json", _json_dump(doc))
    print(f"E = ({_fmt(E.x1)}, {_fmt(E.x2)}, {_fmt(E.x3)}, {_fmt(E.t)})")
    print(f"causal class: {doc['causal_class']}")
    print(f"hypothesis checks passed: {checks.passed}")
    return doc


def run_asymptotic(cfg: dict, outdir: Path = Path(".")) -> str:
    if "asymptotic" not in cfg:
        raise ConfigError("config has no 'asymptotic' section")
    radii = cfg["asymptotic"]["radii"]
    if len(radii) < 3:
        raise ConfigError("asymptotic.radii needs at least 3 entries")
    h = _sphere_tensor(cfg["asymptotic"]["h"])
    grid = geo.QuadratureGrid.build(cfg["resolution"]["n_theta"],
                                    cfg["resolution"]["n_phi"])
    res = massmod.asymptotic_limit(h, radii, grid)

    lines = ["label,r,x1,x2,x3,t"]
    for r, E in zip(res.radii, res.energies):
        lines.append(f"E,{_fmt(r)},{_fmt(E.x1)},{_fmt(E.x2)},"
                     f"{_fmt(E.x3)},{_fmt(E.t)}")
    for label, v in [("extrapolated", res.extrapolated),
                     ("upsilon_half", res.upsilon_half),
                     ("deviation", res.deviation)]:
        lines.append(f"{label},,{_fmt(v.x1)},{_fmt(v.x2)},"
                     f"{_fmt(v.x3)},{_fmt(v.t)}")
    lines.append(f"observed_order,,{_fmt(res.observed_order)},,,")
    csv = "\n".join(lines) + "\n"
    _write_text(outdir / "asymptotic.csv", csv)
    print(f"extrapolated E: ({_fmt(res.extrapolated.x1)}, "
          f"{_fmt(res.extrapolated.x2)}, {_fmt(res.extrapolated.x3)}, "
          f"{_fmt(res.extrapolated.t)})")
    print(f"max deviation from Upsilon/2: {_fmt(res.deviation.norm_inf())}")
    print(f"observed order: {_fmt(res.observed_order)}")
    return csv


def run_spinor_check(seed: int, count: int, corrupt_sign: bool = False) -> int:
    """Seeded residual sweep; returns a process exit code."""
    if count < 1:
        raise ConfigError("count must be >= 1")
    rep = make_clifford_rep(s_zeta=+1) if corrupt_sign else make_clifford_rep()
    rng = np.random.default_rng(seed)
    max_zet = 0.0
    for _ in range(count):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        x = rng.uniform(-0.57, 0.57, 3)
        for sign in (1, -1):
            max_zet = max(max_zet, verify_zet(a, BallPoint(x), sign, rep))
    max_rt = 0.0
    for z in sample_null_cone(500):
        a = null_to_spinor(z)
        zr = zeta_of(a, 1, rep)
        max_rt = max(max_rt, (zr - z).norm_inf())
    ok = max_zet < 1e-12 and max_rt < 1e-12
    print(f"max identity residual: {_fmt(max_zet)}")
    print(f"max null round-trip residual: {_fmt(max_rt)}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def run_convergence(cfg: dict, resolutions, outdir: Path = Path(".")) -> str:
    if len(resolutions) < 3:
        raise ConfigError("need at least 3 resolutions")
    metric = build_metric(cfg)
    rows = []
    for n_theta in resolutions:
        sub = dict(cfg)
        sub["resolution"] = {"n_theta": int(n_theta),
                             "n_phi": max(16, 2 * int(n_theta))}
        surface = build_surface(sub)
        data = massmod.surface_mass_data(surface, metric,
                                         iso_tol=cfg["tolerances"]["iso_tol"])
        area = math.fsum((data.weights * data.area_element).tolist())
        i_eq = surface.grid.node_index(surface.grid.n_theta // 2, 0)
        E = massmod.energy_momentum(surface, metric, data=data)
        rows.append((int(n_theta), sub["resolution"]["n_phi"], area,
                     float(data.H[i_eq]), E))

    def order(vals):
        # observed order from three successive values, blank otherwise
        out = ["", ""]
        for i in range(2, len(vals)):
            d1 = abs(vals[i - 1] - vals[i - 2])
            d2 = abs(vals[i] - vals[i - 1])
            if d1 > 0 and d2 > 0:
                p = math.log(d1 / d2) / math.log(
                    rows[i][0] / rows[i - 1][0])
                out.append(_fmt(p))
            else:
                out.append("exact")
        return out

    area_ord = order([r[2] for r in rows])
    et_ord = order([r[4].t for r in rows])
    lines = ["n_theta,n_phi,area,H_probe,E_x1,E_x2,E_x3,E_t,"
             "area_order,E_t_order"]
    for row, ao, eo in zip(rows, area_ord, et_ord):
        n_t, n_p, area, hp, E = row
        lines.append(f"{n_t},{n_p},{_fmt(area)},{_fmt(hp)},{_fmt(E.x1)},"
                     f"{_fmt(E.x2)},{_fmt(E.x3)},{_fmt(E.t)},{ao},{eo}")
    csv = "\n".join(lines) + "\n"
    _write_text(outdir / "convergence.csv", csv)
    print(csv, end="")
    return csv


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypermass", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("mass", help="compute the energy-momentum report")
    pm.add_argument("config")
    pm.add_argument("--force", action="store_true",
                    help="proceed despite failed hypothesis checks")
    pm.add_argument("--output", default=".", help="output directory")
    pm.add_argument("--json", action="store_true", help=argparse.SUPPRESS)

    pa = sub.add_parser("asymptotic", help="small-radius asymptotic series")
    pa.add_argument("config")
    pa.add_argument("--output", default=".")
    pa.add_argument("--csv", action="store_true", help=argparse.SUPPRESS)

    ps = sub.add_parser("spinor-check", help="identity/round-trip residuals")
    ps.add_argument("--seed", type=int, default=42)
    ps.add_argument("--count", type=int, default=1000)
    ps.add_argument("--corrupt-sign", action="store_true",
                    help=argparse.SUPPRESS)  # test-only hook

    pc = sub.add_parser("convergence", help="quantities vs grid resolution")
    pc.add_argument("config")
    pc.add_argument("--resolutions", required=True,
                    help="comma-separated n_theta values, e.g. 8,16,32")
    pc.add_argument("--output", default=".")
    pc.add_argument("--csv", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "mass":
            run_mass(load_config(args.config), force=args.force,
                     outdir=Path(args.output))
        elif args.command == "asymptotic":
            run_asymptotic(load_config(args.config), outdir=Path(args.output))
        elif args.command == "spinor-check":
            return run_spinor_check(args.seed, args.count, args.corrupt_sign)
        elif args.command == "convergence":
            resolutions = [int(s) for s in args.resolutions.split(",") if s]
            run_convergence(load_config(args.config), resolutions,
                            outdir=Path(args.output))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except HypothesisFailure as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return 3
    except HypermassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
