"""Command-line front end: JSON reports, OBJ/CSV meshes and figure polylines."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import nil, slr, sol
from .core import (
    GeographicDirection,
    Geometry,
    GeometryError,
    Tolerances,
    euclid_signed_ratio,
)
from .harness import build_ceva, build_menelaus, random_suite, verify
from .surface import SURFACE_TOL, TriangleSpec, side_polyline, surface_mesh

SCHEMA = "thurston-tri/1"
SEED_ENV = "THURSTON_TRI_SEED"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_TOLERANCE = 2


class UsageError(Exception):
    pass


@dataclasses.dataclass
class RunConfig:
    command: str | None = None
    geometry: str | None = None
    points: list | None = None
    vertices: list | None = None
    direction: list | None = None
    t: float | None = None
    target: list | None = None
    weights: list | None = None
    transversal: list | None = None
    trials: int | None = None
    seed: int | None = None
    resolution: int | None = None
    tolerances: dict | None = None
    out: str | None = None


CONFIG_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def parse_point_list(text) -> list[list[float]]:
    """``"(1,2,3);(4,5,6)"`` or a JSON list of lists -> list of float lists."""
    if isinstance(text, (list, tuple)):
        return [[float(c) for c in p] for p in text]
    out = []
    for chunk in str(text).split(";"):
        chunk = chunk.strip().strip("()[] ")
        if not chunk:
            continue
        try:
            out.append([float(c) for c in chunk.split(",")])
        except ValueError as exc:
            raise UsageError(f"cannot parse point {chunk!r}") from exc
    return out


def parse_floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(c) for c in text]
    try:
        return [float(c) for c in str(text).strip("()[] ").split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse numbers from {text!r}") from exc


def _points(pts, dim: int, count: int | tuple[int, ...], name: str):
    counts = (count,) if isinstance(count, int) else count
    if len(pts) not in counts or any(len(p) != dim for p in pts):
        raise UsageError(f"{name} needs {' or '.join(map(str, counts))} points with {dim} coordinates")
    return [np.array(p, dtype=float) for p in pts]


def _triangle(cfg: RunConfig) -> TriangleSpec:
    if cfg.vertices is None:
        raise UsageError("--vertices is required")
    verts = _points(parse_point_list(cfg.vertices), 3, (2, 3), "--vertices")
    if len(verts) == 2:
        # two vertices: A0 is the origin
        verts = [np.zeros(3)] + verts
    return TriangleSpec(cfg.geometry, verts)


def _tol(cfg: RunConfig) -> Tolerances:
    over = cfg.tolerances or {}
    unknown = set(over) - {"eps_alg", "eps_root", "eps_theorem"}
    if unknown:
        raise UsageError(f"unknown tolerance fields: {sorted(unknown)}")
    return Tolerances(**{k: float(v) for k, v in over.items()})


def _seed(cfg: RunConfig) -> int:
    if cfg.seed is not None:
        return int(cfg.seed)
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc
    return 0


def _require(cfg: RunConfig, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise UsageError(f"--{n} is required for {cfg.command}")


def _geometry(cfg: RunConfig, allowed=None) -> Geometry:
    _require(cfg, "geometry")
    g = Geometry.parse(cfg.geometry)
    if allowed is not None and g not in allowed:
        raise UsageError(f"{cfg.command} supports {', '.join(a.value for a in allowed)}, not {g.value}")
    return g


KERNEL_GEOMETRIES = (Geometry.NIL, Geometry.SOL, Geometry.SLR)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_curve(cfg: RunConfig):
    g = _geometry(cfg, KERNEL_GEOMETRIES)
    if cfg.target is not None:
        (q,) = _points(parse_point_list(cfg.target), 3, 1, "--target")
        if g is Geometry.SLR:
            s = slr.slr_solve(q)
            return {"lam": s.dir.lam, "alpha": s.dir.alpha, "s": s.s, "regime": s.dir.regime.value,
                    "unit": s.dir.unit.tolist()}, EXIT_OK
        s = (nil.nil_solve if g is Geometry.NIL else sol.sol_solve)(q)
        return {"phi": s.dir.phi, "theta": s.dir.theta, "t": s.t, "unit": s.dir.unit.tolist()}, EXIT_OK
    _require(cfg, "direction", "t")
    d = parse_floats(cfg.direction)
    if len(d) != 2:
        raise UsageError("--direction takes two angles")
    t = float(cfg.t)
    if g is Geometry.SLR:
        dr = slr.SlrDirection(d[0], d[1])
        p = slr.slr_curve(dr, t)
        return {"point": p.tolist(), "regime": dr.regime.value}, EXIT_OK
    dr = GeographicDirection(d[0], d[1])
    p = (nil.nil_curve if g is Geometry.NIL else sol.sol_curve)(dr, t)
    return {"point": p.tolist()}, EXIT_OK


def cmd_distance(cfg: RunConfig):
    g = _geometry(cfg, KERNEL_GEOMETRIES)
    _require(cfg, "points")
    a, b = _points(parse_point_list(cfg.points), 3, 2, "--points")
    f = {Geometry.NIL: nil.nil_distance, Geometry.SOL: sol.sol_distance, Geometry.SLR: slr.slr_distance}[g]
    return {"distance": f(a, b)}, EXIT_OK


def cmd_ratio(cfg: RunConfig):
    g = _geometry(cfg, KERNEL_GEOMETRIES)
    _require(cfg, "points")
    a, p, b = _points(parse_point_list(cfg.points), 3, 3, "--points")
    tol = _tol(cfg)
    if g is Geometry.NIL:
        return {"ratio": nil.nil_simple_ratio(a, p, b, tol).to_dict(),
                "projected": euclid_signed_ratio(a[:2], p[:2], b[:2], g).to_dict()}, EXIT_OK
    if g is Geometry.SOL:
        return {"ratio": sol.sol_simple_ratio(a, p, b, tol).to_dict(),
                "m_image": sol.sol_m_ratio(a, p, b)}, EXIT_OK
    return {"euclidean": slr.slr_euclid_ratio(a, p, b, tol).to_dict(),
            "translation_distance": slr.slr_simple_ratio(a, p, b, tol).to_dict()}, EXIT_OK


def _report_out(rep, tol: Tolerances):
    code = EXIT_OK if rep.deviation <= tol.eps_theorem else EXIT_TOLERANCE
    return {"report": rep.to_dict()}, code


def cmd_ceva(cfg: RunConfig):
    g = _geometry(cfg, KERNEL_GEOMETRIES)
    tol = _tol(cfg)
    w = parse_floats(cfg.weights) if cfg.weights is not None else None
    c = build_ceva(g, _triangle(cfg), w, seed=_seed(cfg), tol=tol)
    return _report_out(verify(c, tol), tol)


def cmd_menelaus(cfg: RunConfig):
    g = _geometry(cfg, KERNEL_GEOMETRIES)
    tol = _tol(cfg)
    tr = None
    if cfg.transversal is not None:
        tr = _points(parse_point_list(cfg.transversal), 2, 2, "--transversal")
    c = build_menelaus(g, _triangle(cfg), tr, seed=_seed(cfg), tol=tol)
    return _report_out(verify(c, tol), tol)


def cmd_suite(cfg: RunConfig):
    g = _geometry(cfg)
    tol = _tol(cfg)
    trials = 1000 if cfg.trials is None else int(cfg.trials)
    seed = _seed(cfg)
    _, summary = random_suite(g, trials, seed, tol)
    summary["seed"] = seed
    return {"summary": summary}, EXIT_OK if summary["passed"] else EXIT_TOLERANCE


def _fmt(v: float) -> str:
    return repr(float(v))


def write_csv(path: Path, pts, extra=None, header="x,y,z"):
    lines = [header]
    for k, p in enumerate(pts):
        row = [_fmt(c) for c in p]
        if extra is not None:
            row.append(_fmt(extra[k]))
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def write_obj(path: Path, verts, faces):
    lines = [f"v {_fmt(a)} {_fmt(b)} {_fmt(c)}" for a, b, c in verts]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in faces]
    path.write_text("\n".join(lines) + "\n")


def cmd_surface(cfg: RunConfig):
    _geometry(cfg, KERNEL_GEOMETRIES)
    tri = _triangle(cfg)
    n = 64 if cfg.resolution is None else int(cfg.resolution)
    mesh = surface_mesh(tri, n, _tol(cfg))
    result = {
        "vertices": tri.vertices.tolist(),
        "resolution": n,
        "mesh_vertices": int(len(mesh.vertices)),
        "faces": int(len(mesh.faces)),
        "coverage": mesh.coverage,
        "max_residual": mesh.max_residual,
        "metadata": mesh.metadata,
    }
    if cfg.out is not None:
        base = Path(cfg.out)
        base.parent.mkdir(parents=True, exist_ok=True)
        obj, csv = base.with_suffix(".obj"), base.with_suffix(".csv")
        write_obj(obj, mesh.vertices, mesh.faces)
        write_csv(csv, mesh.vertices, mesh.residuals, header="x,y,z,residual")
        result["files"] = [obj.name, csv.name]
    ok = bool(np.all(np.abs(mesh.residuals) <= SURFACE_TOL))
    return {"surface": result}, EXIT_OK if ok else EXIT_TOLERANCE


FIG1 = [(0.0, 0.0, 0.0), (-1.0, 1.0, 1.0), (0.5, 1.0, 0.5)]
FIG2 = [(0.0, 0.0, 0.0), (2.0, 0.0, 3.0), (-1.0, 0.0, 2.0)]
FIG4 = [(0.0, 0.0, 0.0), (1.25, 0.5, 1.0), (0.2, 1.0, 0.5)]
FIG6 = [(0.0, 0.0, 0.0), (0.5, 0.75, 0.0), (2.0 / 3.0, 0.25, -1.0 / 3.0)]
FIG_SAMPLES = 101


def figure_polylines() -> dict[str, np.ndarray]:
    """Named polylines for the six figure reconstructions."""
    out: dict[str, np.ndarray] = {}
    sides = (("01", 0, 1), ("12", 1, 2), ("20", 2, 0))

    t1 = TriangleSpec("nil", FIG1)
    for name, i, j in sides:
        c = side_polyline(t1, i, j, FIG_SAMPLES)
        out[f"fig1_side{name}"] = c
        out[f"fig1_proj{name}"] = np.column_stack([c[:, :2], np.zeros(len(c))])

    t2 = TriangleSpec("nil", FIG2)
    for name, i, j in sides:
        out[f"fig2_side{name}"] = side_polyline(t2, i, j, FIG_SAMPLES)

    # a single Nil side with an interior point, reusing the first side of the first figure
    a, b = np.array(FIG1[0]), np.array(FIG1[1])
    s = nil.nil_solve(nil.nil_relative(a, b))
    c = out["fig1_side01"]
    p = nil.nil_point_on_side(a, s, 0.5 * s.t)
    out["fig3_curve"] = c
    out["fig3_proj"] = out["fig1_proj01"]
    out["fig3_points"] = np.array([a, p, b])
    out["fig3_points_proj"] = np.array([a, p, b]) * np.array([1.0, 1.0, 0.0])

    t4 = TriangleSpec("sol", FIG4)
    for name, i, j in sides:
        c = side_polyline(t4, i, j, FIG_SAMPLES)
        out[f"fig4_side{name}"] = c
        xz = sol.sol_project_xz(c)
        out[f"fig4_proj{name}"] = np.column_stack([xz[:, 0], np.zeros(len(c)), xz[:, 1]])
        m = sol.sol_map_m(xz)
        out[f"fig5_m{name}"] = np.column_stack([m[:, 0], np.zeros(len(c)), m[:, 1]])
        out[f"fig5_proj{name}"] = out[f"fig4_proj{name}"]
    a, b = np.array(FIG4[0]), np.array(FIG4[1])
    s = sol.sol_solve(sol.sol_relative(a, b))
    p = sol.sol_point_on_side(a, s, 0.5 * s.t)
    tri_pts = np.array([a, p, b])
    xz = sol.sol_project_xz(tri_pts)
    m = sol.sol_map_m(xz)
    out["fig5_points_proj"] = np.column_stack([xz[:, 0], np.zeros(3), xz[:, 1]])
    out["fig5_points_m"] = np.column_stack([m[:, 0], np.zeros(3), m[:, 1]])

    t6 = TriangleSpec("slr", FIG6)
    for name, i, j in sides:
        out[f"fig6_side{name}"] = side_polyline(t6, i, j, FIG_SAMPLES)
    a, b = np.array(FIG6[0]), np.array(FIG6[2])
    p = 0.5 * (a + b)
    out["fig6_points"] = np.array([a, p, b])
    out["fig6_points_xaxis"] = np.array([a, p, b]) * np.array([1.0, 0.0, 0.0])
    return out


def cmd_figures(cfg: RunConfig):
    _require(cfg, "out")
    d = Path(cfg.out)
    d.mkdir(parents=True, exist_ok=True)
    files = []
    for name, pts in sorted(figure_polylines().items()):
        write_csv(d / f"{name}.csv", pts)
        files.append(f"{name}.csv")
    return {"files": files}, EXIT_OK


COMMANDS = {
    "curve": cmd_curve,
    "distance": cmd_distance,
    "ratio": cmd_ratio,
    "ceva": cmd_ceva,
    "menelaus": cmd_menelaus,
    "suite": cmd_suite,
    "surface": cmd_surface,
    "figures": cmd_figures,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thurston-tri", description=__doc__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON file with RunConfig fields")
        s.add_argument("--geometry")
        s.add_argument("--points")
        s.add_argument("--vertices")
        s.add_argument("--direction", help="two angles in radians")
        s.add_argument("--t", type=float)
        s.add_argument("--target")
        s.add_argument("--weights")
        s.add_argument("--transversal", help="two points of the reduced picture")
        s.add_argument("--trials", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--resolution", type=int)
        s.add_argument("--eps-theorem", type=float)
        s.add_argument("--out")
    return p


def load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(data) - CONFIG_FIELDS
    if unknown:
        raise UsageError(f"unknown config fields: {sorted(unknown)}")
    return data


def make_config(ns: argparse.Namespace) -> RunConfig:
    data = load_config(ns.config) if ns.config else {}
    if data.get("command") not in (None, ns.command):
        raise UsageError(f"config is for {data['command']!r}, not {ns.command!r}")
    for name in CONFIG_FIELDS - {"command", "tolerances"}:
        v = getattr(ns, name, None)
        if v is not None:
            data[name] = v
    if ns.eps_theorem is not None:
        data["tolerances"] = {**(data.get("tolerances") or {}), "eps_theorem": ns.eps_theorem}
    data["command"] = ns.command
    return RunConfig(**data)


def emit(stream, payload: dict):
    stream.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, allow_nan=False) + "\n")


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        cfg = make_config(ns)
        result, code = COMMANDS[cfg.command](cfg)
    except (UsageError, GeometryError, TypeError) as exc:
        emit(sys.stderr, {"error": {"type": type(exc).__name__, "message": str(exc)}})
        return EXIT_INVALID
    emit(sys.stdout, {"command": cfg.command, "result": result})
    return code


if __name__ == "__main__":
    sys.exit(main())
