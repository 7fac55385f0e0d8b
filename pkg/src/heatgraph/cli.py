"""Command-line front end.

Subcommands
-----------
generate    write a model graph and/or radial profile
analyze     run any combination of analyses, writing report.txt and CSV tables
radial      stochastic-completeness analyses of a radial profile (or WSS graph)
curvature   Ollivier / Bakry-Emery / sphere curvature tables of a graph
metric      intrinsic-metric checks and volume growth of a graph

Exit codes: 0 success, 2 precondition or input error, 3 internal numerical failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._util import fmt
from .curvature import (curvature_sc_test, edge_curvatures, laplacian_comparison_check,
                        sphere_curvatures, vertex_curvatures, CurvatureReport, CurvatureRow)
from .errors import HeatGraphError, NumericalError, PreconditionError, GraphFormatError
from .graph import load_graph, serialize_graph
from .heat import HeatLossProfile, classify_defects, heat_loss_profile
from .metrics import (combinatorial_metric, combinatorial_volume_test, grigoryan_test,
                      jump_sizes, sigma1_adapted_metric, sigma_path_metric, verify_intrinsic,
                      volume_from_profile, volume_growth)
from .symmetric import (GeneratorSpec, build_profile, load_profile,
                        radial_heat_loss, radial_lambda_harmonic, radial_reduction,
                        realize_graph, sc_series, serialize_profile)

METRICS = {"combinatorial": combinatorial_metric, "sigma": sigma_path_metric,
           "sigma1": sigma1_adapted_metric}


class OpError(Exception):
    """Wraps a package error with the name of the operation that raised it."""

    def __init__(self, op, exc):
        super().__init__(f"{op}: {exc}")
        self.op = op
        self.exc = exc


# -- requests and reports ---------------------------------------------------------

@dataclass
class AnalysisRequest:
    source: str
    ops: list
    params: dict
    out: str = None

    def __post_init__(self):
        if not self.ops:
            raise PreconditionError("no analysis requested")


@dataclass
class Report:
    lines: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    def kv(self, key, value):
        if isinstance(value, str):
            self.lines.append(f"{key}: {value}")
        else:
            self.lines.append(f"{key}: {fmt(value)}")

    def section(self, name):
        self.lines.append("")
        self.lines.append(f"[{name}]")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def read_input(path):
    """Load a graph or profile file, deciding by its first data line."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split()[0]
        if head in ("v", "e"):
            return "graph", load_graph(text)
        if head == "r":
            return "profile", load_profile(text)
        break
    raise GraphFormatError(f"{path}: not a graph or profile file")


def _parse_kv(tokens, allowed):
    out = {}
    for tok in tokens or []:
        key, sep, value = tok.partition("=")
        if not sep or key not in allowed:
            raise PreconditionError(f"expected one of {', '.join(allowed)} as key=value, got {tok!r}")
        out[key] = value
    return out


def _parse_radii(text):
    """``a:b:step`` or a comma-separated list."""
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise PreconditionError(f"bad radius grid {text!r}")
        a, b, s = parts
        return np.arange(a, b + 0.5 * s, s)
    return np.array([float(p) for p in text.split(",") if p])


def _center(kind, obj, requested):
    if kind == "profile":
        return "0"
    if requested is not None:
        obj.index(requested)
        return requested
    return obj.vertices[0]


# -- operations -------------------------------------------------------------------

def _op_series(rep, kind, obj, params):
    profile = obj if kind == "profile" else radial_reduction(obj, params["center"])
    s = sc_series(profile)
    rep.section("sc-series")
    rep.kv("terms", len(s.terms))
    rep.kv("partial_sum", float(s.partial_sums[-1]))
    rep.kv("classification", s.classification)
    rep.kv("verdict", s.verdict_line())
    rep.tables["series.csv"] = "r,term,partial_sum\n" + "".join(
        f"{r},{fmt(t)},{fmt(p)}\n" for r, (t, p) in enumerate(zip(s.terms, s.partial_sums)))


def _op_lambda(rep, kind, obj, params):
    profile = obj if kind == "profile" else radial_reduction(obj, params["center"])
    h = radial_lambda_harmonic(profile, params["lambda"])
    rep.section("lambda-harmonic")
    rep.kv("lambda", h.lam)
    rep.kv("log_v_at_R", float(h.log_v[-1]))
    rep.kv("verdict", h.verdict_line())


def _op_heatloss(rep, kind, obj, params):
    spec = params["heatloss"]
    t = float(spec.get("t", 1.0))
    if "radii" in spec:
        radii = [int(r) for r in spec["radii"].split(",") if r]
    elif "R" in spec:
        R = int(spec["R"])
        radii = sorted({max(1, R // 4), max(1, R // 2), R})
    else:
        raise PreconditionError("heat loss needs R=<radius> or radii=<r1,r2,...>")
    if kind == "profile":
        defects = [radial_heat_loss(obj, t, r) for r in radii]
        hl = HeatLossProfile(center="0", t=t, radii=radii, ball_sizes=[r + 1 for r in radii],
                             defects=defects, verdict=classify_defects(defects))
    else:
        hl = heat_loss_profile(obj, params["center"], t, radii)
    rep.section("heat-loss")
    rep.kv("t", t)
    if kind == "profile":
        rep.kv("route", "reduced birth-death chain (ball_size counts chain vertices)")
    for r, d in zip(hl.radii, hl.defects):
        rep.kv(f"defect_R{r}", d)
    rep.kv("verdict", hl.verdict_line())
    rep.tables["heatloss.csv"] = hl.to_csv()


def _need_graph(kind, op):
    if kind != "graph":
        raise PreconditionError(f"{op} needs a graph input")


def _op_curvature(rep, kind, obj, params):
    _need_graph(kind, "curvature")
    which = params["curvature"]
    method = params["method"]
    G = obj
    report = CurvatureReport()
    rep.section("curvature")
    rep.kv("method", method)
    if which in ("all", "edges"):
        edges = edge_curvatures(G, method=method)
        report.extend(edges.rows)
        vals = np.array([r.value for r in edges.rows])
        rep.kv("edges", len(vals))
        if len(vals):
            rep.kv("edge_min", float(vals.min()))
            rep.kv("edge_max", float(vals.max()))
        rep.kv("edges_boundary_contaminated", sum(1 for r in edges.rows if r.flags))
    if which in ("all", "vertices"):
        verts = vertex_curvatures(G)
        report.extend(verts.rows)
        vals = np.array([r.value for r in verts.rows])
        rep.kv("vertices", len(vals))
        rep.kv("bakry_emery_min", float(vals.min()))
        rep.kv("bakry_emery_max", float(vals.max()))
    if which in ("all", "spheres"):
        kappa = sphere_curvatures(G, params["center"])
        report.extend(CurvatureRow("sphere", params["center"], str(r), float(k), "dual-lp")
                      for r, k in enumerate(kappa))
        rep.kv("sphere_radii", len(kappa))
        if len(kappa) >= 11:
            sc = curvature_sc_test(np.arange(len(kappa)), kappa)
            report.fits.update(C=sc.C, delta=sc.delta)
            rep.kv("verdict", sc.verdict_line())
        else:
            rep.kv("curvature_decay", "skipped (needs sphere curvature up to radius 10)")
    rep.tables["curvature.csv"] = report.to_csv()


def _op_comparison(rep, kind, obj, params):
    _need_graph(kind, "laplacian comparison")
    c = laplacian_comparison_check(obj, params["center"])
    rep.section("laplacian-comparison")
    rep.kv("radius", c.radius)
    rep.kv("verdict", c.verdict_line())


def _metric(kind, obj, params):
    name = params["metric"]
    if kind == "profile":
        if name != "combinatorial":
            raise PreconditionError("profiles only support the combinatorial metric")
        return None
    return METRICS[name](obj)


def _op_intrinsic(rep, kind, obj, params):
    if kind == "profile":
        rep.section("intrinsic")
        rep.kv("verdict", "not checked: profile input carries no edge-level data")
        return
    rho = _metric(kind, obj, params)
    r = verify_intrinsic(obj, rho)
    rep.section("intrinsic")
    rep.kv("metric", rho.label)
    rep.kv("argmin_vertex", obj.vertices[r.argmin] if obj.n else "")
    rep.kv("verdict", r.verdict_line())


def _volume(kind, obj, params):
    if kind == "profile":
        _metric(kind, obj, params)
        radii = params.get("radii")
        return volume_from_profile(obj, radii)
    rho = _metric(kind, obj, params)
    radii = params.get("radii")
    if radii is None:
        d = rho.distances_from(params["center"])
        top = float(d[np.isfinite(d)].max())
        if rho.mode == "combinatorial":
            radii = np.arange(0, int(top) + 1, dtype=np.float64)
        else:
            radii = np.linspace(0.0, top, 21)
    return volume_growth(obj, params["center"], rho, radii)


def _op_volume(rep, kind, obj, params):
    V = _volume(kind, obj, params)
    rep.section("volume")
    rep.kv("metric", V.metric)
    rep.kv("radii", len(V.radii))
    rep.kv("log_volume_at_last_radius", float(V.log_volume[-1]))
    rep.kv("saturated_radii", int(V.saturated.sum()))
    rep.kv("finite_ball_violation", "yes" if V.finite_ball_violation else "no")
    for note in V.notes:
        rep.kv("note", note)
    rep.tables["volume.csv"] = V.to_csv()
    if params.get("grigoryan"):
        g = grigoryan_test(V)
        rep.kv("verdict", g.verdict_line())
        rep.kv("adapted_statistic", g.adapted_statistic)
    if params.get("cubic"):
        c = combinatorial_volume_test(V)
        rep.kv("verdict", c.verdict_line())


def _op_jump(rep, kind, obj, params):
    _need_graph(kind, "jump size")
    rho = _metric(kind, obj, params)
    radii = params.get("radii")
    if radii is None:
        d = rho.distances_from(params["center"])
        radii = np.linspace(0.0, float(d[np.isfinite(d)].max()), 11)
    j = jump_sizes(obj, rho, radii, params["center"])
    rep.section("jump-size")
    rep.kv("metric", rho.label)
    for r, v in zip(radii, j):
        rep.kv(f"j_{fmt(r)}", float(v))


OPS = {
    "sc-series": _op_series,
    "lambda-harmonic": _op_lambda,
    "heatloss": _op_heatloss,
    "curvature": _op_curvature,
    "comparison": _op_comparison,
    "intrinsic": _op_intrinsic,
    "volume": _op_volume,
    "jump": _op_jump,
}


def run_request(req: AnalysisRequest) -> Report:
    kind, obj = read_input(req.source)
    params = dict(req.params)
    params["center"] = _center(kind, obj, params.get("center"))
    rep = Report()
    rep.kv("input", os.path.basename(req.source))
    rep.kv("kind", kind)
    if kind == "graph":
        rep.kv("vertices", obj.n)
        rep.kv("edges", obj.num_edges)
        rep.kv("truncated_realization", "yes" if obj.frontier else "no")
    else:
        rep.kv("radius", obj.R)
        rep.kv("family", obj.family or "unspecified")
    rep.kv("center", params["center"])
    for op in req.ops:
        try:
            OPS[op](rep, kind, obj, params)
        except HeatGraphError as exc:
            raise OpError(op, exc) from exc
    return rep


def write_outputs(rep: Report, out):
    if out is None:
        sys.stdout.write(rep.text())
        for name in sorted(rep.tables):
            sys.stdout.write(f"\n--- {name}\n")
            sys.stdout.write(rep.tables[name])
        return
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(rep.text())
    for name in sorted(rep.tables):
        with open(os.path.join(out, name), "w", encoding="utf-8") as fh:
            fh.write(rep.tables[name])


# -- argument parsing ---------------------------------------------------------------

def _add_common(p, out_help="output directory (default: print to stdout)"):
    p.add_argument("input", help="graph or profile file")
    p.add_argument("--center", help="root vertex (default: first vertex)")
    p.add_argument("--out", help=out_help)


def _add_metric_args(p, default="sigma"):
    p.add_argument("--metric", choices=sorted(METRICS), default=default)
    p.add_argument("--radii", help="radius grid 'a:b:step' or 'r1,r2,...'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heatgraph",
        description="Heat kernels, stochastic completeness and curvature on weighted graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a model graph and/or radial profile")
    g.add_argument("family", choices=["antitree", "tree", "birthdeath"])
    g.add_argument("--a", help="anti-tree sphere sizes a_r (expression in r)")
    g.add_argument("--degplus", help="tree branching Deg_+(r) (expression in r)")
    g.add_argument("--b", help="birth-death weights b(r, r+1) (expression in r)")
    g.add_argument("--m", help="birth-death measure m(r) (expression in r)", default="1")
    g.add_argument("--R", type=int, required=True, help="truncation radius")
    g.add_argument("--out", help="output path prefix (default: the family name)")
    g.add_argument("--profile-only", action="store_true",
                   help="skip the graph realization")
    g.add_argument("--graph", action="store_true",
                   help="also realize birth-death chains as graph files")

    a = sub.add_parser("analyze", help="run analyses and write report.txt plus CSV tables")
    _add_common(a, "output directory for report.txt and CSVs (default: current "
                   "directory; '-' prints to stdout)")
    a.set_defaults(out=".")
    a.add_argument("--sc-series", action="store_true", help="volume / boundary series")
    a.add_argument("--lambda-harmonic", type=float, metavar="LAMBDA",
                   help="radial solution of Lv = lambda v for lambda < 0")
    a.add_argument("--heatloss", nargs="+", metavar="KEY=VALUE",
                   help="t=<time> and R=<radius> or radii=<r1,r2,...>")
    a.add_argument("--curvature", choices=["all", "edges", "vertices", "spheres"])
    a.add_argument("--method", choices=["dual-lp", "closed-form", "epsilon"], default="dual-lp")
    a.add_argument("--comparison", action="store_true", help="Laplacian comparison check")
    a.add_argument("--metric", choices=sorted(METRICS))
    a.add_argument("--radii", help="radius grid 'a:b:step' or 'r1,r2,...'")
    a.add_argument("--intrinsic", action="store_true")
    a.add_argument("--volume", action="store_true")
    a.add_argument("--grigoryan", action="store_true")
    a.add_argument("--cubic-volume", action="store_true")
    a.add_argument("--jump", action="store_true")

    r = sub.add_parser("radial", help="series, lambda-harmonic and heat-loss analyses")
    _add_common(r)
    r.add_argument("--lambda", dest="lam", type=float, default=-1.0)
    r.add_argument("--t", type=float, help="time for the heat-loss defect")
    r.add_argument("--R", type=int, help="largest radius for the heat-loss defect")

    c = sub.add_parser("curvature", help="curvature tables")
    _add_common(c)
    c.add_argument("--kind", choices=["all", "edges", "vertices", "spheres"], default="edges")
    c.add_argument("--method", choices=["dual-lp", "closed-form", "epsilon"], default="dual-lp")
    c.add_argument("--comparison", action="store_true")

    m = sub.add_parser("metric", help="intrinsic metric checks and volume growth")
    _add_common(m)
    _add_metric_args(m)
    m.add_argument("--grigoryan", action="store_true")
    m.add_argument("--cubic-volume", action="store_true")
    return parser


def _request_from_args(args) -> AnalysisRequest:
    ops, params = [], {"center": args.center}
    if getattr(args, "radii", None):
        params["radii"] = _parse_radii(args.radii)
    if args.command == "analyze":
        if args.sc_series:
            ops.append("sc-series")
        if args.lambda_harmonic is not None:
            ops.append("lambda-harmonic")
            params["lambda"] = args.lambda_harmonic
        if args.heatloss:
            ops.append("heatloss")
            params["heatloss"] = _parse_kv(args.heatloss, ("t", "R", "radii"))
        if args.curvature:
            ops.append("curvature")
            params["curvature"] = args.curvature
            params["method"] = args.method
        if args.comparison:
            ops.append("comparison")
        metric_ops = args.intrinsic or args.volume or args.grigoryan or args.cubic_volume \
            or args.jump
        if metric_ops or args.metric:
            default = "combinatorial" if args.cubic_volume else "sigma"
            params["metric"] = args.metric or default
        if args.intrinsic:
            ops.append("intrinsic")
        if args.volume or args.grigoryan or args.cubic_volume:
            ops.append("volume")
            params["grigoryan"] = args.grigoryan
            params["cubic"] = args.cubic_volume
        if args.jump:
            ops.append("jump")
    elif args.command == "radial":
        ops += ["sc-series", "lambda-harmonic"]
        params["lambda"] = args.lam
        if args.t is not None or args.R is not None:
            if args.t is None or args.R is None:
                raise PreconditionError("heat loss needs both --t and --R")
            ops.append("heatloss")
            params["heatloss"] = {"t": str(args.t), "R": str(args.R)}
    elif args.command == "curvature":
        ops.append("curvature")
        params["curvature"] = args.kind
        params["method"] = args.method
        if args.comparison:
            ops.append("comparison")
    elif args.command == "metric":
        params["metric"] = args.metric
        params["grigoryan"] = args.grigoryan
        params["cubic"] = args.cubic_volume
        ops += ["intrinsic", "volume"]
    return AnalysisRequest(args.input, ops, params, args.out)


def cmd_generate(args):
    family = args.family
    key = {"antitree": "a", "tree": "degplus", "birthdeath": "b"}[family]
    value = getattr(args, key)
    if value is None:
        raise PreconditionError(f"{family} needs --{key}")
    params = {key: value}
    if family == "birthdeath":
        params["m"] = args.m
    spec = GeneratorSpec(family, params, args.R)
    prefix = args.out or family
    parent = os.path.dirname(prefix)
    if parent:
        os.makedirs(parent, exist_ok=True)
    profile = build_profile(spec)
    written = []
    want_graph = (family != "birthdeath" or args.graph) and not args.profile_only
    if want_graph:
        G = realize_graph(spec)
        with open(prefix + ".graph", "w", encoding="utf-8") as fh:
            fh.write(f"# {family} {key}={value} R={args.R}\n")
            fh.write(serialize_graph(G))
        written.append(f"{prefix}.graph ({G.n} vertices, {G.num_edges} edges)")
    with open(prefix + ".profile", "w", encoding="utf-8") as fh:
        fh.write(serialize_profile(profile))
    written.append(f"{prefix}.profile (R = {profile.R})")
    for line in written:
        print(f"wrote {line}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    op = args.command
    try:
        if args.command == "generate":
            cmd_generate(args)
        else:
            req = _request_from_args(args)
            write_outputs(run_request(req), None if args.out == "-" else args.out)
    except BrokenPipeError:
        # output consumer went away (for example a pager or head)
        sys.stderr.close()
        return 0
    except OpError as exc:
        code = 3 if isinstance(exc.exc, NumericalError) else 2
        print(f"heatgraph {op}: {exc} (input {args.input})", file=sys.stderr)
        return code
    except NumericalError as exc:
        print(f"heatgraph {op}: internal numerical failure: {exc}", file=sys.stderr)
        return 3
    except (HeatGraphError, OSError, ValueError) as exc:
        print(f"heatgraph {op}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
